#include <doctest.h>

#include "relax/errors.hpp"
#include "relax/metrics.hpp"
#include "relax/synth.hpp"
#include "test_support.hpp"

using namespace relax;

namespace {

using Pairs = std::vector<std::pair<OctClass, OctClass>>;

// 242 scans per class, one DRUSEN->CNV and one DME->NORMAL error.
Pairs figure2_pairs() {
  Pairs p;
  for (OctClass c : kAllClasses)
    for (int i = 0; i < 242; ++i) p.emplace_back(c, c);
  for (auto& [truth, pred] : p) {
    if (truth == OctClass::kDrusen) {
      pred = OctClass::kCNV;
      break;
    }
  }
  for (auto& [truth, pred] : p) {
    if (truth == OctClass::kDME) {
      pred = OctClass::kNormal;
      break;
    }
  }
  return p;
}

}  // namespace

TEST_CASE("confusion matrix tallies pairs") {
  const auto m = confusion(figure2_pairs());
  CHECK(m.counts[0][0] == 242);
  CHECK(m.counts[1][1] == 241);
  CHECK(m.counts[2][2] == 241);
  CHECK(m.counts[3][3] == 242);
  CHECK(m.counts[2][0] == 1);
  CHECK(m.counts[1][3] == 1);
  CHECK(m.total() == 968);
  for (std::size_t r = 0; r < 4; ++r) CHECK(m.row_sum(r) == 242);

  const auto one = confusion({{OctClass::kDME, OctClass::kDrusen}});
  CHECK(one.total() == 1);
  CHECK(one.counts[1][2] == 1);

  CHECK_THROWS_AS(confusion({}), ValidationError);
}

TEST_CASE("metrics on the two-error matrix") {
  const auto s = metrics(confusion(figure2_pairs()));
  CHECK(test::near(s.accuracy, 966.0 / 968.0, 1e-15));
  CHECK(test::near(s.accuracy, 0.9979, 1e-4));
  CHECK(s.per_class[0].precision == doctest::Approx(242.0 / 243.0));
  CHECK(s.per_class[0].recall == 1.0);
  CHECK(s.per_class[1].precision == 1.0);
  CHECK(s.per_class[1].recall == doctest::Approx(241.0 / 242.0));
  CHECK(test::near(s.macro.precision, (2 * 242.0 / 243.0 + 2) / 4, 1e-15));
  CHECK(s.warnings.empty());
}

TEST_CASE("metrics on a perfect matrix are all one") {
  Pairs p;
  for (OctClass c : kAllClasses)
    for (int i = 0; i < 3; ++i) p.emplace_back(c, c);
  const auto s = metrics(confusion(p));
  CHECK(s.accuracy == 1.0);
  for (const auto& c : s.per_class) {
    CHECK(c.precision == 1.0);
    CHECK(c.recall == 1.0);
    CHECK(c.f1 == 1.0);
  }
  CHECK(s.macro.f1 == 1.0);
}

TEST_CASE("metrics with two populated classes") {
  // (CNV, CNV) and (DME predicted as CNV).
  const auto s = metrics(confusion({{OctClass::kCNV, OctClass::kCNV}, {OctClass::kDME, OctClass::kCNV}}));
  CHECK(s.accuracy == 0.5);
  CHECK(s.per_class[0].precision == 0.5);
  CHECK(s.per_class[0].recall == 1.0);
  CHECK(s.per_class[0].f1 == doctest::Approx(2.0 / 3.0));
  CHECK(s.per_class[1].precision == 0.0);  // never predicted
  CHECK(s.per_class[1].recall == 0.0);
  CHECK(s.per_class[1].f1 == 0.0);
  CHECK(s.macro.precision == doctest::Approx(0.125));
  CHECK(s.macro.recall == doctest::Approx(0.25));
  CHECK(s.macro.f1 == doctest::Approx((2.0 / 3.0) / 4));
  // DME precision, DRUSEN and NORMAL precision and recall.
  CHECK(s.warnings.size() == 5);
}

TEST_CASE("property: accuracy equals the fraction of matching pairs") {
  synth::Xorshift64Star rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    Pairs p(1 + rng.below(300));
    std::size_t hits = 0;
    for (auto& [t, q] : p) {
      t = kAllClasses[rng.below(4)];
      q = rng.uniform() < 0.7 ? t : kAllClasses[rng.below(4)];
      hits += (t == q);
    }
    const auto s = metrics(confusion(p));
    CHECK(s.accuracy == double(hits) / double(p.size()));
    for (const auto& c : s.per_class) {
      CHECK((c.precision >= 0 && c.precision <= 1));
      CHECK((c.recall >= 0 && c.recall <= 1));
      CHECK((c.f1 >= 0 && c.f1 <= 1));
    }
  }
}

TEST_CASE("class names parse case-insensitively") {
  CHECK(parse_class("drusen") == OctClass::kDrusen);
  CHECK(parse_class("Normal") == OctClass::kNormal);
  CHECK(class_name(OctClass::kCNV) == "CNV");
  CHECK_THROWS_AS(parse_class("AMD"), ValidationError);
}
