#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relax/errors.hpp"
#include "relax/profile.hpp"
#include "relax/synth.hpp"
#include "test_support.hpp"

using namespace relax;

namespace {

AttributionRecord rec(std::string id, OctClass pred, std::optional<OctClass> truth, std::array<double, 7> r) {
  return {std::move(id), pred, truth, LayerAttribution{r}};
}

std::array<double, 7> random_attribution(synth::Xorshift64Star& rng) {
  std::array<double, 7> r{};
  double sum = 0;
  for (auto& v : r) sum += (v = rng.uniform(0.1, 1.0));
  for (auto& v : r) v *= 100.0 / sum;
  return r;
}

DeviationReport report_from_z(const std::array<double, 7>& z) {
  DeviationReport d;
  for (std::size_t i = 0; i < 7; ++i) {
    d.layers[i].difference = z[i];
    d.layers[i].z = z[i];
  }
  return d;
}

}  // namespace

TEST_CASE("build_profiles: mean and sample std") {
  const auto n = OctClass::kNormal;
  SUBCASE("identical records have zero spread") {
    const std::array<double, 7> r = {10, 20, 30, 10, 10, 10, 10};
    const auto set = build_profiles({rec("a", n, n, r), rec("b", n, n, r)});
    const auto& p = set.profiles.at(n);
    CHECK(p.n == 2);
    CHECK(p.mean == r);
    for (double s : p.std) CHECK(s == 0.0);
  }
  SUBCASE("two-point sample std is |delta| / sqrt(2)") {
    const auto set = build_profiles({rec("a", n, n, {10, 90, 0, 0, 0, 0, 0}), rec("b", n, n, {20, 80, 0, 0, 0, 0, 0})});
    const auto& p = set.profiles.at(n);
    CHECK(p.mean[0] == 15.0);
    CHECK(p.mean[1] == 85.0);
    const double expected = 10.0 / std::numbers::sqrt2;
    CHECK(test::near(p.std[0], expected, 1e-12));
    CHECK(test::near(p.std[1], expected, 1e-12));
    CHECK(test::near(p.std[0], 7.0711, 1e-4));
    for (std::size_t i = 2; i < 7; ++i) CHECK(p.std[i] == 0.0);

    const auto pop = build_profiles({rec("a", n, n, {10, 90, 0, 0, 0, 0, 0}), rec("b", n, n, {20, 80, 0, 0, 0, 0, 0})},
                                    StdMode::kPopulation);
    CHECK(test::near(pop.profiles.at(n).std[0], 5.0, 1e-12));
  }
  SUBCASE("misclassified and unlabeled records are excluded") {
    std::vector<AttributionRecord> base = {rec("a", n, n, {10, 90, 0, 0, 0, 0, 0}), rec("b", n, n, {20, 80, 0, 0, 0, 0, 0})};
    auto with_errors = base;
    with_errors.push_back(rec("c", n, OctClass::kDME, {50, 50, 0, 0, 0, 0, 0}));
    with_errors.push_back(rec("d", n, std::nullopt, {0, 0, 0, 0, 0, 0, 100}));
    const auto a = build_profiles(base).profiles.at(n);
    const auto b = build_profiles(with_errors).profiles.at(n);
    CHECK(a.mean == b.mean);
    CHECK(a.std == b.std);
    CHECK(a.n == b.n);
  }
  SUBCASE("classes with a single correct record are skipped") {
    const auto set = build_profiles({rec("a", n, n, {10, 90, 0, 0, 0, 0, 0}), rec("b", n, n, {20, 80, 0, 0, 0, 0, 0}),
                                     rec("c", OctClass::kCNV, OctClass::kCNV, {100, 0, 0, 0, 0, 0, 0})});
    CHECK(set.profiles.count(OctClass::kCNV) == 0);
    CHECK(set.skipped == std::vector<OctClass>{OctClass::kCNV});
  }
}

TEST_CASE("property: profile shift and mean-record invariants") {
  synth::Xorshift64Star rng(31);
  const auto c = OctClass::kDrusen;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<AttributionRecord> recs;
    const std::size_t count = 2 + rng.below(30);
    for (std::size_t i = 0; i < count; ++i) recs.push_back(rec(std::to_string(i), c, c, random_attribution(rng)));
    const auto base = build_profiles(recs).profiles.at(c);

    std::array<double, 7> shift{};
    for (auto& v : shift) v = rng.uniform(-5, 5);
    auto shifted = recs;
    for (auto& r : shifted)
      for (std::size_t i = 0; i < 7; ++i) r.attribution.r[i] += shift[i];
    const auto moved = build_profiles(shifted).profiles.at(c);
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(test::near(moved.mean[i], base.mean[i] + shift[i], 1e-9));
      CHECK(test::near(moved.std[i], base.std[i], 1e-9));
    }

    auto plus_mean = recs;
    plus_mean.push_back(rec("mean", c, c, base.mean));
    const auto widened = build_profiles(plus_mean).profiles.at(c);
    for (std::size_t i = 0; i < 7; ++i) CHECK(widened.std[i] <= base.std[i] + 1e-12);

    const auto self = deviation_report(LayerAttribution{base.mean}, base);
    for (const auto& l : self.layers) CHECK(l.difference == 0.0);
  }
}

TEST_CASE("deviation report") {
  ClassProfile p{OctClass::kNormal, {7.96, 20.48, 8.75, 9.97, 30.91, 13.18, 8.75}, {}, 242};
  p.std.fill(1.0);
  p.std[0] = 8.80 / 5.82;

  SUBCASE("ILM example") {
    LayerAttribution a{p.mean};
    a.r[0] = 16.76;
    const auto d = deviation_report(a, p);
    CHECK(test::near(d.layers[0].difference, 8.80, 1e-9));
    REQUIRE(d.layers[0].z.has_value());
    CHECK(test::near(*d.layers[0].z, 5.82, 1e-9));
  }
  SUBCASE("observation at the mean") {
    const auto d = deviation_report(LayerAttribution{p.mean}, p);
    for (const auto& l : d.layers) {
      CHECK(l.difference == 0.0);
      CHECK(*l.z == 0.0);
    }
  }
  SUBCASE("zero std gives an undefined z") {
    p.std[3] = 0.0;
    LayerAttribution a{p.mean};
    a.r[3] += 1.0;
    const auto d = deviation_report(a, p);
    CHECK_FALSE(d.layers[3].z.has_value());
    CHECK(d.layers[3].difference == doctest::Approx(1.0));
    CHECK(flag(d).suspicious);
    CHECK(flag(d).offending_layers == std::vector<std::size_t>{3});
  }
}

TEST_CASE("flag") {
  SUBCASE("reference misclassification 1") {
    const auto dec = flag(report_from_z({5.82, -0.60, 3.01, -1.66, 0.85, -5.20, -3.07}), 3.0);
    CHECK(dec.suspicious);
    CHECK(dec.offending_layers == std::vector<std::size_t>{0, 2, 5, 6});
    CHECK(dec.max_abs_z == 5.82);
  }
  SUBCASE("all zeros never flag") {
    for (double t : {0.01, 1.0, 3.0, 100.0}) CHECK_FALSE(flag(report_from_z({}), t).suspicious);
  }
  SUBCASE("threshold boundary") {
    const auto d = report_from_z({2.9, 0, 0, 0, 0, 0, 0});
    CHECK_FALSE(flag(d, 3.0).suspicious);
    CHECK(flag(d, 2.8).suspicious);
    CHECK(flag(report_from_z({3.0, 0, 0, 0, 0, 0, 0}), 3.0).suspicious);
  }
  SUBCASE("undefined z with zero difference is fine") {
    DeviationReport d;
    CHECK_FALSE(flag(d).suspicious);
  }
  SUBCASE("non-positive threshold") {
    CHECK_THROWS_AS(flag(report_from_z({}), 0.0), ValidationError);
    CHECK_THROWS_AS(flag(report_from_z({}), -1.0), ValidationError);
  }
  SUBCASE("property: raising the threshold never adds a flag") {
    synth::Xorshift64Star rng(8);
    for (int trial = 0; trial < 500; ++trial) {
      std::array<double, 7> z{};
      for (auto& v : z) v = rng.uniform(-6, 6);
      const double t1 = rng.uniform(0.1, 6), t2 = t1 + rng.uniform(0, 3);
      if (!flag(report_from_z(z), t1).suspicious) CHECK_FALSE(flag(report_from_z(z), t2).suspicious);
    }
  }
}

TEST_CASE("deviation histogram") {
  SUBCASE("all zeros land in one bin") {
    const auto h = deviation_histogram(std::vector<double>(17, 0.0), 1.0);
    REQUIRE(h.bins.size() == 1);
    CHECK(h.bins[0].left == 0.0);
    CHECK(h.bins[0].right == 1.0);
    CHECK(h.bins[0].count == 17);
  }
  SUBCASE("half-open unit bins") {
    const auto h = deviation_histogram({-1.5, -0.5, 0.5, 1.5}, 1.0);
    REQUIRE(h.bins.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(h.bins[i].left == double(i) - 2.0);
      CHECK(h.bins[i].right == double(i) - 1.0);
      CHECK(h.bins[i].count == 1);
    }
    const auto edge = deviation_histogram({1.0, 2.0}, 1.0);
    REQUIRE(edge.bins.size() == 2);
    CHECK(edge.bins[0].left == 1.0);
  }
  SUBCASE("values sitting on edges with inexact widths") {
    const auto h = deviation_histogram({0.3, 0.1, 0.2, 0.7}, 0.1);
    std::size_t total = 0;
    for (const auto& b : h.bins) {
      total += b.count;
      if (b.count) CHECK(b.left <= b.right);
    }
    CHECK(total == 4);
  }
  SUBCASE("empty input") {
    CHECK(deviation_histogram({}, 1.0).bins.empty());
    CHECK_THROWS_AS(deviation_histogram({1.0}, 0.0), ValidationError);
  }
  SUBCASE("seeded normal draws peak near zero") {
    synth::Xorshift64Star rng(1234);
    std::vector<double> draws;
    for (int i = 0; i < 500; ++i) {
      // Box-Muller pair
      const double u1 = 1.0 - rng.uniform(), u2 = rng.uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      draws.push_back(3.0 * r * std::cos(2 * std::numbers::pi * u2));
      draws.push_back(3.0 * r * std::sin(2 * std::numbers::pi * u2));
    }
    const auto h = deviation_histogram(draws, 1.0);
    const auto mode = std::max_element(h.bins.begin(), h.bins.end(),
                                       [](const auto& a, const auto& b) { return a.count < b.count; });
    CHECK(mode->left >= -2.0);
    CHECK(mode->right <= 2.0);
  }
  SUBCASE("property: counts conserved and order independent") {
    synth::Xorshift64Star rng(77);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> xs(1 + rng.below(200));
      for (auto& x : xs) x = rng.uniform(-20, 20);
      const double w = rng.uniform(0.05, 4);
      const auto h = deviation_histogram(xs, w);
      std::size_t total = 0;
      for (const auto& b : h.bins) total += b.count;
      CHECK(total == xs.size());
      for (const double x : xs) {
        const auto hit = std::find_if(h.bins.begin(), h.bins.end(), [&](const auto& b) { return x >= b.left && x < b.right; });
        CHECK(hit != h.bins.end());
      }
      std::reverse(xs.begin(), xs.end());
      const auto h2 = deviation_histogram(xs, w);
      REQUIRE(h2.bins.size() == h.bins.size());
      for (std::size_t i = 0; i < h.bins.size(); ++i) CHECK(h2.bins[i].count == h.bins[i].count);
    }
  }
}

TEST_CASE("class weights") {
  const auto w = class_weights({{"CNV", 37205}, {"DME", 11348}, {"DRUSEN", 8616}, {"NORMAL", 26315}});
  CHECK(w.at("CNV") == 1.0);
  CHECK(test::near(w.at("DME"), 3.279, 1e-3));
  CHECK(test::near(w.at("DRUSEN"), 4.318, 1e-3));
  CHECK(test::near(w.at("NORMAL"), 1.414, 1e-3));

  for (const auto& [name, v] : class_weights({{"a", 5}, {"b", 5}, {"c", 5}})) CHECK(v == 1.0);
  const auto ab = class_weights({{"A", 10}, {"B", 1}});
  CHECK(ab.at("A") == 1.0);
  CHECK(ab.at("B") == 10.0);
  CHECK_THROWS_AS(class_weights({{"A", 10}, {"B", 0}}), ValidationError);
}
