#include <doctest.h>

#include <algorithm>

#include "relax/errors.hpp"
#include "relax/synth.hpp"
#include "relax/tensor_io.hpp"

using namespace relax;

TEST_CASE("xorshift64* reference values") {
  // State 1: x ^= x>>12 -> 1; x ^= x<<25 -> 0x2000001; x ^= x>>27 -> 0x2000001.
  synth::Xorshift64Star rng(1);
  CHECK(rng.next() == 0x2000001ull * 0x2545F4914F6CDD1Dull);
  synth::Xorshift64Star a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  synth::Xorshift64Star u(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK((v >= 0.0 && v < 1.0));
    CHECK(u.below(7) < 7);
  }
}

TEST_CASE("generator is deterministic per seed") {
  auto spec = synth::equal_bands(27, 31, 42);
  spec.random_blobs = 3;
  const auto [s1, l1] = synth::generate(spec);
  const auto [s2, l2] = synth::generate(spec);
  CHECK(s1 == s2);
  CHECK(l1 == l2);
  CHECK(encode_tensor(to_tensor(s1.plane())) == encode_tensor(to_tensor(s2.plane())));

  spec.seed = 43;
  CHECK_FALSE(synth::generate(spec).first == s1);
}

TEST_CASE("generated label map is nine bands top to bottom") {
  auto spec = synth::equal_bands(20, 4, 1);
  spec.bands = {1, 2, 3, 2, 4, 3, 2, 2, 1};
  spec.blobs.push_back({5, 2, 2, 1});
  const auto [s, labels] = synth::generate(spec);
  std::size_t row = 0;
  for (std::size_t l = 0; l < 9; ++l)
    for (std::size_t i = 0; i < spec.bands[l]; ++i, ++row)
      for (std::size_t c = 0; c < 4; ++c) CHECK(labels.at(row, c) == l);
  CHECK(*std::max_element(s.values().begin(), s.values().end()) == 1.0);

  spec.bands[0] = 5;
  CHECK_THROWS_AS(synth::generate(spec), ValidationError);
}

TEST_CASE("zero-amplitude blobs give an all-zero saliency") {
  auto spec = synth::equal_bands(18, 18, 3);
  spec.blobs.push_back({9, 9, 3, 0.0});
  const auto [s, labels] = synth::generate(spec);
  for (double v : s.values()) CHECK(v == 0.0);
  CHECK_THROWS_AS(synth::brute_force_attribution(s, labels), DegenerateExplanation);
}

TEST_CASE("central blob concentrates attribution on its band") {
  // 36 rows, nine 4-pixel bands: rows 16..19 are label 4 (OPL).
  auto spec = synth::equal_bands(36, 36, 42);
  spec.blobs.push_back({17.5, 17.5, 4.0, 1.0});
  const auto [s, labels] = synth::generate(spec);
  const auto a = synth::brute_force_attribution(s, labels);
  const auto top = std::size_t(std::max_element(a.r.begin(), a.r.end()) - a.r.begin());
  CHECK(top + 1 == labels.at(17, 17));
  CHECK(top + 1 == 4);
}

TEST_CASE("brute-force gradcam trivial cases") {
  const Tensor ones({2, 3, 2}, std::vector<float>(12, 1.0f));
  for (double v : synth::brute_force_gradcam(ones, ones).values) CHECK(v == 2.0);
  const Tensor one_ch({2, 2, 1}, std::vector<float>(4, 1.0f));
  for (double v : synth::brute_force_gradcam(one_ch, one_ch).values) CHECK(v == 1.0);
  const Tensor neg({2, 2, 1}, std::vector<float>(4, -1.0f));
  for (double v : synth::brute_force_gradcam(one_ch, neg).values) CHECK(v == 0.0);
}
