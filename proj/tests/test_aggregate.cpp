#include "epimotion/aggregate.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace epimotion;

namespace {

MatchingProbabilityMap constantMap(int w, int h, float value, bool covered = true) {
  MatchingProbabilityMap m;
  m.refId = "ref";
  m.supId = "sup";
  m.p.resize(h, w);
  m.p.setConstant(value);
  m.covered.resize(h, w);
  m.covered.setConstant(covered ? 1 : 0);
  return m;
}

}  // namespace

TEST_CASE("remap endpoints and midpoint") {
  CHECK(remap(0.0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(remap(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(remap(1.0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK_THROWS_AS(remap(-0.01), Error);
  CHECK_THROWS_AS(remap(1.01), Error);
}

TEST_CASE("fusion: neutral element, cancellation, hand value") {
  CHECK(fuseStatic({0.5, 0.5}) == 0.5);
  // complementary float pair cancels exactly
  CHECK(fuseStatic({0.7f, 0.3f}) == 0.5);
  // hand-derived: 0.49 / (0.49 + 0.09)
  CHECK(fuseStatic({0.7, 0.7}) == doctest::Approx(0.49 / 0.58).epsilon(1e-12));
  // appending neutral input changes nothing
  const double base = fuseStatic({0.62, 0.41, 0.55});
  CHECK(std::abs(fuseStatic({0.62, 0.41, 0.55, 0.5}) - base) < 1e-12);
}

TEST_CASE("fusion properties on random remapped inputs") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<double> vals(n);
    for (auto& v : vals) v = remap(uni(rng));
    const double fused = fuseStatic(vals);
    CHECK(fused > 0.0);
    CHECK(fused < 1.0);

    // commutativity under permutation
    std::vector<double> shuffled = vals;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(std::abs(fuseStatic(shuffled) - fused) < 1e-12);

    // amplification above/below 0.5 (strict once a second witness joins)
    if (n >= 2 && std::all_of(vals.begin(), vals.end(), [](double v) { return v > 0.505; }))
      CHECK(fused > *std::max_element(vals.begin(), vals.end()));
    if (n >= 2 && std::all_of(vals.begin(), vals.end(), [](double v) { return v < 0.495; }))
      CHECK(fused < *std::min_element(vals.begin(), vals.end()));

    // monotonicity: raising one input cannot lower the output
    std::vector<double> raised = vals;
    const std::size_t k = rng() % raised.size();
    raised[k] = std::min(0.7, raised[k] + 0.05);
    CHECK(fuseStatic(raised) >= fused - 1e-12);
  }
}

TEST_CASE("fuse over maps: uncovered pixels are neutral and counted") {
  auto a = constantMap(4, 3, 0.7f);
  auto b = constantMap(4, 3, 0.7f);
  b.covered(1, 1) = 0;
  b.p(1, 1) = 0.5f;

  const DynamicProbabilityMap dyn = fuse({a, b});
  CHECK(dyn.pDynamic(0, 0) == doctest::Approx(1.0 - 0.49 / 0.58).epsilon(1e-6));
  // at (1,1) only map a contributes: p_static = 0.7
  CHECK(dyn.pDynamic(1, 1) == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(dyn.supportCount(0, 0) == 2);
  CHECK(dyn.supportCount(1, 1) == 1);

  auto wrong = constantMap(5, 3, 0.6f);
  CHECK_THROWS_AS(fuse({a, wrong}), Error);
}

TEST_CASE("fuse is order-invariant over maps") {
  auto a = constantMap(8, 8, 0.64f);
  auto b = constantMap(8, 8, 0.37f);
  auto c = constantMap(8, 8, 0.52f);
  const auto abc = fuse({a, b, c});
  const auto cba = fuse({c, b, a});
  for (Eigen::Index i = 0; i < abc.pDynamic.size(); ++i)
    CHECK(std::abs(abc.pDynamic.data()[i] - cba.pDynamic.data()[i]) < 1e-12);
}

TEST_CASE("threshold masks") {
  auto a = constantMap(4, 2, 0.7f);
  const DynamicProbabilityMap dyn = fuse({a});  // p_dynamic = 0.3 everywhere
  const auto all = threshold(dyn, 0.0);
  CHECK(std::count(all.begin(), all.end(), 1) == 8);
  const auto none = threshold(dyn, 1.0);
  CHECK(std::count(none.begin(), none.end(), 1) == 0);
  const auto mid = threshold(dyn, 0.3);
  CHECK(std::count(mid.begin(), mid.end(), 1) == 8);  // inclusive comparison
  CHECK_THROWS_AS(threshold(dyn, 1.5), Error);
}
