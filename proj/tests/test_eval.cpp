#include "epimotion/eval.hpp"

#include <doctest.h>

#include <random>

using namespace epimotion;

namespace {

GroundTruthMask maskOf(int w, int h, const std::vector<std::pair<int, int>>& dynamic,
                       const std::vector<std::pair<int, int>>& dontCare = {}) {
  GroundTruthMask gt;
  gt.width = w;
  gt.height = h;
  gt.labels.assign(static_cast<std::size_t>(w) * h, MaskLabel::Static);
  for (auto [x, y] : dynamic) gt.labels[y * w + x] = MaskLabel::Dynamic;
  for (auto [x, y] : dontCare) gt.labels[y * w + x] = MaskLabel::DontCare;
  return gt;
}

std::vector<std::uint8_t> maskBits(int w, int h, const std::vector<std::pair<int, int>>& on) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(w) * h, 0);
  for (auto [x, y] : on) m[y * w + x] = 1;
  return m;
}

DynamicProbabilityMap mapOf(int w, int h, double value) {
  DynamicProbabilityMap m;
  m.refId = "ref";
  m.pDynamic.resize(h, w);
  m.pDynamic.setConstant(value);
  m.supportCount.resize(h, w);
  m.supportCount.setConstant(1);
  return m;
}

// Independent oracle: literal double loop over the threshold grid with a
// from-scratch Jaccard (no bucketing, no suffix sums).
double naiveJaccard(const DynamicProbabilityMap& map, const GroundTruthMask& gt, double t) {
  std::int64_t inter = 0, uni = 0;
  for (int y = 0; y < gt.height; ++y) {
    for (int x = 0; x < gt.width; ++x) {
      if (gt.at(x, y) == MaskLabel::DontCare) continue;
      const bool pred = map.pDynamic(y, x) >= t;
      const bool dyn = gt.at(x, y) == MaskLabel::Dynamic;
      if (pred && dyn) ++inter;
      if (pred || dyn) ++uni;
    }
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

ThresholdResult naiveBest(const DynamicProbabilityMap& map, const GroundTruthMask& gt) {
  ThresholdResult best{0.0, -1.0};
  for (int k = 0; k <= 100; ++k) {
    const double t = k * 0.01;
    const double j = naiveJaccard(map, gt, t);
    if (j > best.jaccard) best = {t, j};
  }
  return best;
}

}  // namespace

TEST_CASE("jaccard hand cases") {
  const auto gt = maskOf(4, 1, {{1, 0}, {2, 0}});
  CHECK(jaccard(maskBits(4, 1, {{1, 0}, {2, 0}}), 4, 1, gt) == 1.0);
  CHECK(jaccard(maskBits(4, 1, {{0, 0}, {3, 0}}), 4, 1, gt) == 0.0);
  // mask {p1,p2}, gt {p2,p3}: intersection 1, union 3
  const auto gt2 = maskOf(4, 1, {{1, 0}, {2, 0}});
  CHECK(jaccard(maskBits(4, 1, {{0, 0}, {1, 0}}), 4, 1, gt2) == doctest::Approx(1.0 / 3.0));
  // both empty
  CHECK(jaccard(maskBits(4, 1, {}), 4, 1, maskOf(4, 1, {})) == 1.0);
  CHECK_THROWS_AS(jaccard(maskBits(3, 1, {}), 3, 1, gt), Error);
}

TEST_CASE("don't-care pixels never affect the score") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int w = 12, h = 9;
    GroundTruthMask gt;
    gt.width = w;
    gt.height = h;
    gt.labels.resize(w * h);
    std::vector<std::uint8_t> pred(w * h);
    for (int i = 0; i < w * h; ++i) {
      const int r = static_cast<int>(rng() % 4);
      gt.labels[i] = r == 0 ? MaskLabel::Dynamic : (r == 1 ? MaskLabel::DontCare : MaskLabel::Static);
      pred[i] = rng() % 2;
    }
    const double base = jaccard(pred, w, h, gt);
    std::vector<std::uint8_t> perturbed = pred;
    for (int i = 0; i < w * h; ++i)
      if (gt.labels[i] == MaskLabel::DontCare) perturbed[i] = 1 - perturbed[i];
    CHECK(jaccard(perturbed, w, h, gt) == base);
  }
}

TEST_CASE("per-image threshold search matches the brute-force oracle") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int w = 20, h = 15;
    DynamicProbabilityMap map = mapOf(w, h, 0.0);
    GroundTruthMask gt = maskOf(w, h, {});
    for (int i = 0; i < w * h; ++i) {
      map.pDynamic.data()[i] = uni(rng);
      const int r = static_cast<int>(rng() % 5);
      gt.labels[i] = r == 0 ? MaskLabel::Dynamic : (r == 1 ? MaskLabel::DontCare : MaskLabel::Static);
    }
    const ThresholdResult fast = bestThresholdPerImage(map, gt);
    const ThresholdResult slow = naiveBest(map, gt);
    CHECK(fast.jaccard == doctest::Approx(slow.jaccard).epsilon(1e-12));
    CHECK(fast.threshold == doctest::Approx(slow.threshold).epsilon(1e-12));
  }
}

TEST_CASE("constant 0.6 map with all-dynamic truth returns t = 0") {
  const int w = 8, h = 8;
  DynamicProbabilityMap map = mapOf(w, h, 0.6);
  GroundTruthMask gt;
  gt.width = w;
  gt.height = h;
  gt.labels.assign(w * h, MaskLabel::Dynamic);
  const ThresholdResult best = bestThresholdPerImage(map, gt);
  CHECK(best.jaccard == 1.0);
  CHECK(best.threshold == 0.0);  // ties break toward the smaller threshold
}

TEST_CASE("constant 0.4 map with empty truth finds the empty-mask threshold") {
  const int w = 8, h = 8;
  DynamicProbabilityMap map = mapOf(w, h, 0.4);
  const GroundTruthMask gt = maskOf(w, h, {});
  const ThresholdResult best = bestThresholdPerImage(map, gt);
  CHECK(best.jaccard == 1.0);
  CHECK(best.threshold == doctest::Approx(0.41));
}

TEST_CASE("per-set protocol: reduction and bounds") {
  const int w = 16, h = 12;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<DynamicProbabilityMap> maps;
  std::vector<GroundTruthMask> gts;
  for (int img = 0; img < 3; ++img) {
    DynamicProbabilityMap m = mapOf(w, h, 0.0);
    GroundTruthMask g = maskOf(w, h, {});
    for (int i = 0; i < w * h; ++i) {
      m.pDynamic.data()[i] = uni(rng);
      g.labels[i] = (rng() % 3) == 0 ? MaskLabel::Dynamic : MaskLabel::Static;
    }
    maps.push_back(std::move(m));
    gts.push_back(std::move(g));
  }

  SUBCASE("single-image set equals the per-image result") {
    const SetThresholdResult set = bestThresholdPerSet({&maps[0]}, {&gts[0]});
    const ThresholdResult per = bestThresholdPerImage(maps[0], gts[0]);
    CHECK(set.threshold == per.threshold);
    CHECK(set.meanJaccard == doctest::Approx(per.jaccard).epsilon(1e-12));
  }

  SUBCASE("per-image optimum dominates the per-set value for every image") {
    const SetThresholdResult set =
        bestThresholdPerSet({&maps[0], &maps[1], &maps[2]}, {&gts[0], &gts[1], &gts[2]});
    for (int i = 0; i < 3; ++i) {
      const ThresholdResult per = bestThresholdPerImage(maps[i], gts[i]);
      CHECK(per.jaccard >= set.perImage[i] - 1e-12);
    }
    // brute-force the set threshold too
    double bestMean = -1.0, bestT = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double t = k * 0.01;
      double mean = 0.0;
      for (int i = 0; i < 3; ++i) mean += naiveJaccard(maps[i], gts[i], t);
      mean /= 3.0;
      if (mean > bestMean + 1e-15) {
        bestMean = mean;
        bestT = t;
      }
    }
    CHECK(set.meanJaccard == doctest::Approx(bestMean).epsilon(1e-12));
    CHECK(set.threshold == doctest::Approx(bestT).epsilon(1e-12));
  }
}

TEST_CASE("evaluateSet aggregates both protocols") {
  const int w = 10, h = 10;
  DynamicProbabilityMap m1 = mapOf(w, h, 0.8);
  DynamicProbabilityMap m2 = mapOf(w, h, 0.2);
  GroundTruthMask g;
  g.width = w;
  g.height = h;
  g.labels.assign(w * h, MaskLabel::Dynamic);
  const EvalReport report = evaluateSet({&m1, &m2}, {&g, &g}, {"a", "b"});
  REQUIRE(report.images.size() == 2);
  CHECK(report.images[0].perImage.jaccard == 1.0);
  CHECK(report.images[1].perImage.jaccard == 1.0);
  CHECK(report.perImageMean == 1.0);
  // a single common threshold must also reach 1 here (t = 0 includes all)
  CHECK(report.perSet.meanJaccard == 1.0);
}
