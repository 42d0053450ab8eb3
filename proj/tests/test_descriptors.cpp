#include "epimotion/descriptors.hpp"

#include <doctest.h>

#include <random>

using namespace epimotion;

namespace {

WarpedPatch gridFromRgb(const std::vector<std::array<float, 3>>& px, int w, int h) {
  WarpedPatch p;
  p.w = w;
  p.h = h;
  p.r.resize(h, w);
  p.g.resize(h, w);
  p.b.resize(h, w);
  p.valid.resize(h, w);
  p.valid.setConstant(1);
  p.validCount = w * h;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      p.r(y, x) = px[y * w + x][0];
      p.g(y, x) = px[y * w + x][1];
      p.b(y, x) = px[y * w + x][2];
    }
  return p;
}

WarpedPatch constantPatch(float v, int n = 16) {
  return gridFromRgb(std::vector<std::array<float, 3>>(n * n, {v, v, v}), n, n);
}

WarpedPatch randomPatch(std::mt19937_64& rng, int n = 16) {
  std::uniform_real_distribution<float> uni(0.0f, 255.0f);
  std::vector<std::array<float, 3>> px(n * n);
  for (auto& p : px) p = {uni(rng), uni(rng), uni(rng)};
  return gridFromRgb(px, n, n);
}

DescriptorVector histOf(std::initializer_list<float> values) {
  DescriptorVector d;
  d.kind = DescriptorKind::HsHist;
  d.values = Eigen::VectorXf::Zero(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (float v : values) d.values[i++] = v;
  return d;
}

}  // namespace

TEST_CASE("hog of a constant patch is the zero vector") {
  const DescriptorVector d = hog(constantPatch(87.0f));
  CHECK(d.isZero());
  const DescriptorVector other = hog(constantPatch(5.0f));
  CHECK(similarity(d, other) == 0.0);
}

TEST_CASE("vertical step edge concentrates energy in the 0-degree bin") {
  std::vector<std::array<float, 3>> px(16 * 16, {0, 0, 0});
  for (int y = 0; y < 16; ++y)
    for (int x = 8; x < 16; ++x) px[y * 16 + x] = {200, 200, 200};
  const DescriptorVector d = hog(gridFromRgb(px, 16, 16));
  REQUIRE(d.values.size() == 36);
  for (int cell = 0; cell < 4; ++cell) {
    float cellSum = 0.0f;
    for (int b = 0; b < 9; ++b) cellSum += d.values[cell * 9 + b];
    if (cellSum <= 0.0f) continue;  // cells fully inside a flat region
    CHECK(d.values[cell * 9 + 0] / cellSum > 0.99f);
  }
  CHECK(similarity(d, d) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("hog is invariant to a constant intensity offset") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    WarpedPatch a = randomPatch(rng);
    // offset applied to luma via all channels equally
    WarpedPatch c = a;
    c.r += 25.0f;
    c.g += 25.0f;
    c.b += 25.0f;
    const DescriptorVector da = hog(a);
    const DescriptorVector dc = hog(c);
    CHECK((da.values - dc.values).cwiseAbs().maxCoeff() < 1e-4f);
  }
}

TEST_CASE("hs histogram hand cases") {
  // saturated pure red: H = 0, S = 1 -> single bin (0, 9)
  const DescriptorVector red = hsHistogram(gridFromRgb(
      std::vector<std::array<float, 3>>(256, {255, 0, 0}), 16, 16));
  CHECK(red.values.sum() == doctest::Approx(1.0));
  CHECK(red.values[0 * 10 + 9] == doctest::Approx(1.0));

  // two-tone half/half patch -> two bins of 0.5
  std::vector<std::array<float, 3>> px(256);
  for (int i = 0; i < 256; ++i) px[i] = i < 128 ? std::array<float, 3>{255, 0, 0}
                                                : std::array<float, 3>{0, 255, 0};
  const DescriptorVector two = hsHistogram(gridFromRgb(px, 16, 16));
  CHECK(two.values[0 * 10 + 9] == doctest::Approx(0.5));
  // green: H = 1/3 -> bin 3, S = 1 -> bin 9
  CHECK(two.values[3 * 10 + 9] == doctest::Approx(0.5));
  CHECK(similarity(two, two) == doctest::Approx(1.0));
}

TEST_CASE("hs histogram excludes flagged samples") {
  WarpedPatch p = constantPatch(0.0f);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) {
      p.r(y, x) = 255;
      p.valid(y, x) = (x < 8) ? 1 : 0;
    }
  const DescriptorVector d = hsHistogram(p);
  CHECK(d.values.sum() == doctest::Approx(1.0));  // only valid half counted, still unit mass
  p.valid.setConstant(0);
  const DescriptorVector zero = hsHistogram(p);
  CHECK(zero.isZero());
  CHECK(similarity(zero, d) == 0.0);
}

TEST_CASE("hs histogram is a bag of colors") {
  std::mt19937_64 rng(17);
  WarpedPatch a = randomPatch(rng);
  // spatial permutation: reverse raster order
  WarpedPatch b = a;
  const int n = 16;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      b.r(y, x) = a.r(n - 1 - y, n - 1 - x);
      b.g(y, x) = a.g(n - 1 - y, n - 1 - x);
      b.b(y, x) = a.b(n - 1 - y, n - 1 - x);
    }
  const DescriptorVector da = hsHistogram(a);
  const DescriptorVector db = hsHistogram(b);
  CHECK((da.values - db.values).cwiseAbs().maxCoeff() < 1e-7f);
}

TEST_CASE("similarity hand cases and contract") {
  const DescriptorVector a = histOf({0.5f, 0.5f, 0.0f});
  const DescriptorVector b = histOf({0.5f, 0.0f, 0.5f});
  CHECK(similarity(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const DescriptorVector disjointA = histOf({1.0f, 0.0f});
  const DescriptorVector disjointB = histOf({0.0f, 1.0f});
  CHECK(similarity(disjointA, disjointB) == 0.0);

  DescriptorVector hogVec;
  hogVec.kind = DescriptorKind::Hog;
  hogVec.values = Eigen::VectorXf::Ones(3);
  try {
    (void)similarity(hogVec, a);
    FAIL("expected kind mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DescriptorKindMismatch);
  }
}

TEST_CASE("similarity is symmetric, self-1, and in range") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<float> uni(0.0f, 1.0f);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 10;
    DescriptorVector a, b;
    a.kind = b.kind = (trial % 2 == 0) ? DescriptorKind::Hog : DescriptorKind::HsHist;
    a.values = Eigen::VectorXf::Zero(dim);
    b.values = Eigen::VectorXf::Zero(dim);
    for (int i = 0; i < dim; ++i) {
      a.values[i] = uni(rng);
      b.values[i] = uni(rng);
    }
    const double sab = similarity(a, b);
    const double sba = similarity(b, a);
    CHECK(sab == doctest::Approx(sba).epsilon(1e-9));
    CHECK(sab >= 0.0);
    CHECK(sab <= 1.0);
    if (!a.isZero()) CHECK(similarity(a, a) == doctest::Approx(1.0).epsilon(1e-6));
  }
}
