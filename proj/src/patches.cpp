#include "epimotion/patches.hpp"

#include "epimotion/epipolar.hpp"

#include <algorithm>
#include <cmath>

namespace epimotion {
namespace {

constexpr double kEps = 1e-9;

using Polygon = std::vector<Vec2d>;

Polygon imageRect(double w, double h) {
  return {{0, 0}, {w, 0}, {w, h}, {0, h}};
}

// Sutherland-Hodgman clip against {q : n . q <= c}.
Polygon clipHalfPlane(const Polygon& poly, const Vec2d& n, double c) {
  Polygon out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2d& a = poly[i];
    const Vec2d& b = poly[(i + 1) % m];
    const double da = n.dot(a) - c;
    const double db = n.dot(b) - c;
    if (da <= kEps) out.push_back(a);
    if ((da < -kEps && db > kEps) || (da > kEps && db < -kEps)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

// Extent of the polygon projected on a unit direction, relative to `origin`.
bool projectedExtent(const Polygon& poly, const Vec2d& origin, const Vec2d& dir, double& lo,
                     double& hi) {
  if (poly.empty()) return false;
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (const Vec2d& v : poly) {
    const double t = dir.dot(v - origin);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo > kEps;
}

// Wedge between rays at `angLo` and `angLo + width` from `origin`, clipped to
// the image rectangle. Assumes width < pi.
Polygon clipWedge(double w, double h, const Vec2d& origin, double angLo, double width) {
  Polygon poly = imageRect(w, h);
  const Vec2d rLo(std::cos(angLo), std::sin(angLo));
  const Vec2d rHi(std::cos(angLo + width), std::sin(angLo + width));
  // inside: cross(rLo, q - o) >= 0  <=>  (-rLo.y, rLo.x) . q >= (-rLo.y, rLo.x) . o
  const Vec2d nLo(-rLo[1], rLo[0]);
  const Vec2d nHi(-rHi[1], rHi[0]);
  poly = clipHalfPlane(poly, -nLo, -nLo.dot(origin));
  poly = clipHalfPlane(poly, nHi, nHi.dot(origin));
  return poly;
}

double quadArea(const std::array<Vec2d, 4>& c) {
  double a = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec2d& p = c[i];
    const Vec2d& q = c[(i + 1) % 4];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return std::abs(a) * 0.5;
}

struct StripFrame {
  Vec2d bis;
  double cosHalf;
  bool atInfinity;
  Vec2d origin;       // finite apex
  double angLo = 0.0; // finite: lower ray angle
  double width = 0.0; // finite: angular width
  Vec2d normal;       // infinite
  double offLo = 0.0, offHi = 0.0;

  std::array<Vec2d, 4> corners(double t0, double t1) const {
    if (atInfinity) {
      const Vec2d a0 = offLo * normal + t0 * bis;
      const Vec2d b0 = offHi * normal + t0 * bis;
      const Vec2d b1 = offHi * normal + t1 * bis;
      const Vec2d a1 = offLo * normal + t1 * bis;
      return {a0, b0, b1, a1};
    }
    const Vec2d rLo(std::cos(angLo), std::sin(angLo));
    const Vec2d rHi(std::cos(angLo + width), std::sin(angLo + width));
    const double s0 = t0 / cosHalf;
    const double s1 = t1 / cosHalf;
    return {origin + s0 * rLo, origin + s0 * rHi, origin + s1 * rHi, origin + s1 * rLo};
  }
};

}  // namespace

bool PatchSet::stripOf(int family, double px, double py, int& idx, double& t) const {
  const Vec2d p(px, py);
  if (pencil.atInfinity) {
    const double off = pencil.normal.dot(p) - (pencil.sectorLo + pencil.familyOffset(family));
    if (off < 0.0) return false;
    idx = static_cast<int>(std::floor(off / pencil.gap));
    if (idx >= static_cast<int>(strips[family].size())) return false;
    t = pencil.axis.dot(p);
    return true;
  }
  const Vec2d v = p - pencil.origin;
  const double r = v.norm();
  if (r <= pencil.exclusionRadius) return false;
  const double phi = std::atan2(v[1], v[0]);
  double rel;
  if (pencil.fullCircle) {
    rel = wrapAngle2Pi(phi - pencil.familyOffset(family));
    idx = std::min(static_cast<int>(std::floor(rel / pencil.gap)),
                   static_cast<int>(strips[family].size()) - 1);
    if (idx < 0) return false;
  } else {
    const double fromLo = wrapAnglePi(phi - (pencil.sectorLo + pencil.familyOffset(family)));
    if (fromLo < 0.0) return false;
    idx = static_cast<int>(std::floor(fromLo / pencil.gap));
    if (idx >= static_cast<int>(strips[family].size())) return false;
  }
  const Strip& s = strips[family][idx];
  if (!s.valid) return false;
  t = v.dot(s.bis);
  return true;
}

int PatchSet::coveringPatches(double px, double py, std::array<int, kMaxCover>& out) const {
  int count = 0;
  for (int f = 0; f < 3; ++f) {
    int idx;
    double t;
    if (!stripOf(f, px, py, idx, t)) continue;
    const Strip& s = strips[f][idx];
    if (!s.valid || s.numRegular == 0) continue;
    const double w = params.nominalWidth;
    const double rel = t - s.tLo;
    int jMax = static_cast<int>(std::floor(rel / s.stride));
    int jMin = static_cast<int>(std::floor((rel - w) / s.stride)) + 1;
    jMin = std::max(jMin, 0);
    jMax = std::min(jMax, s.numRegular - 1);
    for (int j = jMin; j <= jMax; ++j) {
      if (count < kMaxCover) out[count] = s.firstPatch + j;
      ++count;
    }
    if (s.flushPatch >= 0 && t >= s.tHi - w && t < s.tHi) {
      if (count < kMaxCover) out[count] = s.flushPatch;
      ++count;
    }
  }
  return std::min(count, kMaxCover);
}

int PatchSet::coverCount(double px, double py) const {
  std::array<int, kMaxCover> buf;
  return coveringPatches(px, py, buf);
}

GridU8 PatchSet::coverageCounts() const {
  GridU8 out(height, width);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      out(y, x) = static_cast<std::uint8_t>(std::min(coverCount(x + 0.5, y + 0.5), 255));
  return out;
}

PatchSet decomposeReference(const Image& image, const EpipolarPencil& pencil,
                            const PatchParams& params) {
  PatchSet set;
  set.pencil = pencil;
  set.params = params;
  set.width = image.width;
  set.height = image.height;
  set.ownerId = image.id;

  const double w = params.nominalWidth;
  const double stride = w / 3.0;

  for (int f = 0; f < 3; ++f) {
    set.strips[f].resize(pencil.stripCount[f]);
    for (int i = 0; i < pencil.stripCount[f]; ++i) {
      PatchSet::Strip& strip = set.strips[f][i];
      strip.paramLo = pencil.stripParam(f, i);
      strip.stride = stride;

      Polygon poly;
      if (pencil.atInfinity) {
        poly = imageRect(image.width, image.height);
        poly = clipHalfPlane(poly, -pencil.normal, -strip.paramLo);
        poly = clipHalfPlane(poly, pencil.normal, strip.paramLo + pencil.gap);
        strip.bis = pencil.axis;
        strip.cosHalf = 1.0;
        double lo, hi;
        if (!projectedExtent(poly, Vec2d::Zero(), strip.bis, lo, hi)) continue;
        strip.tLo = lo;
        strip.tHi = hi;
      } else {
        poly = clipWedge(image.width, image.height, pencil.origin, strip.paramLo, pencil.gap);
        const double mid = strip.paramLo + pencil.gap / 2.0;
        strip.bis = Vec2d(std::cos(mid), std::sin(mid));
        strip.cosHalf = std::cos(pencil.gap / 2.0);
        double lo, hi;
        if (!projectedExtent(poly, pencil.origin, strip.bis, lo, hi)) continue;
        strip.tLo = std::max(lo, pencil.exclusionRadius);
        strip.tHi = hi;
      }
      const double extent = strip.tHi - strip.tLo;
      if (extent < w) continue;  // border sliver, left uncovered
      strip.valid = true;
      strip.numRegular = static_cast<int>(std::floor((extent - w) / stride + kEps)) + 1;
      strip.firstPatch = static_cast<int>(set.patches.size());

      StripFrame frame;
      frame.atInfinity = pencil.atInfinity;
      frame.bis = strip.bis;
      frame.cosHalf = strip.cosHalf;
      frame.origin = pencil.origin;
      frame.angLo = strip.paramLo;
      frame.width = pencil.gap;
      frame.normal = pencil.normal;
      frame.offLo = strip.paramLo;
      frame.offHi = strip.paramLo + pencil.gap;

      auto emit = [&](double t0, double t1) {
        EpipolarPatch p;
        p.paramLo = strip.paramLo;
        p.paramHi = strip.paramLo + pencil.gap;
        p.t0 = t0;
        p.t1 = t1;
        p.corners = frame.corners(t0, t1);
        p.center = 0.25 * (p.corners[0] + p.corners[1] + p.corners[2] + p.corners[3]);
        p.family = f;
        p.stripIndex = i;
        const double tc = 0.5 * (t0 + t1);
        p.localHeight = pencil.atInfinity ? pencil.gap : pencil.gap * tc;
        set.patches.push_back(p);
      };
      for (int j = 0; j < strip.numRegular; ++j) {
        const double t0 = strip.tLo + j * stride;
        emit(t0, t0 + w);
      }
      const double lastEnd = strip.tLo + (strip.numRegular - 1) * stride + w;
      if (lastEnd < strip.tHi - 1e-6) {
        strip.flushPatch = static_cast<int>(set.patches.size());
        emit(strip.tHi - w, strip.tHi);
      }
    }
  }
  return set;
}

double SupportStripContext::Segment::heightAt(double t) const {
  if (atInfinity) return std::abs(offHi - offLo);
  return 2.0 * std::sin(halfAngle) * std::max(t, 0.0);
}

std::array<Vec2d, 4> SupportStripContext::Segment::cornersAt(double t0, double t1) const {
  StripFrame frame;
  frame.atInfinity = atInfinity;
  frame.bis = bis;
  frame.origin = origin;
  frame.normal = lineNormal;
  frame.offLo = offLo;
  frame.offHi = offHi;
  if (atInfinity) {
    frame.cosHalf = 1.0;
  } else {
    const double beta = std::atan2(bis[1], bis[0]);
    frame.angLo = beta - halfAngle;
    frame.width = 2.0 * halfAngle;
    frame.cosHalf = std::cos(halfAngle);
  }
  return frame.corners(t0, t1);
}

SupportStripContext supportStripContext(const EpipolarPencil& refPencil, double paramLo,
                                        double paramHi, const PairGeometry& pg, int supWidth,
                                        int supHeight, const PatchParams& params) {
  SupportStripContext ctx;
  const Vec3d lLo = refPencil.lineAt(paramLo);
  const Vec3d lHi = refPencil.lineAt(paramHi);
  Vec3d cLo, cHi;
  try {
    cLo = correspondingLine<double>(pg.F, pg.epipoleRef, lLo);
    cHi = correspondingLine<double>(pg.F, pg.epipoleRef, lHi);
  } catch (const Error&) {
    return ctx;  // numerically degenerate transfer; treated as out of view
  }

  const Vec3d eSup = pg.epipoleSup.normalized();
  const double exclusion = 2.0 * params.targetHeight;

  if (std::abs(eSup[2]) < 1e-9) {
    // Parallel band between the two corresponding lines. Orientation along
    // the band is not determined by the line correspondence, so the band is
    // walked in both directions (the mirrored warp loses the max otherwise).
    const Vec2d n(cLo[0], cLo[1]);  // both lines share a (canonical) normal
    const double sA = -cLo[2];
    const double sB = -cHi[2];
    Polygon poly = imageRect(supWidth, supHeight);
    poly = clipHalfPlane(poly, -n, -std::min(sA, sB));
    poly = clipHalfPlane(poly, n, std::max(sA, sB));
    for (int dir = 0; dir < 2; ++dir) {
      SupportStripContext::Segment seg;
      seg.atInfinity = true;
      seg.lineNormal = n;
      seg.offLo = std::min(sA, sB);
      seg.offHi = std::max(sA, sB);
      seg.bis = (dir == 0 ? 1.0 : -1.0) * Vec2d(-n[1], n[0]);
      double lo, hi;
      if (projectedExtent(poly, Vec2d::Zero(), seg.bis, lo, hi)) {
        seg.tLo = lo;
        seg.tHi = hi;
        ctx.segments.push_back(seg);
      }
    }
    return ctx;
  }

  const Vec2d origin = eSup.head<2>() / eSup[2];
  const double psiA = std::atan2(cLo[0], -cLo[1]);  // direction angle of line lo
  double dPsi = wrapAnglePi(std::atan2(cHi[0], -cHi[1]) - psiA);
  if (dPsi > M_PI / 2) dPsi -= M_PI;
  if (dPsi < -M_PI / 2) dPsi += M_PI;
  const double halfAngle = std::abs(dPsi) / 2.0;
  if (halfAngle < 1e-12) return ctx;
  const double beta0 = psiA + dPsi / 2.0;

  for (int side = 0; side < 2; ++side) {
    const double beta = beta0 + side * M_PI;
    SupportStripContext::Segment seg;
    seg.bis = Vec2d(std::cos(beta), std::sin(beta));
    seg.halfAngle = halfAngle;
    seg.origin = origin;
    Polygon poly = clipWedge(supWidth, supHeight, origin, beta - halfAngle, 2.0 * halfAngle);
    double lo, hi;
    if (!projectedExtent(poly, origin, seg.bis, lo, hi)) continue;
    seg.tLo = std::max(lo, exclusion);
    seg.tHi = hi;
    if (seg.tHi - seg.tLo > 1.0) ctx.segments.push_back(seg);
  }
  return ctx;
}

CandidateSet enumerateCandidates(const SupportStripContext& ctx, double refHeight,
                                 const PatchParams& params) {
  CandidateSet out;
  if (refHeight <= 1e-9) return out;
  static const WidthClass kClasses[3] = {WidthClass::Narrow, WidthClass::Nominal,
                                         WidthClass::Wide};
  for (const auto& seg : ctx.segments) {
    for (int c = 0; c < 3; ++c) {
      const double mult = params.widthMultipliers[c];
      double t = seg.tLo;
      int emitted = 0;
      while (t < seg.tHi - kEps && emitted < params.maxCandidatesPerClass) {
        const double width =
            std::max(1.0, mult * params.nominalWidth * seg.heightAt(t) / refHeight);
        CandidatePatch cand;
        cand.t0 = t;
        cand.t1 = t + width;
        cand.width = width;
        cand.widthClass = kClasses[c];
        cand.corners = seg.cornersAt(cand.t0, cand.t1);
        out.candidates.push_back(cand);
        ++emitted;
        t += width / 3.0;
      }
    }
  }
  return out;
}

CandidateSet candidatePatches(const EpipolarPatch& r, const EpipolarPencil& refPencil,
                              const PairGeometry& pg, const Image& support,
                              const PatchParams& params) {
  const SupportStripContext ctx =
      supportStripContext(refPencil, r.paramLo, r.paramHi, pg, support.width, support.height, params);
  return enumerateCandidates(ctx, r.localHeight, params);
}

WarpedPatch warpPatch(const Image& image, const std::array<Vec2d, 4>& corners, int outW, int outH) {
  if (quadArea(corners) < 1.0)
    throw Error(ErrorCode::DegeneratePatch, "patch area below one square pixel");
  WarpedPatch out;
  out.w = outW;
  out.h = outH;
  out.r.resize(outH, outW);
  out.g.resize(outH, outW);
  out.b.resize(outH, outW);
  out.valid.resize(outH, outW);
  const Vec2d& a0 = corners[0];
  const Vec2d& b0 = corners[1];
  const Vec2d& b1 = corners[2];
  const Vec2d& a1 = corners[3];
  int validCount = 0;
  for (int oy = 0; oy < outH; ++oy) {
    const double v = (oy + 0.5) / outH;
    for (int ox = 0; ox < outW; ++ox) {
      const double u = (ox + 0.5) / outW;
      const Vec2d lower = a0 + u * (a1 - a0);
      const Vec2d upper = b0 + u * (b1 - b0);
      const Vec2d p = lower + v * (upper - lower);
      const bool inside =
          p[0] >= 0.0 && p[0] <= image.width && p[1] >= 0.0 && p[1] <= image.height;
      const Eigen::Vector3f rgb = image.sampleBilinear(p[0], p[1]);
      out.r(oy, ox) = rgb[0];
      out.g(oy, ox) = rgb[1];
      out.b(oy, ox) = rgb[2];
      out.valid(oy, ox) = inside ? 1 : 0;
      validCount += inside ? 1 : 0;
    }
  }
  out.validCount = validCount;
  return out;
}

}  // namespace epimotion
