#ifndef EPIMOTION_PATCHES_HPP
#define EPIMOTION_PATCHES_HPP

#include "epimotion/image.hpp"
#include "epimotion/pencil.hpp"
#include "epimotion/ransac.hpp"

#include <array>
#include <string>
#include <vector>

namespace epimotion {

struct PatchParams {
  double targetHeight = 16.0;   // pencil gap calibration, px
  double nominalWidth = 16.0;   // patch length along the line, px
  int canonicalSize = 16;       // warped descriptor grid
  std::array<double, 3> widthMultipliers = {0.5, 1.0, 2.0};
  int maxCandidatesPerClass = 2048;
  double scaleBucketRatio = 1.4142135623730951;  // sqrt(2); 1.0 = exact per patch
};

/// Quadrilateral confined between two adjacent pencil members at a radial
/// interval [t0, t1] along the strip bisector. Corner order: lower line at
/// t0, upper line at t0, upper line at t1, lower line at t1.
struct EpipolarPatch {
  double paramLo = 0.0;
  double paramHi = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  std::array<Vec2d, 4> corners;
  Vec2d center = Vec2d::Zero();
  int family = -1;      // shift class: 0, 1/3, 2/3
  int stripIndex = -1;
  double localHeight = 0.0;  // strip height at the patch center, px
};

/// Patch decomposition of one reference image for one pair geometry, with a
/// constant-time per-pixel coverage query consistent with the patch list.
class PatchSet {
 public:
  struct Strip {
    double paramLo = 0.0;   // raw (unwrapped) lower param
    double tLo = 0.0;
    double tHi = 0.0;
    Vec2d bis = Vec2d::UnitX();
    double cosHalf = 1.0;
    int firstPatch = -1;
    int numRegular = 0;
    int flushPatch = -1;
    double stride = 1.0;
    bool valid = false;
  };

  EpipolarPencil pencil;
  PatchParams params;
  int width = 0;
  int height = 0;
  std::string ownerId;
  std::vector<EpipolarPatch> patches;
  std::array<std::vector<Strip>, 3> strips;

  static constexpr int kMaxCover = 16;

  /// Ids of patches covering the pixel whose center is (px, py); returns the
  /// count (0 for the epipole exclusion zone and uncovered border slivers).
  int coveringPatches(double px, double py, std::array<int, kMaxCover>& out) const;
  int coverCount(double px, double py) const;
  /// Materialized per-pixel coverage counts.
  GridU8 coverageCounts() const;

 private:
  bool stripOf(int family, double px, double py, int& idx, double& t) const;
};

PatchSet decomposeReference(const Image& image, const EpipolarPencil& pencil,
                            const PatchParams& params = {});

enum class WidthClass { Narrow, Nominal, Wide };

struct CandidatePatch {
  std::array<Vec2d, 4> corners;
  double t0 = 0.0;
  double t1 = 0.0;
  double width = 0.0;
  WidthClass widthClass = WidthClass::Nominal;
};

struct CandidateSet {
  std::vector<CandidatePatch> candidates;
};

/// Support-image strip confined between the corresponding lines of one
/// reference strip. A finite support epipole yields up to two opposite
/// wedge segments; an infinite one a single parallel band.
struct SupportStripContext {
  struct Segment {
    Vec2d bis = Vec2d::UnitX();   // unit bisector / axis direction
    double halfAngle = 0.0;       // finite wedges only
    Vec2d origin = Vec2d::Zero(); // finite: support epipole
    bool atInfinity = false;
    Vec2d lineNormal = Vec2d::UnitY();  // infinite only
    double offLo = 0.0, offHi = 0.0;    // infinite: the two line offsets
    double tLo = 0.0, tHi = 0.0;        // extent inside the support image
    double heightAt(double t) const;
    std::array<Vec2d, 4> cornersAt(double t0, double t1) const;
  };
  std::vector<Segment> segments;  // empty when out of the field of view
};

/// Builds the support-side context for the strip bounded by the two pencil
/// params. pg must map reference points to support lines.
SupportStripContext supportStripContext(const EpipolarPencil& refPencil, double paramLo,
                                        double paramHi, const PairGeometry& pg, int supWidth,
                                        int supHeight, const PatchParams& params);

/// Candidate patches for a reference patch of height refHeight, slid along
/// the context segments in three width classes scaled by the local strip
/// height ratio. Deterministic; stride is one third of the local width.
CandidateSet enumerateCandidates(const SupportStripContext& ctx, double refHeight,
                                 const PatchParams& params);

/// Per-patch candidate set per the module contract (exact local scaling).
CandidateSet candidatePatches(const EpipolarPatch& r, const EpipolarPencil& refPencil,
                              const PairGeometry& pg, const Image& support,
                              const PatchParams& params = {});

struct WarpedPatch {
  int w = 0;
  int h = 0;
  GridF r, g, b;   // 0..255
  GridU8 valid;    // 1 where the source sample fell inside the image
  int validCount = 0;
};

/// Bilinear resample of the quadrilateral onto a canonical rectangle.
/// Out-of-image samples clamp to the border and are flagged invalid.
/// Throws DegeneratePatch when the quad area is below one square pixel.
WarpedPatch warpPatch(const Image& image, const std::array<Vec2d, 4>& corners, int outW, int outH);

inline WarpedPatch warpPatch(const Image& image, const EpipolarPatch& p, int outW, int outH) {
  return warpPatch(image, p.corners, outW, outH);
}

}  // namespace epimotion

#endif
