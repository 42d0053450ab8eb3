#ifndef EPIMOTION_AGGREGATE_HPP
#define EPIMOTION_AGGREGATE_HPP

#include "epimotion/probmap.hpp"

#include <string>
#include <vector>

namespace epimotion {

/// Fused per-pixel dynamic probability with the per-pixel count of maps that
/// actually covered the pixel.
struct DynamicProbabilityMap {
  std::string refId;
  GridD pDynamic;
  Grid<std::uint16_t> supportCount;
};

/// Affine squeeze of [0,1] onto [0.3, 0.7], keeping 0.5 fixed so neutral
/// values stay neutral under fusion. Throws on out-of-range input.
double remap(double p);

/// Applies remap to every covered pixel; uncovered pixels stay at 0.5.
MatchingProbabilityMap remapMap(const MatchingProbabilityMap& map);

/// Odds-product fusion of per-pair static probabilities; the complement is
/// returned per pixel. Pixels uncovered in a given map contribute the
/// neutral 0.5 there. Inputs are expected remapped into [0.3, 0.7], which
/// keeps the log-odds sum bounded for any support size.
DynamicProbabilityMap fuse(const std::vector<MatchingProbabilityMap>& maps);

/// Static-probability fold over a plain value list; the building block of
/// fuse, exposed for direct checks.
double fuseStatic(const std::vector<double>& pStatic);

/// Pixel is dynamic iff pDynamic >= t.
std::vector<std::uint8_t> threshold(const DynamicProbabilityMap& map, double t);

}  // namespace epimotion

#endif
