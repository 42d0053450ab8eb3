#include "epimotion/aggregate.hpp"

#include <cmath>

namespace epimotion {

double remap(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorCode::OutOfRange, "remap input outside [0, 1]: " + std::to_string(p));
  return 0.3 + 0.4 * p;
}

MatchingProbabilityMap remapMap(const MatchingProbabilityMap& map) {
  MatchingProbabilityMap out = map;
  for (Eigen::Index i = 0; i < out.p.size(); ++i) {
    if (out.covered.data()[i])
      out.p.data()[i] = static_cast<float>(remap(static_cast<double>(map.p.data()[i])));
  }
  return out;
}

double fuseStatic(const std::vector<double>& pStatic) {
  // Log-odds form of  prod(p) / (prod(p) + prod(1-p)): complementary input
  // pairs cancel exactly and 0.5 contributes nothing.
  double logOdds = 0.0;
  for (double p : pStatic) logOdds += std::log(p) - std::log(1.0 - p);
  return 1.0 / (1.0 + std::exp(-logOdds));
}

DynamicProbabilityMap fuse(const std::vector<MatchingProbabilityMap>& maps) {
  if (maps.empty()) throw Error(ErrorCode::InvalidConfig, "fuse needs at least one map");
  const Eigen::Index rows = maps[0].p.rows();
  const Eigen::Index cols = maps[0].p.cols();
  for (const auto& m : maps) {
    if (m.p.rows() != rows || m.p.cols() != cols)
      throw Error(ErrorCode::DimensionMismatch, "fuse inputs differ in size");
  }
  DynamicProbabilityMap out;
  out.refId = maps[0].refId;
  out.pDynamic.resize(rows, cols);
  out.supportCount.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows * cols; ++i) {
    double logOdds = 0.0;
    std::uint16_t count = 0;
    for (const auto& m : maps) {
      const double p = static_cast<double>(m.p.data()[i]);
      logOdds += std::log(p) - std::log(1.0 - p);
      count += m.covered.data()[i] ? 1 : 0;
    }
    const double pStatic = 1.0 / (1.0 + std::exp(-logOdds));
    out.pDynamic.data()[i] = 1.0 - pStatic;
    out.supportCount.data()[i] = count;
  }
  return out;
}

std::vector<std::uint8_t> threshold(const DynamicProbabilityMap& map, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorCode::OutOfRange, "threshold outside [0, 1]");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(map.pDynamic.size()));
  for (Eigen::Index i = 0; i < map.pDynamic.size(); ++i)
    mask[static_cast<std::size_t>(i)] = map.pDynamic.data()[i] >= t ? 1 : 0;
  return mask;
}

}  // namespace epimotion
