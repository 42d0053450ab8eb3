#ifndef EPIMOTION_SUPPORT_GRAPH_HPP
#define EPIMOTION_SUPPORT_GRAPH_HPP

#include "epimotion/image.hpp"
#include "epimotion/matching.hpp"
#include "epimotion/ransac.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace epimotion {

/// Pairwise epipolar connectivity of an image set. Accepted geometry is
/// stored in both directions; rejected pairs keep their failure reason.
struct SupportGraph {
  std::vector<std::string> ids;
  std::map<std::pair<int, int>, PairGeometry> pairs;   // directed (ref, sup)
  std::map<std::pair<int, int>, std::string> rejected;  // unordered (i < j) -> reason

  std::vector<int> supportsOf(int image) const;
  const PairGeometry* find(int ref, int sup) const;
  double averageSupportSize() const;
};

/// Map "idA|idB" -> F with x_B^T F x_A = 0, row-major.
using FundamentalFile = std::map<std::string, Mat3d>;

FundamentalFile readFundamentalMatrices(const std::filesystem::path& path);
void writeFundamentalMatrices(const std::filesystem::path& path, const FundamentalFile& fmats);

/// Looks up the ordered pair (refId -> supId), transposing a reversed entry.
std::optional<Mat3d> lookupFundamental(const FundamentalFile& fmats, const std::string& refId,
                                       const std::string& supId);

struct SupportGraphParams {
  MatchingParams matching;
  RansacParams ransac;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Runs detection + matching + RANSAC over all unordered pairs (the reverse
/// direction is the transpose). Entries found in `fmats` skip estimation and
/// are assumed accepted. Each pair derives its RNG from (seed, pair ids), so
/// scheduling cannot change results.
SupportGraph buildSupportGraph(const ImageSet& set, const SupportGraphParams& params,
                               const FundamentalFile* fmats = nullptr);

}  // namespace epimotion

#endif
