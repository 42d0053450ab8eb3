#include "epimotion/support_graph.hpp"

#include "epimotion/parallel.hpp"

#include <json.hpp>

#include <fstream>

namespace epimotion {
namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xCBF29CE484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::uint64_t pairSeed(std::uint64_t seed, const std::string& a, const std::string& b) {
  return fnv1a(b, fnv1a(a, fnv1a("pair") ^ seed * 0x9E3779B97F4A7C15ull));
}

}  // namespace

std::vector<int> SupportGraph::supportsOf(int image) const {
  std::vector<int> out;
  for (const auto& [key, geom] : pairs) {
    if (key.first == image) out.push_back(key.second);
  }
  return out;
}

const PairGeometry* SupportGraph::find(int ref, int sup) const {
  const auto it = pairs.find({ref, sup});
  return it == pairs.end() ? nullptr : &it->second;
}

double SupportGraph::averageSupportSize() const {
  if (ids.empty()) return 0.0;
  double total = 0.0;
  for (int i = 0; i < static_cast<int>(ids.size()); ++i)
    total += static_cast<double>(supportsOf(i).size());
  return total / static_cast<double>(ids.size());
}

FundamentalFile readFundamentalMatrices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  FundamentalFile out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_array() || value.size() != 9)
      throw Error(ErrorCode::InvalidConfig, "entry " + key + " must hold 9 row-major floats");
    Mat3d F;
    for (int i = 0; i < 9; ++i) F(i / 3, i % 3) = value[i].get<double>();
    out[key] = F;
  }
  return out;
}

void writeFundamentalMatrices(const std::filesystem::path& path, const FundamentalFile& fmats) {
  nlohmann::ordered_json j;
  for (const auto& [key, F] : fmats) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int i = 0; i < 9; ++i) arr.push_back(F(i / 3, i % 3));
    j[key] = arr;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << j.dump(1) << "\n";
}

std::optional<Mat3d> lookupFundamental(const FundamentalFile& fmats, const std::string& refId,
                                       const std::string& supId) {
  auto it = fmats.find(refId + "|" + supId);
  if (it != fmats.end()) return it->second;
  it = fmats.find(supId + "|" + refId);
  if (it != fmats.end()) return Mat3d(it->second.transpose());
  return std::nullopt;
}

SupportGraph buildSupportGraph(const ImageSet& set, const SupportGraphParams& params,
                               const FundamentalFile* fmats) {
  const int n = static_cast<int>(set.images.size());
  SupportGraph graph;
  for (const auto& img : set.images) graph.ids.push_back(img.id);

  // Corner detection once per image; pair tasks only read it.
  std::vector<CornerList> corners(n);
  std::vector<bool> needCorners(n, false);
  std::vector<std::pair<int, int>> tasks;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      tasks.emplace_back(i, j);
      if (!fmats || !lookupFundamental(*fmats, set.images[i].id, set.images[j].id)) {
        needCorners[i] = true;
        needCorners[j] = true;
      }
    }
  }
  parallelFor(static_cast<std::size_t>(n), params.threads, [&](std::size_t i) {
    if (needCorners[i]) corners[i] = detectCorners(set.images[i], params.matching);
  });

  struct TaskResult {
    std::optional<PairGeometry> geometry;
    std::string failure;
  };
  std::vector<TaskResult> results(tasks.size());
  parallelFor(tasks.size(), params.threads, [&](std::size_t t) {
    const auto [i, j] = tasks[t];
    const std::string& idA = set.images[i].id;
    const std::string& idB = set.images[j].id;
    if (fmats) {
      if (auto F = lookupFundamental(*fmats, idA, idB)) {
        results[t].geometry = pairGeometryFromF(*F);
        return;
      }
    }
    auto matches = matchCorners(corners[i], corners[j], params.matching);
    RansacResult est =
        estimateFundamentalRansac(matches, pairSeed(params.seed, idA, idB), params.ransac);
    if (est.geometry) {
      results[t].geometry = std::move(est.geometry);
    } else {
      results[t].failure =
          est.failureText() + " (" + std::to_string(matches.size()) + " putative matches)";
    }
  });

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto [i, j] = tasks[t];
    if (results[t].geometry) {
      graph.pairs[{i, j}] = *results[t].geometry;
      graph.pairs[{j, i}] = results[t].geometry->transposed();
    } else {
      graph.rejected[{i, j}] = results[t].failure;
    }
  }
  return graph;
}

}  // namespace epimotion
