#ifndef EPIMOTION_PIPELINE_HPP
#define EPIMOTION_PIPELINE_HPP

#include "epimotion/aggregate.hpp"
#include "epimotion/descriptors.hpp"
#include "epimotion/eval.hpp"
#include "epimotion/image_io.hpp"
#include "epimotion/matching.hpp"
#include "epimotion/patches.hpp"
#include "epimotion/probmap.hpp"
#include "epimotion/ransac.hpp"
#include "epimotion/support_graph.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace epimotion {

enum class ThresholdProtocol { Fixed, PerImage, PerSet };

struct RunConfig {
  std::filesystem::path inputDir;
  std::filesystem::path outputDir;
  std::filesystem::path gtDir;         // empty = autodetect <input>/gt
  std::filesystem::path fmatricesPath; // empty = estimate all pairs
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  PatchParams patch;
  DescriptorParams desc;
  MatchingParams matching;
  RansacParams ransac;

  double fixedThreshold = 0.5;
  ThresholdProtocol protocol = ThresholdProtocol::PerImage;
  bool debugPatches = false;
  bool debugPmaps = false;

  int effectiveThreads() const;
  /// Applies one flat `key = value` setting; throws InvalidConfig on unknown
  /// keys or malformed values.
  void set(const std::string& key, const std::string& value);
  void loadFile(const std::filesystem::path& path);
};

/// Raw confidences of one directed pair, first pipeline pass.
struct PairConfidences {
  int refIndex = -1;
  int supIndex = -1;
  ConfidenceTable table;
  double maxCenterDist = 0.0;
};

/// Per-strip batched version of the per-patch confidence operation: shared
/// candidate descriptors per reference strip and scale bucket.
PairConfidences computePairConfidences(const Image& ref, const Image& sup, const PairGeometry& pg,
                                       const PatchParams& pp, const DescriptorParams& dp,
                                       int threads);

struct RunResult {
  SupportGraph graph;
  std::vector<int> processed;                      // reference indices with >= 1 support
  std::vector<std::pair<int, std::string>> skipped;  // index, reason
  std::map<int, DynamicProbabilityMap> dynamicMaps;
  std::map<int, std::vector<std::uint8_t>> masks;
  std::map<int, double> maskThresholds;
  NormalizationStats stats;
  double sigma = 0.0;
  std::optional<EvalReport> eval;
};

/// Full pipeline on an in-memory set; ground-truth entries may be missing.
RunResult runPipeline(const RunConfig& config, const ImageSet& set,
                      const std::vector<std::optional<GroundTruthMask>>& gts,
                      const FundamentalFile* fmats = nullptr);

/// Filesystem entry point: loads inputs, runs, writes maps, masks, heatmaps,
/// support_graph.json and (with ground truth) metrics.json. Returns a
/// process exit code; per-pair failures are reported, not fatal, unless no
/// pair at all is accepted.
int runDetect(const RunConfig& config);

/// Renders a preset scene and writes images, gt/ masks and fmatrices.json in
/// the exact formats runDetect ingests.
int runSynth(const std::string& preset, const std::filesystem::path& outputDir,
             std::uint64_t seed, int width = 640, int height = 480);

/// Fixed blue-to-red palette used for heatmap PNGs.
std::array<std::uint8_t, 3> heatmapColor(double v);

void writeDynamicMapPng(const std::filesystem::path& path, const DynamicProbabilityMap& map);
void writeHeatmapPng(const std::filesystem::path& path, const DynamicProbabilityMap& map);
void writeMatchingMapPng(const std::filesystem::path& path, const MatchingProbabilityMap& map);
void writeMaskPng(const std::filesystem::path& path, const std::vector<std::uint8_t>& mask,
                  int width, int height);

}  // namespace epimotion

#endif
