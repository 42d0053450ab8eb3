#include "epimotion/pipeline.hpp"

#include "epimotion/parallel.hpp"
#include "epimotion/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace epimotion {

int RunConfig::effectiveThreads() const {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

double parseDouble(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidConfig, "bad numeric value for " + key + ": " + value);
  }
}

int parseInt(const std::string& key, const std::string& value) {
  const double v = parseDouble(key, value);
  if (v != std::floor(v))
    throw Error(ErrorCode::InvalidConfig, "expected integer for " + key + ": " + value);
  return static_cast<int>(v);
}

bool parseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorCode::InvalidConfig, "expected boolean for " + key + ": " + value);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "seed")
    seed = static_cast<std::uint64_t>(parseDouble(key, value));
  else if (key == "threads")
    threads = parseInt(key, value);
  else if (key == "target_height")
    patch.targetHeight = parseDouble(key, value);
  else if (key == "nominal_width")
    patch.nominalWidth = parseDouble(key, value);
  else if (key == "canonical_size")
    patch.canonicalSize = parseInt(key, value);
  else if (key == "width_multipliers") {
    std::stringstream ss(value);
    std::string item;
    std::vector<double> vals;
    while (std::getline(ss, item, ',')) vals.push_back(parseDouble(key, trim(item)));
    if (vals.size() != 3)
      throw Error(ErrorCode::InvalidConfig, "width_multipliers needs 3 comma-separated values");
    patch.widthMultipliers = {vals[0], vals[1], vals[2]};
  } else if (key == "scale_bucket_ratio")
    patch.scaleBucketRatio = parseDouble(key, value);
  else if (key == "max_candidates_per_class")
    patch.maxCandidatesPerClass = parseInt(key, value);
  else if (key == "weight_hog")
    desc.weightHog = parseDouble(key, value);
  else if (key == "weight_hs")
    desc.weightHs = parseDouble(key, value);
  else if (key == "hs_bins")
    desc.hsBins = parseInt(key, value);
  else if (key == "hog_bins")
    desc.hogBins = parseInt(key, value);
  else if (key == "hog_cell")
    desc.hogCellSize = parseInt(key, value);
  else if (key == "ransac_threshold")
    ransac.sampsonThreshold = parseDouble(key, value);
  else if (key == "ransac_max_iters")
    ransac.maxIterations = parseInt(key, value);
  else if (key == "ransac_min_inliers")
    ransac.minInliers = parseInt(key, value);
  else if (key == "ransac_min_ratio")
    ransac.minInlierRatio = parseDouble(key, value);
  else if (key == "harris_max_corners")
    matching.maxCorners = parseInt(key, value);
  else if (key == "ncc_ratio")
    matching.nccRatio = parseDouble(key, value);
  else if (key == "ncc_floor")
    matching.nccFloor = parseDouble(key, value);
  else if (key == "threshold")
    fixedThreshold = parseDouble(key, value);
  else if (key == "threshold_protocol") {
    if (value == "fixed")
      protocol = ThresholdProtocol::Fixed;
    else if (value == "per-image")
      protocol = ThresholdProtocol::PerImage;
    else if (value == "per-set")
      protocol = ThresholdProtocol::PerSet;
    else
      throw Error(ErrorCode::InvalidConfig, "unknown threshold_protocol: " + value);
  } else if (key == "debug_patches")
    debugPatches = parseBool(key, value);
  else if (key == "debug_pmaps")
    debugPmaps = parseBool(key, value);
  else
    throw Error(ErrorCode::InvalidConfig, "unknown config key: " + key);
}

void RunConfig::loadFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidConfig,
                  path.string() + ":" + std::to_string(lineNo) + ": expected key = value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

namespace {

struct StripRef {
  int family;
  int index;
};

struct CandidateBlock {
  Eigen::MatrixXf hogMat;  // columns = candidates
  Eigen::MatrixXf hsMat;
  Eigen::VectorXf hogNorm;
  int count = 0;
};

CandidateBlock candidateDescriptors(const Image& sup, const CandidateSet& cands,
                                    const PatchParams& pp, const DescriptorParams& dp) {
  CandidateBlock block;
  const int n = static_cast<int>(cands.candidates.size());
  if (n == 0) return block;
  const int hogDim = 4 * dp.hogBins;
  const int hsDim = dp.hsBins * dp.hsBins;
  block.hogMat.setZero(hogDim, n);
  block.hsMat.setZero(hsDim, n);
  block.hogNorm.setZero(n);
  for (int i = 0; i < n; ++i) {
    WarpedPatch w;
    try {
      w = warpPatch(sup, cands.candidates[i].corners, pp.canonicalSize, pp.canonicalSize);
    } catch (const Error&) {
      continue;
    }
    const DescriptorVector dh = hog(w, dp);
    const DescriptorVector ds = hsHistogram(w, dp);
    if (dh.values.size() == hogDim) block.hogMat.col(i) = dh.values;
    if (ds.values.size() == hsDim) block.hsMat.col(i) = ds.values;
  }
  block.hogNorm = block.hogMat.colwise().norm();
  block.count = n;
  return block;
}

// Scale-bucket key for candidate sharing within a strip. Ratio 1 keeps every
// distinct patch height separate (exact per-patch enumeration).
std::int64_t bucketKey(double h, double base, double ratio) {
  if (ratio <= 1.0) {
    std::int64_t bits;
    static_assert(sizeof(bits) == sizeof(h));
    std::memcpy(&bits, &h, sizeof(bits));
    return bits;
  }
  return std::llround(std::log(std::max(h, 1e-6) / base) / std::log(ratio));
}

double bucketAnchor(std::int64_t key, double h, double base, double ratio) {
  if (ratio <= 1.0) return h;
  return base * std::pow(ratio, static_cast<double>(key));
}

}  // namespace

PairConfidences computePairConfidences(const Image& ref, const Image& sup, const PairGeometry& pg,
                                       const PatchParams& pp, const DescriptorParams& dp,
                                       int threads) {
  PairConfidences out;
  const EpipolarPencil pencil = buildPencil(ref.width, ref.height, pg.epipoleRef, pp.targetHeight);
  const PatchSet ps = decomposeReference(ref, pencil, pp);
  out.table.raw.assign(ps.patches.size(), {0.0f, 0.0f});
  out.maxCenterDist = maxCenterDistance(ps);

  std::vector<StripRef> stripRefs;
  for (int f = 0; f < 3; ++f)
    for (int i = 0; i < static_cast<int>(ps.strips[f].size()); ++i)
      if (ps.strips[f][i].valid) stripRefs.push_back({f, i});

  parallelFor(stripRefs.size(), threads, [&](std::size_t si) {
    const auto [family, index] = stripRefs[si];
    const PatchSet::Strip& strip = ps.strips[family][index];
    const int patchCount = strip.numRegular + (strip.flushPatch >= 0 ? 1 : 0);
    if (patchCount == 0) return;

    const SupportStripContext ctx =
        supportStripContext(pencil, strip.paramLo, strip.paramLo + pencil.gap, pg, sup.width,
                            sup.height, pp);

    // Group the strip's patches by scale bucket; all patches in a bucket
    // share one candidate enumeration and descriptor block.
    std::vector<std::pair<std::int64_t, int>> byBucket;
    for (int k = 0; k < patchCount; ++k) {
      const int pid = k < strip.numRegular ? strip.firstPatch + k : strip.flushPatch;
      byBucket.emplace_back(
          bucketKey(ps.patches[pid].localHeight, pp.targetHeight, pp.scaleBucketRatio), pid);
    }
    std::sort(byBucket.begin(), byBucket.end());

    std::size_t lo = 0;
    while (lo < byBucket.size()) {
      std::size_t hi = lo;
      while (hi < byBucket.size() && byBucket[hi].first == byBucket[lo].first) ++hi;
      const double anchor = bucketAnchor(byBucket[lo].first, ps.patches[byBucket[lo].second].localHeight,
                                         pp.targetHeight, pp.scaleBucketRatio);
      if (!ctx.segments.empty()) {
        const CandidateSet cands = enumerateCandidates(ctx, anchor, pp);
        const CandidateBlock block = candidateDescriptors(sup, cands, pp, dp);
        for (std::size_t k = lo; k < hi; ++k) {
          const int pid = byBucket[k].second;
          if (block.count == 0) continue;
          const WarpedPatch w = warpPatch(ref, ps.patches[pid].corners, pp.canonicalSize,
                                          pp.canonicalSize);
          const DescriptorVector dh = hog(w, dp);
          const DescriptorVector dsv = hsHistogram(w, dp);
          float bestHog = 0.0f, bestHs = 0.0f;
          const float refNorm = dh.values.norm();
          if (refNorm > 0.0f && !dh.isZero()) {
            Eigen::VectorXf dots = block.hogMat.transpose() * dh.values;
            for (int c = 0; c < block.count; ++c) {
              const float nb = block.hogNorm[c];
              if (nb <= 0.0f) continue;
              bestHog = std::max(bestHog, std::clamp(dots[c] / (refNorm * nb), 0.0f, 1.0f));
            }
          }
          if (!dsv.isZero()) {
            for (int c = 0; c < block.count; ++c) {
              const auto col = block.hsMat.col(c);
              const float unionSum = dsv.values.cwiseMax(col).sum();
              if (unionSum <= 0.0f) continue;
              const float interSum = dsv.values.cwiseMin(col).sum();
              bestHs = std::max(bestHs, std::clamp(interSum / unionSum, 0.0f, 1.0f));
            }
          }
          out.table.raw[pid] = {bestHog, bestHs};
        }
      }
      lo = hi;
    }
  });
  return out;
}

std::array<std::uint8_t, 3> heatmapColor(double v) {
  v = std::clamp(v, 0.0, 1.0);
  const auto channel = [](double x) {
    return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(x, 0.0, 1.0)));
  };
  return {channel(1.5 - std::abs(4.0 * v - 3.0)), channel(1.5 - std::abs(4.0 * v - 2.0)),
          channel(1.5 - std::abs(4.0 * v - 1.0))};
}

void writeDynamicMapPng(const fs::path& path, const DynamicProbabilityMap& map) {
  const int w = static_cast<int>(map.pDynamic.cols());
  const int h = static_cast<int>(map.pDynamic.rows());
  std::vector<std::uint16_t> gray(static_cast<std::size_t>(w) * h);
  for (Eigen::Index i = 0; i < map.pDynamic.size(); ++i)
    gray[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(
        std::lround(std::clamp(map.pDynamic.data()[i], 0.0, 1.0) * 65535.0));
  writePngGray16(path, w, h, gray);
}

void writeHeatmapPng(const fs::path& path, const DynamicProbabilityMap& map) {
  Image img;
  img.width = static_cast<int>(map.pDynamic.cols());
  img.height = static_cast<int>(map.pDynamic.rows());
  img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  for (Eigen::Index i = 0; i < map.pDynamic.size(); ++i) {
    const auto c = heatmapColor(map.pDynamic.data()[i]);
    img.rgb[3 * i + 0] = c[0];
    img.rgb[3 * i + 1] = c[1];
    img.rgb[3 * i + 2] = c[2];
  }
  writePngRgb8(path, img);
}

void writeMatchingMapPng(const fs::path& path, const MatchingProbabilityMap& map) {
  const int w = static_cast<int>(map.p.cols());
  const int h = static_cast<int>(map.p.rows());
  std::vector<std::uint16_t> gray(static_cast<std::size_t>(w) * h);
  for (Eigen::Index i = 0; i < map.p.size(); ++i)
    gray[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(
        std::lround(std::clamp(static_cast<double>(map.p.data()[i]), 0.0, 1.0) * 65535.0));
  writePngGray16(path, w, h, gray);
}

void writeMaskPng(const fs::path& path, const std::vector<std::uint8_t>& mask, int width,
                  int height) {
  std::vector<std::uint8_t> gray(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) gray[i] = mask[i] ? 255 : 0;
  writePngGray8(path, width, height, gray);
}

namespace {

void dumpPatchSvg(const fs::path& path, const PatchSet& ps) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << ps.width << "\" height=\""
      << ps.height << "\">\n";
  static const char* colors[3] = {"#e41a1c", "#377eb8", "#4daf4a"};
  const std::size_t step = std::max<std::size_t>(1, ps.patches.size() / 512);
  for (std::size_t i = 0; i < ps.patches.size(); i += step) {
    const auto& p = ps.patches[i];
    out << "<polygon points=\"";
    for (const auto& c : p.corners) out << c[0] << "," << c[1] << " ";
    out << "\" fill=\"none\" stroke=\"" << colors[p.family] << "\" stroke-width=\"0.5\"/>\n";
  }
  out << "</svg>\n";
}

nlohmann::ordered_json supportGraphJson(const SupportGraph& graph) {
  nlohmann::ordered_json j;
  j["images"] = graph.ids;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [key, geom] : graph.pairs) {
    nlohmann::ordered_json e;
    e["reference"] = graph.ids[key.first];
    e["support"] = graph.ids[key.second];
    e["inliers"] = geom.inliers.size();
    e["inlier_ratio"] = geom.inlierRatio;
    e["mean_sampson_error"] = geom.meanSampsonError;
    e["source"] = geom.fromFile ? "file" : "estimated";
    edges.push_back(e);
  }
  j["edges"] = edges;
  nlohmann::ordered_json rejected = nlohmann::ordered_json::array();
  for (const auto& [key, reason] : graph.rejected) {
    nlohmann::ordered_json e;
    e["pair"] = graph.ids[key.first] + "|" + graph.ids[key.second];
    e["reason"] = reason;
    rejected.push_back(e);
  }
  j["rejected"] = rejected;
  j["average_support_size"] = graph.averageSupportSize();
  return j;
}

}  // namespace

RunResult runPipeline(const RunConfig& config, const ImageSet& set,
                      const std::vector<std::optional<GroundTruthMask>>& gts,
                      const FundamentalFile* fmats) {
  const int threads = config.effectiveThreads();
  const int n = static_cast<int>(set.images.size());
  RunResult result;

  SupportGraphParams sgParams;
  sgParams.matching = config.matching;
  sgParams.ransac = config.ransac;
  sgParams.seed = config.seed;
  sgParams.threads = threads;
  result.graph = buildSupportGraph(set, sgParams, fmats);

  if (result.graph.pairs.empty()) {
    std::string detail = "no image pair was accepted";
    for (const auto& [key, reason] : result.graph.rejected)
      detail += "\n  " + result.graph.ids[key.first] + "|" + result.graph.ids[key.second] + ": " +
                reason;
    throw Error(ErrorCode::NoPairAccepted, detail);
  }

  // Pass 1: raw confidences for every directed pair, plus run-level stats.
  std::vector<std::pair<int, int>> pairList;
  for (int i = 0; i < n; ++i) {
    const auto sups = result.graph.supportsOf(i);
    if (sups.empty()) {
      result.skipped.emplace_back(i, "empty support set");
      continue;
    }
    result.processed.push_back(i);
    for (int s : sups) pairList.emplace_back(i, s);
  }

  std::vector<PairConfidences> confidences(pairList.size());
  for (std::size_t t = 0; t < pairList.size(); ++t) {
    const auto [ri, si] = pairList[t];
    confidences[t] = computePairConfidences(set.images[ri], set.images[si],
                                            *result.graph.find(ri, si), config.patch, config.desc,
                                            threads);
    confidences[t].refIndex = ri;
    confidences[t].supIndex = si;
  }
  for (const auto& pc : confidences) {
    result.stats.include(pc.table);
    result.sigma = std::max(result.sigma, pc.maxCenterDist);
  }
  result.sigma = std::max(result.sigma / 3.0, 1e-6);

  // Pass 2: per-pair maps (patch sets are regenerated deterministically),
  // remap, fuse per reference.
  std::map<int, std::vector<MatchingProbabilityMap>> perRef;
  for (const auto& pc : confidences) {
    const Image& ref = set.images[pc.refIndex];
    const PairGeometry& pg = *result.graph.find(pc.refIndex, pc.supIndex);
    const EpipolarPencil pencil =
        buildPencil(ref.width, ref.height, pg.epipoleRef, config.patch.targetHeight);
    const PatchSet ps = decomposeReference(ref, pencil, config.patch);
    MatchingProbabilityMap map = assembleMatchingMap(
        ps, pc.table, result.stats, config.desc, result.sigma, set.images[pc.supIndex].id, threads);
    perRef[pc.refIndex].push_back(remapMap(map));
    if (config.debugPmaps && !config.outputDir.empty())
      writeMatchingMapPng(config.outputDir / ("pmap_" + map.refId + "_" + map.supId + ".png"), map);
    if (config.debugPatches && !config.outputDir.empty())
      dumpPatchSvg(config.outputDir / ("patches_" + map.refId + "_" + map.supId + ".svg"), ps);
  }
  for (auto& [ri, maps] : perRef) result.dynamicMaps[ri] = fuse(maps);

  // Evaluation over processed references that have ground truth.
  std::vector<const DynamicProbabilityMap*> evalMaps;
  std::vector<const GroundTruthMask*> evalGts;
  std::vector<std::string> evalIds;
  std::vector<int> evalIdx;
  for (int ri : result.processed) {
    if (static_cast<std::size_t>(ri) < gts.size() && gts[ri]) {
      evalMaps.push_back(&result.dynamicMaps.at(ri));
      evalGts.push_back(&*gts[ri]);
      evalIds.push_back(set.images[ri].id);
      evalIdx.push_back(ri);
    }
  }
  if (!evalMaps.empty()) {
    EvalReport report = evaluateSet(evalMaps, evalGts, evalIds);
    for (std::size_t i = 0; i < evalIdx.size(); ++i)
      report.images[i].supportSize =
          static_cast<int>(result.graph.supportsOf(evalIdx[i]).size());
    result.eval = std::move(report);
  }

  // Thresholded masks per the configured protocol.
  for (int ri : result.processed) {
    double t = config.fixedThreshold;
    if (result.eval && config.protocol != ThresholdProtocol::Fixed) {
      if (config.protocol == ThresholdProtocol::PerSet) {
        t = result.eval->perSet.threshold;
      } else {
        for (std::size_t i = 0; i < evalIdx.size(); ++i)
          if (evalIdx[i] == ri) t = result.eval->images[i].perImage.threshold;
      }
    }
    result.maskThresholds[ri] = t;
    result.masks[ri] = threshold(result.dynamicMaps.at(ri), t);
  }
  return result;
}

int runDetect(const RunConfig& config) {
  ImageSet set = loadImageSet(config.inputDir);
  fs::path gtDir = config.gtDir;
  if (gtDir.empty() && fs::is_directory(config.inputDir / "gt")) gtDir = config.inputDir / "gt";

  std::vector<std::optional<GroundTruthMask>> gts(set.images.size());
  if (!gtDir.empty()) {
    for (std::size_t i = 0; i < set.images.size(); ++i) {
      const fs::path maskPath = gtDir / (set.images[i].id + ".png");
      if (fs::exists(maskPath)) gts[i] = loadGroundTruth(maskPath, set.images[i]);
    }
  }

  FundamentalFile fmats;
  const bool haveF = !config.fmatricesPath.empty();
  if (haveF) fmats = readFundamentalMatrices(config.fmatricesPath);

  fs::create_directories(config.outputDir);

  RunResult result;
  try {
    result = runPipeline(config, set, gts, haveF ? &fmats : nullptr);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoPairAccepted) {
      std::fprintf(stderr, "%s\n", e.what());
      return 2;
    }
    throw;
  }

  for (int ri : result.processed) {
    const std::string& id = set.images[ri].id;
    const DynamicProbabilityMap& dyn = result.dynamicMaps.at(ri);
    writeDynamicMapPng(config.outputDir / ("dynmap_" + id + ".png"), dyn);
    writeHeatmapPng(config.outputDir / ("dynmap_" + id + "_heat.png"), dyn);
    writeMaskPng(config.outputDir / ("dynmask_" + id + ".png"), result.masks.at(ri),
                 set.images[ri].width, set.images[ri].height);
    std::printf("%s: support size %zu, mask threshold %.2f\n", id.c_str(),
                result.graph.supportsOf(ri).size(), result.maskThresholds.at(ri));
  }
  for (const auto& [ri, reason] : result.skipped)
    std::printf("%s: skipped (%s)\n", set.images[ri].id.c_str(), reason.c_str());

  {
    std::ofstream out(config.outputDir / "support_graph.json");
    out << supportGraphJson(result.graph).dump(1) << "\n";
  }

  if (result.eval) {
    const EvalReport& report = *result.eval;
    nlohmann::ordered_json j;
    j["set"] = {{"name", set.name},
                {"size", set.images.size()},
                {"average_support_size", result.graph.averageSupportSize()},
                {"seed", config.seed}};
    nlohmann::ordered_json images = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.images.size(); ++i) {
      const ImageEval& ev = report.images[i];
      const int ri = set.indexOf(ev.id);
      nlohmann::ordered_json e;
      e["id"] = ev.id;
      e["width"] = set.images[ri].width;
      e["height"] = set.images[ri].height;
      e["support_size"] = ev.supportSize;
      e["best_threshold"] = ev.perImage.threshold;
      e["best_jaccard"] = ev.perImage.jaccard;
      e["jaccard_at_set_threshold"] = ev.jaccardAtSetThreshold;
      images.push_back(e);
    }
    j["images"] = images;
    j["per_image_protocol"] = {{"mean_jaccard", report.perImageMean},
                               {"std_jaccard", report.perImageStd}};
    j["per_set_protocol"] = {{"threshold", report.perSet.threshold},
                             {"mean_jaccard", report.perSet.meanJaccard},
                             {"std_jaccard", report.perSet.stdJaccard}};
    std::ofstream out(config.outputDir / "metrics.json");
    out << j.dump(1) << "\n";
  }
  return 0;
}

int runSynth(const std::string& preset, const fs::path& outputDir, std::uint64_t seed, int width,
             int height) {
  const SyntheticScene scene = scenePreset(preset, seed, width, height);
  const RenderedScene rendered = renderScene(scene);

  fs::create_directories(outputDir / "gt");
  for (std::size_t i = 0; i < rendered.images.images.size(); ++i) {
    const Image& img = rendered.images.images[i];
    writePngRgb8(outputDir / (img.id + ".png"), img);
    writeGroundTruth(outputDir / "gt" / (img.id + ".png"), rendered.masks[i]);
  }
  FundamentalFile fmats;
  const int n = static_cast<int>(scene.cameras.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      fmats[rendered.images.images[i].id + "|" + rendered.images.images[j].id] =
          scene.groundTruthFundamental(i, j);
    }
  }
  writeFundamentalMatrices(outputDir / "fmatrices.json", fmats);
  std::printf("%s: wrote %d views to %s\n", preset.c_str(), n, outputDir.string().c_str());
  return 0;
}

}  // namespace epimotion
