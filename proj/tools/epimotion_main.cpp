#include "epimotion/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>

namespace {

// Free-form --set key=value overrides, applied after --config.
void applyOverrides(epimotion::RunConfig& config, const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw epimotion::Error(epimotion::ErrorCode::InvalidConfig,
                             "--set expects key=value, got: " + kv);
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-region detection for unordered wide-baseline photo sets"};
  app.require_subcommand(1);

  // detect
  auto* detect = app.add_subcommand("detect", "Compute dynamic probability maps for an image set");
  std::string inputDir, outputDir, gtDir, fmatrices, configFile;
  std::uint64_t seed = 0;
  int threads = 0;
  bool debugPatches = false, debugPmaps = false;
  std::vector<std::string> overrides;
  detect->add_option("--input", inputDir, "Directory of PNG/JPEG images")->required();
  detect->add_option("--output", outputDir, "Output directory")->required();
  detect->add_option("--gt", gtDir, "Directory of ground-truth masks (<id>.png)");
  detect->add_option("--fmatrices", fmatrices, "JSON file of precomputed fundamental matrices");
  detect->add_option("--seed", seed, "Random seed");
  detect->add_option("--threads", threads, "Worker threads (0 = auto)");
  detect->add_option("--config", configFile, "Flat key = value config file");
  detect->add_flag("--debug-patches", debugPatches, "Dump patch outlines as SVG overlays");
  detect->add_flag("--debug-pmaps", debugPmaps, "Dump per-pair matching maps as 16-bit PNGs");
  detect->add_option("--set", overrides, "Override any config key (key=value), repeatable");

  // synth
  auto* synth = app.add_subcommand("synth", "Render a synthetic scene with ground truth");
  std::string preset = "basic", synthOut;
  std::uint64_t synthSeed = 0;
  int width = 640, height = 480;
  synth->add_option("--preset", preset, "basic | epipolar-motion | static-control | periodic")
      ->required();
  synth->add_option("--output", synthOut, "Output directory")->required();
  synth->add_option("--seed", synthSeed, "Random seed")->required();
  synth->add_option("--width", width, "Image width");
  synth->add_option("--height", height, "Image height");

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed()) {
      epimotion::RunConfig config;
      if (!configFile.empty()) config.loadFile(configFile);
      config.inputDir = inputDir;
      config.outputDir = outputDir;
      if (!gtDir.empty()) config.gtDir = gtDir;
      if (!fmatrices.empty()) config.fmatricesPath = fmatrices;
      if (detect->count("--seed")) config.seed = seed;
      if (detect->count("--threads")) config.threads = threads;
      if (debugPatches) config.debugPatches = true;
      if (debugPmaps) config.debugPmaps = true;
      applyOverrides(config, overrides);
      return epimotion::runDetect(config);
    }
    if (synth->parsed()) {
      return epimotion::runSynth(preset, synthOut, synthSeed, width, height);
    }
  } catch (const epimotion::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
