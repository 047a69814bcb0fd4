#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mdg/features.hpp"
#include "mdg/knn.hpp"
#include "mdg/signal.hpp"
#include "mdg/svm.hpp"
#include "mdg/synth.hpp"

namespace mdg {

/// Which classifier `eval` runs. kAuto picks by dataset kind: kNN for
/// envelope and empirical rows, PCA-1NN for images, the central-trajectory
/// MHD rule for sparse trajectories.
enum class ClassifierKind { kAuto, kKnn, kSvm };

std::string_view to_string(ClassifierKind k);

/// Every tunable of every module, read from `section.key=value` lines.
struct RunConfig {
  FeatureSettings features;
  SegmentationConfig segment;
  KnnConfig knn;
  SvmConfig svm;
  ClassifierKind classifier = ClassifierKind::kAuto;
  double train_frac = 0.7;
  std::size_t trials = 100;
  std::uint64_t eval_seed = 42;
  std::size_t threads = 0;  // 0 = hardware concurrency
  SynthConfig synth;
  std::uint64_t sparse_seed = 42;
  std::size_t pca_d = 30;
  std::size_t subspace_d = 10;
  double subspace_tau = 0.85;
  // Used for raw I/Q files without a sidecar.
  double sample_rate_hz = kDefaultSampleRateHz;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  /// Sets every seed (eval, synth, svm, sparse) to `seed`.
  void set_seed(std::uint64_t seed);
};

/// Names of all accepted keys, in dump order.
std::vector<std::string> config_keys();

/// Throws ConfigError for an unknown key or unparsable value.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);
std::string get_config_value(const RunConfig& cfg, std::string_view key);

/// Applies the lines of `text` on top of the defaults and validates.
/// Errors carry "<source>:<line>:".
RunConfig parse_config(std::string_view text, std::string_view source = "config");
RunConfig load_config(const std::filesystem::path& path);

/// One `key=value` line per key; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& cfg);

}  // namespace mdg
