#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "mdg/config.hpp"
#include "mdg/dataset.hpp"
#include "mdg/evaluate.hpp"
#include "mdg/features.hpp"
#include "mdg/synth.hpp"

namespace mdg {

namespace fs = std::filesystem;

inline constexpr const char* kManifestFile = "manifest.csv";
inline constexpr const char* kEffectiveConfigFile = "effective_config.txt";

/// Recordings listed in a directory's manifest. A recording longer than
/// segment.window_s is cut by segment_gesture into several samples sharing
/// its label (ids "<file>#<k>").
struct SignalSet {
  std::vector<IQSignal> signals;
  std::vector<int> labels;
  std::vector<std::string> ids;

  std::vector<LabeledSignal> view() const;
};

SignalSet load_signal_set(const fs::path& dir, const RunConfig& cfg);

/// Classifier for a dataset kind under cfg.classifier.
std::unique_ptr<Pipeline> make_pipeline(FeatureKind kind, const RunConfig& cfg);

/// Runs cfg.trials Monte Carlo splits of `data`.
EvalReport run_eval(const LabeledDataset& data, const RunConfig& cfg);

/// Every command writes effective_config.txt into its output directory.

/// Synthesizes the dataset: one binary I/Q file (+ sidecar) per segment and
/// manifest.csv.
std::vector<SynthRecord> cmd_synth(const RunConfig& cfg, const fs::path& out_dir);

/// spectrogram.csv (+ axes) and spectrogram.pgm of one recording.
Spectrogram cmd_spectrogram(const fs::path& input, const RunConfig& cfg, const fs::path& out_dir);

/// features.csv for every recording of a manifest directory.
LabeledDataset cmd_features(const fs::path& input_dir, FeatureKind kind, const RunConfig& cfg,
                            const fs::path& out_dir);

/// confusion.csv, counts.csv, trials.csv and summary.txt of a dataset CSV.
EvalReport cmd_eval(const fs::path& dataset_csv, const RunConfig& cfg, const fs::path& out_dir);

struct GroupResult {
  std::vector<int> labels;
  Eigen::MatrixXd similarity;
  std::vector<std::vector<std::size_t>> groups;  // indices into labels
};

/// Per-label image subspaces (subspace.d) from an image dataset, their
/// canonical-correlation similarity and the grouping at subspace.tau.
GroupResult group_images(const LabeledDataset& images, const RunConfig& cfg);

/// similarity.csv and partition.txt (one group of labels per line).
GroupResult cmd_group(const fs::path& dataset_csv, const RunConfig& cfg, const fs::path& out_dir);

}  // namespace mdg
