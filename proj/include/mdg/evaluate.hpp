#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mdg/dataset.hpp"

namespace mdg {

/// Counts with rows = true label, columns = predicted label.
struct ConfusionMatrix {
  std::vector<int> labels;
  std::vector<std::size_t> counts;  // C x C, row-major

  explicit ConfusionMatrix(std::vector<int> labels);
  std::size_t classes() const { return labels.size(); }
  void add(int truth, int predicted);
  std::size_t total() const;
  double accuracy() const;
  /// Rows scaled to sum to one; empty rows stay zero.
  std::vector<double> row_normalized() const;
};

struct EvalReport {
  std::vector<int> labels;
  std::vector<double> mean_confusion;  // C x C mean of per-trial row-normalized matrices
  std::vector<std::size_t> total_counts;
  double mean_accuracy = 0.0;
  std::vector<double> trial_accuracy;
  std::size_t n_trials = 0;
  std::uint64_t seed = 0;

  bool operator==(const EvalReport&) const = default;
};

/// A trainable classifier over a dataset's samples, addressed by index.
/// fit_predict must be safe to call concurrently once prepare has run.
class Pipeline {
 public:
  virtual ~Pipeline() = default;
  virtual std::string name() const = 0;
  /// One-time, split-independent work (for example a distance cache).
  virtual void prepare(const LabeledDataset& /*data*/) {}
  virtual std::vector<int> fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                                       std::span<const std::size_t> test) const = 0;
};

struct Split {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

/// Per-class shuffle; round(train_frac * n_c) training samples per class,
/// clamped to [1, n_c - 1].
Split stratified_split(const LabeledDataset& data, double train_frac, std::uint64_t trial_seed);

/// Stream seed of one trial, a pure function of (master seed, trial index).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

/// Monte Carlo evaluation. Results are independent of the number of worker
/// threads (0 picks the hardware concurrency). Throws ClassTooSmall when a
/// class has fewer than two samples or only one class exists.
EvalReport evaluate(const LabeledDataset& data, Pipeline& pipeline, double train_frac,
                    std::size_t n_trials, std::uint64_t seed, std::size_t threads = 0);

}  // namespace mdg
