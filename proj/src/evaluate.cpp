#include "mdg/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "mdg/error.hpp"
#include "mdg/rng.hpp"

namespace mdg {

ConfusionMatrix::ConfusionMatrix(std::vector<int> l) : labels(std::move(l)), counts(labels.size() * labels.size(), 0) {}

void ConfusionMatrix::add(int truth, int predicted) {
  const auto pos = [&](int v) {
    const auto it = std::lower_bound(labels.begin(), labels.end(), v);
    if (it == labels.end() || *it != v) {
      throw Error(ErrorCode::kShapeMismatch, "label " + std::to_string(v) + " not in confusion matrix");
    }
    return static_cast<std::size_t>(it - labels.begin());
  };
  ++counts[pos(truth) * labels.size() + pos(predicted)];
}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (std::size_t c : counts) t += c;
  return t;
}

double ConfusionMatrix::accuracy() const {
  const std::size_t t = total();
  if (t == 0) return 0.0;
  std::size_t diag = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) diag += counts[i * labels.size() + i];
  return static_cast<double>(diag) / static_cast<double>(t);
}

std::vector<double> ConfusionMatrix::row_normalized() const {
  const std::size_t c = labels.size();
  std::vector<double> out(c * c, 0.0);
  for (std::size_t i = 0; i < c; ++i) {
    std::size_t row = 0;
    for (std::size_t j = 0; j < c; ++j) row += counts[i * c + j];
    if (row == 0) continue;
    for (std::size_t j = 0; j < c; ++j) {
      out[i * c + j] = static_cast<double>(counts[i * c + j]) / static_cast<double>(row);
    }
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  return derive_seed({master_seed, static_cast<std::uint64_t>(trial)});
}

Split stratified_split(const LabeledDataset& data, double train_frac, std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "train fraction must lie in (0, 1)");
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data.samples[i].label].push_back(i);

  std::mt19937_64 rng(seed);
  Split s;
  for (auto& [label, idx] : by_class) {
    if (idx.size() < 2) {
      throw Error(ErrorCode::kClassTooSmall, "class " + std::to_string(label) + " has fewer than 2 samples");
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n = static_cast<long>(idx.size());
    const long n_train = std::clamp(std::lround(train_frac * static_cast<double>(n)), 1L, n - 1);
    s.train.insert(s.train.end(), idx.begin(), idx.begin() + n_train);
    s.test.insert(s.test.end(), idx.begin() + n_train, idx.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

EvalReport evaluate(const LabeledDataset& data, Pipeline& pipeline, double train_frac,
                    std::size_t n_trials, std::uint64_t seed, std::size_t threads) {
  const std::vector<int> labels = data.labels();
  if (labels.size() < 2) throw Error(ErrorCode::kClassTooSmall, "evaluation needs at least two classes");
  if (n_trials == 0) throw Error(ErrorCode::kBadConfig, "trial count must be positive");
  // Surface ClassTooSmall / BadConfig before any work.
  (void)stratified_split(data, train_frac, trial_seed(seed, 0));

  pipeline.prepare(data);

  std::vector<ConfusionMatrix> per_trial(n_trials, ConfusionMatrix(labels));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < n_trials; t = next++) {
      try {
        const Split split = stratified_split(data, train_frac, trial_seed(seed, t));
        const std::vector<int> pred = pipeline.fit_predict(data, split.train, split.test);
        for (std::size_t i = 0; i < split.test.size(); ++i) {
          per_trial[t].add(data.samples[split.test[i]].label, pred[i]);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_trials;
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, n_trials);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Reduce in trial order so the report does not depend on scheduling.
  const std::size_t c = labels.size();
  EvalReport report;
  report.labels = labels;
  report.mean_confusion.assign(c * c, 0.0);
  report.total_counts.assign(c * c, 0);
  report.n_trials = n_trials;
  report.seed = seed;
  double acc_sum = 0.0;
  for (const ConfusionMatrix& cm : per_trial) {
    const auto norm = cm.row_normalized();
    for (std::size_t i = 0; i < c * c; ++i) {
      report.mean_confusion[i] += norm[i];
      report.total_counts[i] += cm.counts[i];
    }
    report.trial_accuracy.push_back(cm.accuracy());
    acc_sum += cm.accuracy();
  }
  for (double& v : report.mean_confusion) v /= static_cast<double>(n_trials);
  report.mean_accuracy = acc_sum / static_cast<double>(n_trials);
  return report;
}

}  // namespace mdg
