#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdg/dataset.hpp"
#include "mdg/empirical.hpp"
#include "mdg/envelope.hpp"
#include "mdg/signal.hpp"
#include "mdg/sparse_tf.hpp"

namespace mdg {

/// Accepts envelope, empirical, pca and sparse. Throws ConfigError.
FeatureKind parse_feature_kind(std::string_view name);

struct FeatureSettings {
  StftConfig stft;
  EnvelopeConfig envelope;
  std::size_t envelope_n_out = kDefaultEnvelopeLength;
  // Divide envelope values by fs/2.
  bool envelope_normalize = false;
  double onset_fraction = kDefaultOnsetFraction;
  GaborGridConfig gabor;
  std::size_t sparsity = 10;
};

std::vector<double> envelope_row(const IQSignal& signal, const FeatureSettings& s);
EmpiricalFeatures empirical_of(const IQSignal& signal, const FeatureSettings& s);
GrayImage image_of(const IQSignal& signal, const FeatureSettings& s);

struct LabeledSignal {
  const IQSignal* signal = nullptr;
  int label = 0;
  std::string source_id;
};

/// One row per signal, in input order. Empirical datasets carry the three
/// features z-scored over the whole set followed by the raw columns; the
/// classifiers re-standardize on each training split from the raw ones.
/// Work is spread over `threads` workers (0 = hardware concurrency) without
/// affecting the result.
LabeledDataset extract_features(std::span<const LabeledSignal> signals, FeatureKind kind,
                                const FeatureSettings& s, std::size_t threads = 0);

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace mdg
