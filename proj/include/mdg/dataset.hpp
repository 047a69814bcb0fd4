#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mdg {

/// What the feature columns of a dataset hold.
enum class FeatureKind {
  kEnvelope,    // [e_U, e_L] resampled envelopes, Hz
  kEmpirical,   // standardized T, R, B_w followed by raw empirical columns
  kImage,       // 10000 gray-image pixels, projected by PCA at training time
  kTrajectory,  // t1, f1, a1, ..., tP, fP, aP
};

std::string_view to_string(FeatureKind kind);

struct Sample {
  std::vector<double> features;
  int label = 0;
  std::string source_id;
};

struct LabeledDataset {
  FeatureKind kind = FeatureKind::kEnvelope;
  std::vector<std::string> columns;  // feature column names, excluding label/source_id
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
  /// Distinct labels, ascending.
  std::vector<int> labels() const;
  /// Throws ShapeMismatch unless every sample has columns.size() features.
  void validate() const;
};

}  // namespace mdg
