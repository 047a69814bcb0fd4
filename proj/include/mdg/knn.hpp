#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mdg/dataset.hpp"
#include "mdg/distance.hpp"

namespace mdg {

struct KnnConfig {
  std::size_t k = 1;
  Metric metric = Metric::kL1;
  // Frequency normalization used when MHD turns envelopes into point sets.
  double nyquist_hz = 6400.0;
};

struct Neighbor {
  double distance = 0.0;
  std::size_t order = 0;  // position in the training set
  int label = 0;
};

/// Majority vote over the k nearest candidates. Distance ties go to the
/// earlier training sample; vote ties to the smaller summed distance, then
/// the smaller label.
int knn_vote(std::vector<Neighbor> candidates, std::size_t k);

/// Throws EmptyTraining, or BadConfig when k is 0 or exceeds the training size.
int knn_classify(const LabeledDataset& train, std::span<const double> query, const KnnConfig& cfg);

}  // namespace mdg
