#include "mdg/knn.hpp"

#include <algorithm>
#include <map>

#include "mdg/error.hpp"

namespace mdg {

int knn_vote(std::vector<Neighbor> candidates, std::size_t k) {
  if (candidates.empty()) throw Error(ErrorCode::kEmptyTraining, "no neighbours to vote");
  if (k == 0 || k > candidates.size()) throw Error(ErrorCode::kBadConfig, "k out of range");
  const auto closer = [](const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.order < b.order);
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                    candidates.end(), closer);

  struct Tally {
    std::size_t votes = 0;
    double distance = 0.0;
  };
  std::map<int, Tally> tally;  // ascending label keeps the last tie-break implicit
  for (std::size_t i = 0; i < k; ++i) {
    Tally& t = tally[candidates[i].label];
    ++t.votes;
    t.distance += candidates[i].distance;
  }
  auto best = tally.begin();
  for (auto it = std::next(tally.begin()); it != tally.end(); ++it) {
    const Tally& a = it->second;
    const Tally& b = best->second;
    if (a.votes > b.votes || (a.votes == b.votes && a.distance < b.distance)) best = it;
  }
  return best->first;
}

int knn_classify(const LabeledDataset& train, std::span<const double> query, const KnnConfig& cfg) {
  if (train.samples.empty()) throw Error(ErrorCode::kEmptyTraining, "training set is empty");
  const FeatureDistance dist{cfg.metric, cfg.nyquist_hz};
  std::vector<Neighbor> cand;
  cand.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    cand.push_back({dist(train.samples[i].features, query), i, train.samples[i].label});
  }
  return knn_vote(std::move(cand), cfg.k);
}

}  // namespace mdg
