#include "mdg/dataset.hpp"

#include <algorithm>
#include <set>

#include "mdg/error.hpp"

namespace mdg {

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kEnvelope: return "envelope";
    case FeatureKind::kEmpirical: return "empirical";
    case FeatureKind::kImage: return "pca";
    case FeatureKind::kTrajectory: return "sparse";
  }
  return "unknown";
}

std::vector<int> LabeledDataset::labels() const {
  std::set<int> s;
  for (const Sample& x : samples) s.insert(x.label);
  return {s.begin(), s.end()};
}

void LabeledDataset::validate() const {
  for (const Sample& x : samples) {
    if (x.features.size() != columns.size()) {
      throw Error(ErrorCode::kShapeMismatch, "sample '" + x.source_id + "' has " +
                                                 std::to_string(x.features.size()) + " features, expected " +
                                                 std::to_string(columns.size()));
    }
  }
}

}  // namespace mdg
