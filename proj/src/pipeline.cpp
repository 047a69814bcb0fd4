#include "mdg/pipeline.hpp"

#include <map>

#include "mdg/error.hpp"
#include "mdg/features.hpp"
#include "mdg/rng.hpp"
#include "mdg/subspace.hpp"

namespace mdg {

std::string KnnPipeline::name() const {
  return "knn-" + std::string(to_string(cfg_.metric)) + "-k" + std::to_string(cfg_.k);
}

void KnnPipeline::prepare(const LabeledDataset& data) {
  data.validate();
  n_ = data.size();
  dist_.assign(n_ * n_, 0.0);
  std::vector<std::vector<Point2>> points;
  if (cfg_.metric == Metric::kMhd) {
    points.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) points[i] = envelope_points(data.samples[i].features, cfg_.nyquist_hz);
  }
  const FeatureDistance dist{cfg_.metric, cfg_.nyquist_hz};
  parallel_for(n_, threads_, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = cfg_.metric == Metric::kMhd
                           ? dist_mhd(points[i], points[j])
                           : dist(data.samples[i].features, data.samples[j].features);
      dist_[i * n_ + j] = d;
    }
  });
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) dist_[i * n_ + j] = dist_[j * n_ + i];
  }
}

std::vector<int> KnnPipeline::fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                                          std::span<const std::size_t> test) const {
  if (n_ != data.size()) throw Error(ErrorCode::kShapeMismatch, "KnnPipeline used before prepare()");
  if (train.empty()) throw Error(ErrorCode::kEmptyTraining, "no training samples");
  std::vector<int> out;
  out.reserve(test.size());
  std::vector<Neighbor> cand(train.size());
  for (std::size_t q : test) {
    for (std::size_t r = 0; r < train.size(); ++r) {
      cand[r] = {dist_[q * n_ + train[r]], r, data.samples[train[r]].label};
    }
    out.push_back(knn_vote(cand, cfg_.k));
  }
  return out;
}

std::string StandardizedKnnPipeline::name() const {
  return "zscore-knn-" + std::string(to_string(cfg_.metric)) + "-k" + std::to_string(cfg_.k);
}

namespace {

std::vector<double> pick(const std::vector<double>& row, std::span<const std::size_t> columns) {
  if (columns.empty()) return row;
  std::vector<double> out;
  out.reserve(columns.size());
  for (std::size_t c : columns) {
    if (c >= row.size()) throw Error(ErrorCode::kShapeMismatch, "feature column out of range");
    out.push_back(row[c]);
  }
  return out;
}

}  // namespace

std::vector<int> StandardizedKnnPipeline::fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                                                      std::span<const std::size_t> test) const {
  std::vector<std::vector<double>> raw;
  for (std::size_t i : train) raw.push_back(pick(data.samples[i].features, columns_));
  const Standardizer z = Standardizer::fit(raw);
  LabeledDataset t;
  t.kind = data.kind;
  for (std::size_t r = 0; r < train.size(); ++r) {
    t.samples.push_back({z.apply(raw[r]), data.samples[train[r]].label, {}});
  }
  t.columns.resize(t.samples.front().features.size());
  std::vector<int> out;
  for (std::size_t q : test) out.push_back(knn_classify(t, z.apply(pick(data.samples[q].features, columns_)), cfg_));
  return out;
}

std::vector<int> SvmPipeline::fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                                          std::span<const std::size_t> test) const {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  for (std::size_t i : train) {
    x.push_back(data.samples[i].features);
    y.push_back(data.samples[i].label);
  }
  const Standardizer z = Standardizer::fit(x);
  for (auto& row : x) row = z.apply(row);
  const SvmModel model = svm_train(x, y, cfg_);
  std::vector<int> out;
  for (std::size_t q : test) out.push_back(svm_predict(model, z.apply(data.samples[q].features)));
  return out;
}

std::string PcaPipeline::name() const { return "pca" + std::to_string(d_) + "-1nn-L2"; }

std::vector<int> PcaPipeline::fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                                          std::span<const std::size_t> test) const {
  if (train.empty()) throw Error(ErrorCode::kEmptyTraining, "no training samples");
  ImageStack stack;
  const auto dim = static_cast<Eigen::Index>(data.samples[train.front()].features.size());
  stack.X.resize(dim, static_cast<Eigen::Index>(train.size()));
  for (std::size_t c = 0; c < train.size(); ++c) {
    const auto& f = data.samples[train[c]].features;
    stack.X.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXd>(f.data(), dim);
    stack.labels.push_back(data.samples[train[c]].label);
  }
  const PcaClassifierModel model = pca_train(stack, d_);
  std::vector<int> out;
  for (std::size_t q : test) out.push_back(pca_predict(model, data.samples[q].features));
  return out;
}

std::vector<int> SparsePipeline::fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                                             std::span<const std::size_t> test) const {
  std::map<int, std::vector<TFTrajectory>> by_class;
  for (std::size_t i : train) {
    by_class[data.samples[i].label].push_back(trajectory_from_features(data.samples[i].features));
  }
  std::vector<ClassTrajectory> classes;
  for (const auto& [label, trajs] : by_class) {
    classes.push_back(central_trajectory(trajs, label, axes_,
                                         derive_seed({seed_, static_cast<std::uint64_t>(label)})));
  }
  std::vector<int> out;
  for (std::size_t q : test) {
    out.push_back(sparse_classify(trajectory_from_features(data.samples[q].features), classes, axes_));
  }
  return out;
}

}  // namespace mdg
