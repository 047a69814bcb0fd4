#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mdg/evaluate.hpp"
#include "mdg/knn.hpp"
#include "mdg/sparse_tf.hpp"
#include "mdg/svm.hpp"

namespace mdg {

/// kNN over fixed-length feature vectors. prepare() caches every pairwise
/// distance so trials only vote.
class KnnPipeline : public Pipeline {
 public:
  explicit KnnPipeline(KnnConfig cfg, std::size_t threads = 0) : cfg_(cfg), threads_(threads) {}
  std::string name() const override;
  void prepare(const LabeledDataset& data) override;
  std::vector<int> fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                               std::span<const std::size_t> test) const override;

 private:
  KnnConfig cfg_;
  std::size_t threads_;
  std::size_t n_ = 0;
  std::vector<double> dist_;  // n x n
};

/// kNN on selected columns z-scored with training-split statistics.
class StandardizedKnnPipeline : public Pipeline {
 public:
  StandardizedKnnPipeline(KnnConfig cfg, std::vector<std::size_t> columns)
      : cfg_(cfg), columns_(std::move(columns)) {}
  std::string name() const override;
  std::vector<int> fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                               std::span<const std::size_t> test) const override;

 private:
  KnnConfig cfg_;
  std::vector<std::size_t> columns_;
};

/// Standardized features into a one-vs-rest linear SVM.
class SvmPipeline : public Pipeline {
 public:
  explicit SvmPipeline(SvmConfig cfg) : cfg_(cfg) {}
  std::string name() const override { return "svm"; }
  std::vector<int> fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                               std::span<const std::size_t> test) const override;

 private:
  SvmConfig cfg_;
};

/// Global PCA on the training images, 1NN-L2 on the projections.
class PcaPipeline : public Pipeline {
 public:
  explicit PcaPipeline(std::size_t d) : d_(d) {}
  std::string name() const override;
  std::vector<int> fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                               std::span<const std::size_t> test) const override;

 private:
  std::size_t d_;
};

/// Central trajectory per class, then MHD to the nearest class.
class SparsePipeline : public Pipeline {
 public:
  SparsePipeline(TrajectoryAxes axes, std::uint64_t seed) : axes_(axes), seed_(seed) {}
  std::string name() const override { return "sparse-mhd"; }
  std::vector<int> fit_predict(const LabeledDataset& data, std::span<const std::size_t> train,
                               std::span<const std::size_t> test) const override;

 private:
  TrajectoryAxes axes_;
  std::uint64_t seed_;
};

}  // namespace mdg
