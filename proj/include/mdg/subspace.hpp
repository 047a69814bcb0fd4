#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "mdg/signal.hpp"

namespace mdg {

/// Column-stacked vectorized images with one label per column.
struct ImageStack {
  Eigen::MatrixXd X;  // ambient_dim x M
  std::vector<int> labels;

  std::size_t size() const { return static_cast<std::size_t>(X.cols()); }
  std::size_t ambient_dim() const { return static_cast<std::size_t>(X.rows()); }

  /// Stacks the vectorized images; all must share one length.
  static ImageStack from_images(std::span<const GrayImage> images, std::vector<int> labels);
};

/// d-dimensional principal subspace of an image set.
struct SubspaceModel {
  Eigen::MatrixXd basis;  // ambient_dim x d, orthonormal columns
  Eigen::VectorXd mean;
  std::vector<double> eigenvalues;  // descending, sample-covariance scaling

  std::size_t d() const { return static_cast<std::size_t>(basis.cols()); }
};

/// Cosines of the principal angles between two subspaces, descending.
struct CanonicalResult {
  std::vector<double> lambdas;
  double min_angle_cos = 0.0;  // lambdas.front()
};

/// Top-d principal directions of the mean-centred columns, computed from the
/// M x M Gram matrix. Throws BadDim when d is out of [1, min(M, dim)] and
/// DegenerateRank when the centred stack has rank below d.
SubspaceModel pca_basis(const ImageStack& stack, std::size_t d);
SubspaceModel pca_basis(const Eigen::MatrixXd& X, std::size_t d);

/// Singular values of A^T B clamped to [0, 1]. Throws DimMismatch.
CanonicalResult canonical_coeffs(const SubspaceModel& a, const SubspaceModel& b);

/// Symmetric matrix of largest canonical correlations, unit diagonal.
Eigen::MatrixXd similarity_matrix(std::span<const SubspaceModel> models);

/// Connected components of the graph with an edge wherever sim(i, j) >= tau
/// (upper triangle, i < j). Members ascend; groups are ordered by their
/// smallest member.
std::vector<std::vector<std::size_t>> group_classes(const Eigen::MatrixXd& sim, double tau);

/// Global PCA projection plus 1-nearest-neighbour (L2) in the projected space.
struct PcaClassifierModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd basis;   // ambient_dim x d
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> coords;  // M x d
  std::vector<int> labels;
};

PcaClassifierModel pca_train(const ImageStack& train, std::size_t d);
int pca_predict(const PcaClassifierModel& model, std::span<const double> image);
int pca_predict(const PcaClassifierModel& model, const GrayImage& image);

}  // namespace mdg
