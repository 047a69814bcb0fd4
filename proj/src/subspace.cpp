#include "mdg/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mdg/error.hpp"
#include "mdg/simd.hpp"

namespace mdg {

ImageStack ImageStack::from_images(std::span<const GrayImage> images, std::vector<int> labels) {
  if (images.empty() || labels.size() != images.size()) {
    throw Error(ErrorCode::kShapeMismatch, "image stack needs one label per image");
  }
  ImageStack s;
  s.X.resize(static_cast<Eigen::Index>(GrayImage::kPixels), static_cast<Eigen::Index>(images.size()));
  for (std::size_t j = 0; j < images.size(); ++j) {
    s.X.col(static_cast<Eigen::Index>(j)) =
        Eigen::Map<const Eigen::VectorXd>(images[j].pixels.data(), static_cast<Eigen::Index>(GrayImage::kPixels));
  }
  s.labels = std::move(labels);
  return s;
}

SubspaceModel pca_basis(const ImageStack& stack, std::size_t d) { return pca_basis(stack.X, d); }

SubspaceModel pca_basis(const Eigen::MatrixXd& X, std::size_t d) {
  const auto dim = static_cast<std::size_t>(X.rows());
  const auto m = static_cast<std::size_t>(X.cols());
  if (m == 0 || dim == 0) throw Error(ErrorCode::kBadDim, "empty image stack");
  if (d < 1 || d > std::min(m, dim)) {
    throw Error(ErrorCode::kBadDim, "subspace dimension " + std::to_string(d) + " outside [1, " +
                                        std::to_string(std::min(m, dim)) + "]");
  }
  SubspaceModel model;
  model.mean = X.rowwise().mean();
  const Eigen::MatrixXd centered = X.colwise() - model.mean;

  // M x M Gram problem: eigenvectors v of Xc^T Xc give left singular vectors Xc v / sqrt(mu).
  const Eigen::MatrixXd gram = centered.transpose() * centered;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& mu = eig.eigenvalues();  // ascending
  const double top = mu(mu.size() - 1);
  // Floor on the stack's own scale so rounding residue of a constant stack
  // does not count as variance.
  const double tol = std::max(std::max(top, 0.0) * 1e-10, X.squaredNorm() * 1e-20) * static_cast<double>(m);
  const auto di = static_cast<Eigen::Index>(d);
  if (!(top > 0.0) || !(mu(mu.size() - di) > tol)) {
    throw Error(ErrorCode::kDegenerateRank, "centred stack has rank below " + std::to_string(d));
  }

  Eigen::MatrixXd u(static_cast<Eigen::Index>(dim), di);
  model.eigenvalues.resize(d);
  const double denom = m > 1 ? static_cast<double>(m - 1) : 1.0;
  for (Eigen::Index i = 0; i < di; ++i) {
    const Eigen::Index src = mu.size() - 1 - i;
    u.col(i) = centered * eig.eigenvectors().col(src) / std::sqrt(mu(src));
    model.eigenvalues[static_cast<std::size_t>(i)] = mu(src) / denom;
  }
  // Clean up the orthonormality lost to rounding in small eigenvalues,
  // keeping each column's orientation.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(u.rows(), di);
  for (Eigen::Index i = 0; i < di; ++i) {
    if (q.col(i).dot(u.col(i)) < 0.0) q.col(i) *= -1.0;
  }
  model.basis = std::move(q);
  return model;
}

CanonicalResult canonical_coeffs(const SubspaceModel& a, const SubspaceModel& b) {
  if (a.d() != b.d() || a.basis.rows() != b.basis.rows()) {
    throw Error(ErrorCode::kDimMismatch, "subspaces differ in dimension or ambient size");
  }
  const Eigen::MatrixXd cross = a.basis.transpose() * b.basis;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross);
  CanonicalResult r;
  const Eigen::VectorXd& s = svd.singularValues();
  r.lambdas.resize(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    r.lambdas[static_cast<std::size_t>(i)] = std::clamp(s(i), 0.0, 1.0);
  }
  r.min_angle_cos = r.lambdas.empty() ? 0.0 : r.lambdas.front();
  return r;
}

Eigen::MatrixXd similarity_matrix(std::span<const SubspaceModel> models) {
  if (models.empty()) throw Error(ErrorCode::kBadDim, "similarity matrix needs at least one model");
  const auto n = static_cast<Eigen::Index>(models.size());
  Eigen::MatrixXd sim = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double c = canonical_coeffs(models[static_cast<std::size_t>(i)],
                                        models[static_cast<std::size_t>(j)]).min_angle_cos;
      sim(i, j) = c;
      sim(j, i) = c;
    }
  }
  return sim;
}

std::vector<std::vector<std::size_t>> group_classes(const Eigen::MatrixXd& sim, double tau) {
  const auto n = static_cast<std::size_t>(sim.rows());
  if (sim.cols() != sim.rows()) throw Error(ErrorCode::kShapeMismatch, "similarity matrix must be square");

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sim(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) >= tau) {
        const std::size_t ri = find(i);
        const std::size_t rj = find(j);
        // Root at the smaller id so the root is the component's smallest member.
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

PcaClassifierModel pca_train(const ImageStack& train, std::size_t d) {
  if (train.size() == 0) throw Error(ErrorCode::kEmptyTraining, "no training images");
  if (train.labels.size() != train.size()) {
    throw Error(ErrorCode::kShapeMismatch, "one label per training image required");
  }
  const SubspaceModel sub = pca_basis(train.X, d);
  PcaClassifierModel model;
  model.mean = sub.mean;
  model.basis = sub.basis;
  model.coords = (train.X.colwise() - sub.mean).transpose() * sub.basis;
  model.labels = train.labels;
  return model;
}

int pca_predict(const PcaClassifierModel& model, std::span<const double> image) {
  if (static_cast<Eigen::Index>(image.size()) != model.basis.rows()) {
    throw Error(ErrorCode::kDimMismatch, "query length differs from the training images");
  }
  const Eigen::Map<const Eigen::VectorXd> x(image.data(), static_cast<Eigen::Index>(image.size()));
  const Eigen::VectorXd q = model.basis.transpose() * (x - model.mean);
  const auto d = static_cast<std::size_t>(q.size());
  const std::span<const double> qs(q.data(), d);
  double best = std::numeric_limits<double>::infinity();
  int label = model.labels.front();
  for (Eigen::Index i = 0; i < model.coords.rows(); ++i) {
    const double dist = simd::squared_l2(std::span<const double>(model.coords.row(i).data(), d), qs);
    if (dist < best) {
      best = dist;
      label = model.labels[static_cast<std::size_t>(i)];
    }
  }
  return label;
}

int pca_predict(const PcaClassifierModel& model, const GrayImage& image) {
  return pca_predict(model, image.vectorized());
}

}  // namespace mdg
