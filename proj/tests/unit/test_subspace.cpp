#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "helpers.hpp"
#include "fixtures/canonical_table.hpp"
#include "mdg/subspace.hpp"

using namespace mdg;
using test::thrown_code;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return m;
}

SubspaceModel span_of(const Eigen::MatrixXd& cols) {
  SubspaceModel m;
  m.basis = Eigen::HouseholderQR<Eigen::MatrixXd>(cols).householderQ() *
            Eigen::MatrixXd::Identity(cols.rows(), cols.cols());
  m.mean = Eigen::VectorXd::Zero(cols.rows());
  return m;
}

Eigen::MatrixXd random_rotation(Eigen::Index n, std::uint64_t seed) {
  return Eigen::HouseholderQR<Eigen::MatrixXd>(random_matrix(n, n, seed)).householderQ();
}

}  // namespace

TEST_CASE("PCA basis agrees with a direct SVD") {
  const Eigen::MatrixXd X = random_matrix(40, 12, 1);
  const std::size_t d = 5;
  const SubspaceModel m = pca_basis(X, d);
  REQUIRE(m.d() == d);

  const Eigen::VectorXd mean = X.rowwise().mean();
  CHECK((m.mean - mean).norm() < 1e-12);
  const Eigen::MatrixXd C = X.colwise() - mean;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeThinU);
  const Eigen::MatrixXd U = svd.matrixU().leftCols(d);

  CHECK((m.basis.transpose() * m.basis - Eigen::MatrixXd::Identity(d, d)).norm() < 1e-10);
  CHECK((m.basis * m.basis.transpose() - U * U.transpose()).norm() < 1e-9);
  for (std::size_t i = 0; i < d; ++i) {
    const double s = svd.singularValues()(static_cast<Eigen::Index>(i));
    CHECK(m.eigenvalues[i] == doctest::Approx(s * s / 11.0).epsilon(1e-9));
    if (i > 0) CHECK(m.eigenvalues[i] <= m.eigenvalues[i - 1]);
  }
}

TEST_CASE("PCA basis errors") {
  const Eigen::MatrixXd X = random_matrix(10, 6, 2);
  CHECK(thrown_code([&] { pca_basis(X, 0); }) == ErrorCode::kBadDim);
  CHECK(thrown_code([&] { pca_basis(X, 7); }) == ErrorCode::kBadDim);
  // Six copies of one image have a zero-rank centred stack.
  const Eigen::MatrixXd same = X.col(0).replicate(1, 6);
  CHECK(thrown_code([&] { pca_basis(same, 1); }) == ErrorCode::kDegenerateRank);
}

TEST_CASE("canonical coefficients of known subspaces") {
  const Eigen::MatrixXd A = random_matrix(20, 4, 3);
  const SubspaceModel a = span_of(A);
  const CanonicalResult self = canonical_coeffs(a, a);
  REQUIRE(self.lambdas.size() == 4);
  for (double l : self.lambdas) CHECK(l == doctest::Approx(1.0));

  // Same span, different basis.
  const SubspaceModel a2 = span_of(A * random_matrix(4, 4, 4));
  for (double l : canonical_coeffs(a, a2).lambdas) CHECK(l == doctest::Approx(1.0));

  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(6, 2);
  e(0, 0) = e(1, 1) = 1.0;
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(6, 2);
  f(2, 0) = f(3, 1) = 1.0;
  const CanonicalResult orth = canonical_coeffs(span_of(e), span_of(f));
  for (double l : orth.lambdas) CHECK(l == doctest::Approx(0.0));

  for (double theta : {0.1, 0.7, 1.3}) {
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(3, 1), v = Eigen::MatrixXd::Zero(3, 1);
    u(0, 0) = 1.0;
    v(0, 0) = std::cos(theta);
    v(1, 0) = std::sin(theta);
    const CanonicalResult r = canonical_coeffs(span_of(u), span_of(v));
    CHECK(r.min_angle_cos == doctest::Approx(std::cos(theta)));
  }

  CHECK(thrown_code([&] { canonical_coeffs(a, span_of(f)); }) == ErrorCode::kDimMismatch);
  CHECK(thrown_code([&] { canonical_coeffs(a, span_of(A.leftCols(3))); }) == ErrorCode::kDimMismatch);
}

TEST_CASE("canonical coefficients are bounded, symmetric and rotation invariant") {
  const SubspaceModel a = span_of(random_matrix(15, 3, 5)), b = span_of(random_matrix(15, 3, 6));
  const CanonicalResult ab = canonical_coeffs(a, b), ba = canonical_coeffs(b, a);
  REQUIRE(ab.lambdas.size() == ba.lambdas.size());
  for (std::size_t i = 0; i < ab.lambdas.size(); ++i) {
    CHECK(ab.lambdas[i] >= 0.0);
    CHECK(ab.lambdas[i] <= 1.0);
    CHECK(ab.lambdas[i] == doctest::Approx(ba.lambdas[i]));
    if (i > 0) CHECK(ab.lambdas[i] <= ab.lambdas[i - 1]);
  }
  const Eigen::MatrixXd Q = random_rotation(15, 7);
  SubspaceModel qa = a, qb = b;
  qa.basis = Q * a.basis;
  qb.basis = Q * b.basis;
  const CanonicalResult q = canonical_coeffs(qa, qb);
  for (std::size_t i = 0; i < ab.lambdas.size(); ++i) CHECK(q.lambdas[i] == doctest::Approx(ab.lambdas[i]));
}

TEST_CASE("similarity matrix and grouping") {
  // Two pairs of nearby subspaces far from each other.
  const Eigen::MatrixXd P = random_matrix(30, 3, 8), R = random_matrix(30, 3, 9);
  std::vector<SubspaceModel> models{span_of(P), span_of(R), span_of(P + 0.01 * random_matrix(30, 3, 10)),
                                    span_of(R + 0.01 * random_matrix(30, 3, 11))};
  const Eigen::MatrixXd S = similarity_matrix(models);
  CHECK((S - S.transpose()).norm() == 0.0);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(S(i, i) == 1.0);
  CHECK(S(0, 2) > 0.99);
  CHECK(S(1, 3) > 0.99);

  const auto g = group_classes(S, 0.99);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == std::vector<std::size_t>{0, 2});
  CHECK(g[1] == std::vector<std::size_t>{1, 3});

  CHECK(group_classes(S, 1.5).size() == 4);
  CHECK(group_classes(S, 0.0).size() == 1);
}

TEST_CASE("raising tau only splits groups") {
  const Eigen::MatrixXd A = random_matrix(8, 8, 12);
  const Eigen::MatrixXd S = (A.cwiseAbs() + A.cwiseAbs().transpose()) / (2.0 * A.cwiseAbs().maxCoeff());
  std::size_t prev = 0;
  std::vector<std::vector<std::size_t>> coarse;
  for (double tau = 0.0; tau <= 1.0; tau += 0.05) {
    const auto g = group_classes(S, tau);
    CHECK(g.size() >= prev);
    // Each finer group lies inside one coarser group.
    for (const auto& fine : g) {
      bool inside = coarse.empty();
      for (const auto& c : coarse) {
        inside = inside || std::all_of(fine.begin(), fine.end(), [&](std::size_t i) {
                   return std::find(c.begin(), c.end(), i) != c.end();
                 });
      }
      CHECK(inside);
    }
    prev = g.size();
    coarse = g;
  }
}

TEST_CASE("PCA 1-NN classifier") {
  // Two clusters of images around distinct prototypes.
  const Eigen::MatrixXd proto = random_matrix(50, 2, 13);
  Eigen::MatrixXd X(50, 20);
  std::vector<int> labels;
  const Eigen::MatrixXd noise = random_matrix(50, 20, 14);
  for (Eigen::Index j = 0; j < 20; ++j) {
    X.col(j) = proto.col(j % 2) + 0.05 * noise.col(j);
    labels.push_back(static_cast<int>(j % 2) + 3);
  }
  const PcaClassifierModel m = pca_train(ImageStack{X, labels}, 4);
  CHECK(m.basis.cols() == 4);
  CHECK(m.coords.rows() == 20);
  for (Eigen::Index j = 0; j < 20; ++j) {
    const Eigen::VectorXd x = X.col(j);
    CHECK(pca_predict(m, std::span<const double>(x.data(), 50)) == labels[static_cast<std::size_t>(j)]);
  }
  const Eigen::VectorXd probe = proto.col(1) + 0.05 * random_matrix(50, 1, 15);
  CHECK(pca_predict(m, std::span<const double>(probe.data(), 50)) == 4);
  const std::vector<double> short_probe(10, 0.0);
  CHECK(thrown_code([&] { pca_predict(m, short_probe); }).has_value());
}

TEST_CASE("grouping the published similarity table") {
  const Eigen::MatrixXd s = fixture::canonical_table();
  CHECK(s(0, 3) == 0.91);
  CHECK(s(13, 14) == 0.82);
  CHECK(s(14, 13) == 0.82);
  // Components of the >= 0.85 graph, worked out by hand: c-g and c-h join
  // swiping and rotation members, n-o (0.82) stays below the threshold.
  using G = std::vector<std::vector<std::size_t>>;
  CHECK(group_classes(s, 0.85) == G{{0, 3}, {1, 2, 6, 7}, {4, 5}, {8, 9}, {10, 11, 12}, {13}, {14}});
  // The published five classes need n-o joined, which only tau <= 0.82 does,
  // and by then a..h are one component.
  const auto low = group_classes(s, 0.82);
  CHECK(low.front().size() >= 8);
}
