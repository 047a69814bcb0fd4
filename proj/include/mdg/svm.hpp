#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mdg {

struct SvmConfig {
  double lambda = 1e-3;
  std::size_t epochs = 200;
  std::uint64_t seed = 42;
};

/// One-vs-rest linear SVM; class c scores w_c . x + b_c.
struct SvmModel {
  std::vector<int> classes;  // ascending
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  // All training vectors were identical; every score ties.
  bool degenerate = false;
};

/// Hinge-loss subgradient descent with a decaying step and a fixed,
/// seed-driven visiting order. Throws SingleClass with fewer than two labels.
SvmModel svm_train(std::span<const std::vector<double>> x, std::span<const int> y, const SvmConfig& cfg = {});

/// Highest score wins; ties go to the smallest label.
int svm_predict(const SvmModel& model, std::span<const double> x);

/// Per-dimension z-scoring fitted on training rows. Zero-variance
/// dimensions keep unit scale.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(std::span<const std::vector<double>> rows);
  std::vector<double> apply(std::span<const double> x) const;
};

}  // namespace mdg
