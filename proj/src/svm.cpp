#include "mdg/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "mdg/error.hpp"
#include "mdg/simd.hpp"

namespace mdg {

SvmModel svm_train(std::span<const std::vector<double>> x, std::span<const int> y, const SvmConfig& cfg) {
  if (x.size() != y.size() || x.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "SVM needs one label per training vector");
  }
  const std::set<int> distinct(y.begin(), y.end());
  if (distinct.size() < 2) throw Error(ErrorCode::kSingleClass, "SVM needs at least two classes");
  if (!(cfg.lambda > 0.0) || cfg.epochs == 0) throw Error(ErrorCode::kBadConfig, "bad SVM hyperparameters");
  const std::size_t dim = x.front().size();
  for (const auto& row : x) {
    if (row.size() != dim) throw Error(ErrorCode::kShapeMismatch, "ragged SVM training matrix");
  }

  SvmModel model;
  model.classes.assign(distinct.begin(), distinct.end());
  model.degenerate = std::all_of(x.begin(), x.end(), [&](const auto& row) { return row == x.front(); });

  const std::size_t n = x.size();
  // Step size 1 / (lambda (t + t0)), starting near 0.1.
  const double t0 = 1.0 / (cfg.lambda * 0.1);
  for (int cls : model.classes) {
    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    double t = 0.0;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t i : order) {
        t += 1.0;
        const double eta = 1.0 / (cfg.lambda * (t + t0));
        const double target = y[i] == cls ? 1.0 : -1.0;
        const double margin = target * (simd::dot(w, x[i]) + b);
        const double shrink = 1.0 - eta * cfg.lambda;
        for (double& wj : w) wj *= shrink;
        if (margin < 1.0) {
          for (std::size_t j = 0; j < dim; ++j) w[j] += eta * target * x[i][j];
          b += eta * target;
        }
      }
    }
    model.weights.push_back(std::move(w));
    model.bias.push_back(b);
  }
  return model;
}

int svm_predict(const SvmModel& model, std::span<const double> x) {
  if (model.classes.empty()) throw Error(ErrorCode::kEmptyTraining, "untrained SVM");
  if (model.degenerate) return model.classes.front();
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    const double s = simd::dot(model.weights[c], x) + model.bias[c];
    if (s > best_score) {
      best_score = s;
      best = c;
    }
  }
  return model.classes[best];
}

Standardizer Standardizer::fit(std::span<const std::vector<double>> rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyTraining, "cannot standardize an empty set");
  const std::size_t dim = rows.front().size();
  Standardizer s;
  s.mean.assign(dim, 0.0);
  s.scale.assign(dim, 1.0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < dim; ++j) s.mean[j] += r[j];
  }
  const auto n = static_cast<double>(rows.size());
  for (double& m : s.mean) m /= n;
  if (rows.size() > 1) {
    std::vector<double> var(dim, 0.0);
    for (const auto& r : rows) {
      for (std::size_t j = 0; j < dim; ++j) var[j] += (r[j] - s.mean[j]) * (r[j] - s.mean[j]);
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const double sd = std::sqrt(var[j] / (n - 1.0));
      s.scale[j] = sd > 0.0 ? sd : 1.0;
    }
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> x) const {
  if (x.size() != mean.size()) throw Error(ErrorCode::kLengthMismatch, "standardizer dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / scale[j];
  return out;
}

}  // namespace mdg
