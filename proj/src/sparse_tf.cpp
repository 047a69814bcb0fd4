#include "mdg/sparse_tf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "mdg/error.hpp"
#include "mdg/kmeans.hpp"
#include "mdg/simd.hpp"

namespace mdg {

namespace {
constexpr std::size_t kMaxAtoms = 1'000'000;
}

GaborDictionary build_dictionary(std::size_t segment_len, double sample_rate_hz, const GaborGridConfig& cfg) {
  if (segment_len < 64) throw Error(ErrorCode::kBadConfig, "segment must hold at least 64 samples");
  if (!(sample_rate_hz > 0.0) || cfg.time_step == 0 || !(cfg.freq_step_hz > 0.0) || !(cfg.scale_samples > 0.0)) {
    throw Error(ErrorCode::kBadConfig, "dictionary grid parameters must be positive");
  }
  const double steps = sample_rate_hz / cfg.freq_step_hz;
  if (steps < 0.5 || std::abs(steps - std::round(steps)) > 1e-9 * steps) {
    throw Error(ErrorCode::kBadConfig, "frequency step must divide the sample rate");
  }
  const auto n_freq = static_cast<std::size_t>(std::llround(steps));
  const std::size_t n_time = (segment_len + cfg.time_step - 1) / cfg.time_step;
  if (n_time * n_freq > kMaxAtoms) {
    throw Error(ErrorCode::kGridTooLarge, std::to_string(n_time * n_freq) + " atoms requested");
  }

  GaborDictionary d;
  d.segment_len_ = segment_len;
  d.fs_ = sample_rate_hz;
  d.grid_ = cfg;
  d.n_freq_ = n_freq;
  const double two_s2 = 2.0 * cfg.scale_samples * cfg.scale_samples;
  for (std::size_t i = 0; i < n_time; ++i) {
    const std::size_t t0 = i * cfg.time_step;
    std::vector<double> w(segment_len);
    for (std::size_t n = 0; n < segment_len; ++n) {
      const double dt = static_cast<double>(n) - static_cast<double>(t0);
      w[n] = std::exp(-dt * dt / two_s2);
    }
    const double norm = std::sqrt(simd::sum_squares(w));
    for (double& v : w) v /= norm;
    d.t0_.push_back(t0);
    d.windows_.push_back(std::move(w));
  }
  return d;
}

AtomPosition GaborDictionary::position(std::size_t atom) const {
  if (atom >= size()) throw Error(ErrorCode::kShapeMismatch, "atom index out of range");
  const std::size_t ti = atom / n_freq_;
  const std::size_t fi = atom % n_freq_;
  AtomPosition p;
  p.t0_sample = t0_[ti];
  p.t0_s = static_cast<double>(t0_[ti]) / fs_;
  p.f0_hz = -0.5 * fs_ + static_cast<double>(fi) * grid_.freq_step_hz;
  p.scale_samples = grid_.scale_samples;
  return p;
}

std::vector<Complex> GaborDictionary::atom(std::size_t index) const {
  const AtomPosition p = position(index);
  const std::vector<double>& w = windows_[index / n_freq_];
  std::vector<Complex> g(segment_len_);
  const double omega = 2.0 * std::numbers::pi * p.f0_hz / fs_;
  for (std::size_t n = 0; n < segment_len_; ++n) g[n] = w[n] * std::polar(1.0, omega * static_cast<double>(n));
  return g;
}

void GaborDictionary::correlate(std::span<const Complex> x, std::span<Complex> out) const {
  if (x.size() != segment_len_ || out.size() != size()) {
    throw Error(ErrorCode::kShapeMismatch, "correlation buffers do not match the dictionary");
  }
  // f0 = -fs/2 + j fs/n_freq, so exp(-j 2 pi f0 n / fs) = (-1)^n exp(-j 2 pi j n / n_freq):
  // after the sign flip the kernel is n_freq-periodic in n, and folding the
  // windowed signal modulo n_freq leaves one n_freq-point DFT per time position.
  detail::FftPlan plan(n_freq_);
  auto folded = plan.input();
  std::vector<Complex> weighted(segment_len_);
  const auto& k = simd::active_kernels();
  for (std::size_t ti = 0; ti < t0_.size(); ++ti) {
    k.scale_complex(x.data(), windows_[ti].data(), weighted.data(), segment_len_);
    std::fill(folded.begin(), folded.end(), Complex{});
    for (std::size_t n = 0; n < segment_len_; ++n) {
      if (n % 2 == 0) {
        folded[n % n_freq_] += weighted[n];
      } else {
        folded[n % n_freq_] -= weighted[n];
      }
    }
    plan.execute();
    std::copy(plan.output().begin(), plan.output().end(), out.begin() + static_cast<std::ptrdiff_t>(ti * n_freq_));
  }
}

OmpResult omp(const IQSignal& signal, const GaborDictionary& dict, std::size_t sparsity) {
  if (sparsity < 1 || sparsity > dict.size()) {
    throw Error(ErrorCode::kBadSparsity, "sparsity " + std::to_string(sparsity) + " outside [1, " +
                                             std::to_string(dict.size()) + "]");
  }
  if (signal.size() != dict.segment_len()) {
    throw Error(ErrorCode::kShapeMismatch, "signal length " + std::to_string(signal.size()) +
                                               " differs from atom length " + std::to_string(dict.segment_len()));
  }
  const auto n = static_cast<Eigen::Index>(signal.size());
  const Eigen::Map<const Eigen::VectorXcd> s(signal.samples().data(), n);

  OmpResult r;
  Eigen::VectorXcd residual = s;
  r.residual_norms.push_back(residual.norm());
  r.degenerate = !(r.residual_norms.front() > 0.0);

  Eigen::MatrixXcd a(n, 0);
  Eigen::VectorXcd coef;
  std::vector<Complex> corr(dict.size());
  std::vector<bool> taken(dict.size(), false);
  for (std::size_t it = 0; it < sparsity; ++it) {
    dict.correlate(std::span<const Complex>(residual.data(), signal.size()), corr);
    std::size_t best = dict.size();
    double best_mag = -1.0;
    for (std::size_t i = 0; i < corr.size(); ++i) {
      if (taken[i]) continue;
      const double m = std::norm(corr[i]);
      if (m > best_mag) {
        best_mag = m;
        best = i;
      }
    }
    taken[best] = true;
    r.atoms.push_back(best);

    const std::vector<Complex> g = dict.atom(best);
    a.conservativeResize(Eigen::NoChange, a.cols() + 1);
    a.col(a.cols() - 1) = Eigen::Map<const Eigen::VectorXcd>(g.data(), n);
    coef = a.householderQr().solve(s);
    residual = s - a * coef;
    r.residual_norms.push_back(residual.norm());
  }

  r.coefficients.assign(coef.data(), coef.data() + coef.size());
  for (std::size_t i = 0; i < r.atoms.size(); ++i) {
    const AtomPosition p = dict.position(r.atoms[i]);
    r.trajectory.points.push_back({p.t0_s, p.f0_hz, std::abs(r.coefficients[i])});
  }
  std::stable_sort(r.trajectory.points.begin(), r.trajectory.points.end(), [](const TFPoint& x, const TFPoint& y) {
    return x.t_s < y.t_s || (x.t_s == y.t_s && x.f_hz < y.f_hz);
  });
  return r;
}

std::vector<Complex> reconstruct(const GaborDictionary& dict, std::span<const std::size_t> atoms,
                                 std::span<const Complex> coefficients) {
  if (atoms.size() != coefficients.size()) {
    throw Error(ErrorCode::kShapeMismatch, "one coefficient per atom required");
  }
  std::vector<Complex> out(dict.segment_len(), Complex{});
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto g = dict.atom(atoms[i]);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += coefficients[i] * g[n];
  }
  return out;
}

std::vector<Point2> normalized_points(const TFTrajectory& traj, const TrajectoryAxes& axes) {
  std::vector<Point2> pts;
  pts.reserve(traj.points.size());
  for (const TFPoint& p : traj.points) pts.push_back({p.t_s / axes.segment_s, p.f_hz / axes.nyquist_hz});
  return pts;
}

std::vector<double> flatten(const TFTrajectory& traj) {
  std::vector<double> out;
  out.reserve(3 * traj.points.size());
  for (const TFPoint& p : traj.points) {
    out.push_back(p.t_s);
    out.push_back(p.f_hz);
    out.push_back(p.amplitude);
  }
  return out;
}

TFTrajectory trajectory_from_features(std::span<const double> features) {
  if (features.empty() || features.size() % 3 != 0) {
    throw Error(ErrorCode::kBadLength, "trajectory features come in (t, f, a) triples");
  }
  TFTrajectory t;
  for (std::size_t i = 0; i < features.size(); i += 3) {
    t.points.push_back({features[i], features[i + 1], features[i + 2]});
  }
  return t;
}

ClassTrajectory central_trajectory(std::span<const TFTrajectory> trajectories, int label,
                                   const TrajectoryAxes& axes, std::uint64_t seed) {
  if (trajectories.empty()) throw Error(ErrorCode::kTooFewPoints, "no trajectories for class");
  const std::size_t p = trajectories.front().sparsity();
  std::vector<Point2> pool;
  for (const TFTrajectory& t : trajectories) {
    const auto pts = normalized_points(t, axes);
    pool.insert(pool.end(), pts.begin(), pts.end());
  }
  KMeansResult km = kmeans(pool, p, seed);
  std::sort(km.centroids.begin(), km.centroids.end(), [](const Point2& a, const Point2& b) {
    return a.t < b.t || (a.t == b.t && a.f < b.f);
  });
  return {label, std::move(km.centroids)};
}

int sparse_classify(const TFTrajectory& query, std::span<const ClassTrajectory> classes,
                    const TrajectoryAxes& axes) {
  if (classes.empty()) throw Error(ErrorCode::kNoClasses, "no class trajectories");
  const auto q = normalized_points(query, axes);
  int best_label = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const ClassTrajectory& c : classes) {
    const double d = dist_mhd(q, c.centroids);
    if (d < best || (d == best && c.label < best_label)) {
      best = d;
      best_label = c.label;
    }
  }
  return best_label;
}

}  // namespace mdg
