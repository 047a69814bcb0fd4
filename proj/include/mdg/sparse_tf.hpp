#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdg/distance.hpp"
#include "mdg/signal.hpp"

namespace mdg {

struct GaborGridConfig {
  std::size_t time_step = 1024;  // samples between atom centres
  double freq_step_hz = 25.0;
  double scale_samples = 512.0;  // Gaussian standard deviation
};

struct AtomPosition {
  std::size_t t0_sample = 0;
  double t0_s = 0.0;
  double f0_hz = 0.0;
  double scale_samples = 0.0;
};

/// Gaussian-windowed Fourier atoms
///   g(n) = exp(-(n - t0)^2 / (2 s^2)) exp(j 2 pi f0 n / fs) / norm
/// on a regular grid t0 = 0, time_step, ... < segment_len and
/// f0 = -fs/2, -fs/2 + freq_step, ... < fs/2. Atoms are generated on demand;
/// only one normalized window per time position is stored.
class GaborDictionary {
 public:
  std::size_t size() const { return t0_.size() * n_freq_; }
  std::size_t segment_len() const { return segment_len_; }
  double sample_rate_hz() const { return fs_; }
  std::size_t time_positions() const { return t0_.size(); }
  std::size_t freq_positions() const { return n_freq_; }
  const GaborGridConfig& grid() const { return grid_; }

  AtomPosition position(std::size_t atom) const;
  std::vector<Complex> atom(std::size_t index) const;

  /// out[i] = <x, g_i> = sum_n x(n) conj(g_i(n)) for every atom.
  void correlate(std::span<const Complex> x, std::span<Complex> out) const;

  friend GaborDictionary build_dictionary(std::size_t segment_len, double sample_rate_hz,
                                          const GaborGridConfig& cfg);

 private:
  std::size_t segment_len_ = 0;
  double fs_ = 0.0;
  GaborGridConfig grid_;
  std::size_t n_freq_ = 0;
  std::vector<std::size_t> t0_;
  std::vector<std::vector<double>> windows_;  // unit-norm Gaussian per time position
};

/// Throws BadConfig (segment shorter than 64 samples, frequency step not
/// dividing fs) or GridTooLarge (more than 10^6 atoms).
GaborDictionary build_dictionary(std::size_t segment_len, double sample_rate_hz,
                                 const GaborGridConfig& cfg = {});

struct TFPoint {
  double t_s = 0.0;
  double f_hz = 0.0;
  double amplitude = 0.0;
};

/// P time-frequency atoms sorted by time (then frequency).
struct TFTrajectory {
  std::vector<TFPoint> points;
  std::size_t sparsity() const { return points.size(); }
};

struct OmpResult {
  TFTrajectory trajectory;
  std::vector<std::size_t> atoms;          // in selection order
  std::vector<Complex> coefficients;       // least-squares weights, selection order
  std::vector<double> residual_norms;      // before the first pick, then after each
  bool degenerate = false;                 // zero input signal
};

/// Orthogonal matching pursuit with P picks and a least-squares re-fit after
/// each. Throws BadSparsity (P < 1 or P > atom count) and ShapeMismatch
/// (signal length differs from the dictionary's).
OmpResult omp(const IQSignal& signal, const GaborDictionary& dict, std::size_t sparsity);

/// Sum of coefficient-weighted atoms.
std::vector<Complex> reconstruct(const GaborDictionary& dict, std::span<const std::size_t> atoms,
                                 std::span<const Complex> coefficients);

/// Scales used to put trajectories on the unit (time, frequency) plane.
struct TrajectoryAxes {
  double segment_s = 1.0;
  double nyquist_hz = kDefaultSampleRateHz / 2.0;
};

std::vector<Point2> normalized_points(const TFTrajectory& traj, const TrajectoryAxes& axes);

/// Flattened [t1, f1, a1, ..., tP, fP, aP].
std::vector<double> flatten(const TFTrajectory& traj);
TFTrajectory trajectory_from_features(std::span<const double> features);

struct ClassTrajectory {
  int label = 0;
  std::vector<Point2> centroids;  // normalized, sorted by time
};

/// Pools the normalized points of a class and clusters them into P
/// centroids, P being the sparsity of the first trajectory.
ClassTrajectory central_trajectory(std::span<const TFTrajectory> trajectories, int label,
                                   const TrajectoryAxes& axes, std::uint64_t seed);

/// Class whose central trajectory is MHD-closest; ties go to the smaller label.
int sparse_classify(const TFTrajectory& query, std::span<const ClassTrajectory> classes,
                    const TrajectoryAxes& axes);

}  // namespace mdg
