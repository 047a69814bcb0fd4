#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace mdg {

/// Manhattan distance. Throws LengthMismatch.
double dist_l1(std::span<const double> a, std::span<const double> b);

/// Euclidean distance. Throws LengthMismatch.
double dist_l2(std::span<const double> a, std::span<const double> b);

/// 1-D earth mover's distance summed over `halves` equal blocks of the
/// vectors. Each block's magnitudes are normalized to unit mass (an all-zero
/// block contributes nothing); per block the cost is sum_i |CDF_a(i) - CDF_b(i)|.
double dist_emd(std::span<const double> a, std::span<const double> b, std::size_t halves = 2);

/// Point in the normalized (time, frequency) plane.
struct Point2 {
  double t = 0.0;
  double f = 0.0;
  bool operator==(const Point2&) const = default;
};

/// Modified Hausdorff distance max(d(A,B), d(B,A)) with d the mean
/// nearest-neighbour Euclidean distance. Throws EmptySet.
double dist_mhd(std::span<const Point2> a, std::span<const Point2> b);

/// Point set of an envelope feature [e_U, e_L]: (i / (n - 1), e(i) / nyquist)
/// for both halves.
std::vector<Point2> envelope_points(std::span<const double> feature, double nyquist_hz);

enum class Metric { kL1, kL2, kEmd, kMhd };

std::string_view to_string(Metric m);
/// Accepts L1, L2, EMD, MHD (case-insensitive). Throws ConfigError.
Metric parse_metric(std::string_view name);

/// A metric bound to the context it needs to compare envelope features.
struct FeatureDistance {
  Metric metric = Metric::kL1;
  double nyquist_hz = 6400.0;

  double operator()(std::span<const double> a, std::span<const double> b) const;
};

}  // namespace mdg
