#include "mdg/distance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mdg/error.hpp"
#include "mdg/simd.hpp"

namespace mdg {
namespace {

void require_equal(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch,
                "vectors have lengths " + std::to_string(a) + " and " + std::to_string(b));
  }
}

// Mean nearest-neighbour distance from each point of `from` to `to`.
double directed_mhd(std::span<const Point2> from, const std::vector<double>& tx,
                    const std::vector<double>& tf) {
  const auto& k = simd::active_kernels();
  double sum = 0.0;
  for (const Point2& p : from) sum += std::sqrt(k.nearest_squared_2d(p.t, p.f, tx.data(), tf.data(), tx.size()));
  return sum / static_cast<double>(from.size());
}

}  // namespace

double dist_l1(std::span<const double> a, std::span<const double> b) {
  require_equal(a.size(), b.size());
  return simd::l1_distance(a, b);
}

double dist_l2(std::span<const double> a, std::span<const double> b) {
  require_equal(a.size(), b.size());
  return std::sqrt(simd::squared_l2(a, b));
}

double dist_emd(std::span<const double> a, std::span<const double> b, std::size_t halves) {
  require_equal(a.size(), b.size());
  if (halves == 0 || a.size() % halves != 0) {
    throw Error(ErrorCode::kLengthMismatch, "vector length is not divisible into equal blocks");
  }
  const std::size_t block = a.size() / halves;
  double total = 0.0;
  for (std::size_t h = 0; h < halves; ++h) {
    const auto pa = a.subspan(h * block, block);
    const auto pb = b.subspan(h * block, block);
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < block; ++i) {
      ma += std::abs(pa[i]);
      mb += std::abs(pb[i]);
    }
    if (ma == 0.0 || mb == 0.0) continue;  // an all-zero block contributes nothing
    const double sa = 1.0 / ma;
    const double sb = 1.0 / mb;
    double ca = 0.0;
    double cb = 0.0;
    for (std::size_t i = 0; i < block; ++i) {
      ca += std::abs(pa[i]) * sa;
      cb += std::abs(pb[i]) * sb;
      total += std::abs(ca - cb);
    }
  }
  return total;
}

double dist_mhd(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptySet, "MHD of an empty point set");
  std::vector<double> ax(a.size()), af(a.size()), bx(b.size()), bf(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ax[i] = a[i].t;
    af[i] = a[i].f;
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    bx[i] = b[i].t;
    bf[i] = b[i].f;
  }
  return std::max(directed_mhd(a, bx, bf), directed_mhd(b, ax, af));
}

std::vector<Point2> envelope_points(std::span<const double> feature, double nyquist_hz) {
  if (feature.size() < 4 || feature.size() % 2 != 0) {
    throw Error(ErrorCode::kBadLength, "envelope feature must hold two halves of at least 2 points");
  }
  const std::size_t n = feature.size() / 2;
  const double tscale = 1.0 / static_cast<double>(n - 1);
  std::vector<Point2> pts(feature.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * tscale;
    pts[i] = {t, feature[i] / nyquist_hz};
    pts[n + i] = {t, feature[n + i] / nyquist_hz};
  }
  return pts;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kL1: return "L1";
    case Metric::kL2: return "L2";
    case Metric::kEmd: return "EMD";
    case Metric::kMhd: return "MHD";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "L1") return Metric::kL1;
  if (up == "L2") return Metric::kL2;
  if (up == "EMD") return Metric::kEmd;
  if (up == "MHD") return Metric::kMhd;
  throw Error(ErrorCode::kConfigError, "unknown metric '" + std::string(name) + "'");
}

double FeatureDistance::operator()(std::span<const double> a, std::span<const double> b) const {
  switch (metric) {
    case Metric::kL1: return dist_l1(a, b);
    case Metric::kL2: return dist_l2(a, b);
    case Metric::kEmd: return dist_emd(a, b);
    case Metric::kMhd: {
      require_equal(a.size(), b.size());
      const auto pa = envelope_points(a, nyquist_hz);
      const auto pb = envelope_points(b, nyquist_hz);
      return dist_mhd(pa, pb);
    }
  }
  return 0.0;
}

}  // namespace mdg
