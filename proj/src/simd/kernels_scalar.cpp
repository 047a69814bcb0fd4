#include <cmath>
#include <limits>

#include "kernels_internal.hpp"

namespace mdg::simd {
namespace {

double l1_distance_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double squared_l2_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double sum_squares_scalar(const double* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * x[i];
  return sum;
}

void norm_squared_scalar(const std::complex<double>* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = in[i].real();
    const double im = in[i].imag();
    out[i] = re * re + im * im;
  }
}

void scale_complex_scalar(const std::complex<double>* in, const double* w,
                          std::complex<double>* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = {in[i].real() * w[i], in[i].imag() * w[i]};
}

double nearest_squared_2d_scalar(double px, double py, const double* xs, const double* ys,
                                 std::size_t n) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - px;
    const double dy = ys[i] - py;
    const double d = dx * dx + dy * dy;
    if (d < best) best = d;
  }
  return best;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar,       l1_distance_scalar,  squared_l2_scalar,
                                 dot_scalar,         sum_squares_scalar,  norm_squared_scalar,
                                 scale_complex_scalar, nearest_squared_2d_scalar};
  return table;
}

}  // namespace mdg::simd
