#pragma once

// Data-parallel inner loops shared by the spectrogram, envelope, distance and
// sparse-reconstruction code. Each kernel has a scalar reference version and,
// where the CPU allows, an AVX2 (x86-64) or NEON (AArch64) version. The active
// table is picked once at first use; MDG_SIMD=scalar in the environment forces
// the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace mdg::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  double (*l1_distance)(const double* a, const double* b, std::size_t n);
  double (*squared_l2)(const double* a, const double* b, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  // out[i] = |in[i]|^2
  void (*norm_squared)(const std::complex<double>* in, double* out, std::size_t n);
  // out[i] = in[i] * w[i]
  void (*scale_complex)(const std::complex<double>* in, const double* w,
                        std::complex<double>* out, std::size_t n);
  // min_i (xs[i] - px)^2 + (ys[i] - py)^2 over n >= 1 points
  double (*nearest_squared_2d)(double px, double py, const double* xs, const double* ys,
                               std::size_t n);
};

const KernelTable& scalar_kernels();

/// Every table usable on this CPU, scalar first.
std::vector<const KernelTable*> available_kernels();

/// The table used by the convenience wrappers below.
const KernelTable& active_kernels();

double l1_distance(std::span<const double> a, std::span<const double> b);
double squared_l2(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> x);
void norm_squared(std::span<const std::complex<double>> in, std::span<double> out);
void scale_complex(std::span<const std::complex<double>> in, std::span<const double> w,
                   std::span<std::complex<double>> out);
double nearest_squared_2d(double px, double py, std::span<const double> xs,
                          std::span<const double> ys);

}  // namespace mdg::simd
