#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"
#include "mdg/error.hpp"

namespace mdg::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select_kernels() {
  if (const char* env = std::getenv("MDG_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return scalar_kernels();
  }
  if (const KernelTable* t = detail::avx2_table(); t != nullptr && cpu_has_avx2()) return *t;
  // AArch64 always has Advanced SIMD.
  if (const KernelTable* t = detail::neon_table(); t != nullptr) return *t;
  return scalar_kernels();
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch,
                "operands have lengths " + std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* t = detail::avx2_table(); t != nullptr && cpu_has_avx2()) out.push_back(t);
  if (const KernelTable* t = detail::neon_table(); t != nullptr) out.push_back(t);
  return out;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  return active_kernels().l1_distance(a.data(), b.data(), a.size());
}

double squared_l2(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  return active_kernels().squared_l2(a.data(), b.data(), a.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  return active_kernels().dot(a.data(), b.data(), a.size());
}

double sum_squares(std::span<const double> x) {
  return active_kernels().sum_squares(x.data(), x.size());
}

void norm_squared(std::span<const std::complex<double>> in, std::span<double> out) {
  require_same_size(in.size(), out.size());
  active_kernels().norm_squared(in.data(), out.data(), in.size());
}

void scale_complex(std::span<const std::complex<double>> in, std::span<const double> w,
                   std::span<std::complex<double>> out) {
  require_same_size(in.size(), w.size());
  require_same_size(in.size(), out.size());
  active_kernels().scale_complex(in.data(), w.data(), out.data(), in.size());
}

}  // namespace mdg::simd

namespace mdg::simd {

double nearest_squared_2d(double px, double py, std::span<const double> xs,
                          std::span<const double> ys) {
  require_same_size(xs.size(), ys.size());
  if (xs.empty()) throw Error(ErrorCode::kEmptySet, "nearest point of an empty set");
  return active_kernels().nearest_squared_2d(px, py, xs.data(), ys.data(), xs.size());
}

}  // namespace mdg::simd
