#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <span>

namespace mdg::detail {

/// Owning wrapper around an in-place-free FFTW plan and its buffers.
/// Planning is serialized internally; execution of distinct plans is
/// thread-safe.
class FftPlan {
 public:
  enum class Direction { kForward, kBackward };

  FftPlan(std::size_t n, Direction dir = Direction::kForward);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::span<std::complex<double>> input() noexcept { return {in_, n_}; }
  std::span<const std::complex<double>> output() const noexcept { return {out_, n_}; }
  void execute() noexcept;

 private:
  std::size_t n_;
  std::complex<double>* in_ = nullptr;
  std::complex<double>* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace mdg::detail
