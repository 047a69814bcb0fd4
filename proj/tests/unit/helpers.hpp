#pragma once

#include <cmath>
#include <complex>
#include <filesystem>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mdg/error.hpp"
#include "mdg/signal.hpp"

namespace mdg::test {

inline constexpr double kPi = std::numbers::pi;

// Complex tone at f Hz.
inline IQSignal tone(double f_hz, std::size_t n, double fs = kDefaultSampleRateHz, double amp = 1.0) {
  std::vector<Complex> x(n);
  for (std::size_t m = 0; m < n; ++m) x[m] = std::polar(amp, 2.0 * kPi * f_hz * static_cast<double>(m) / fs);
  return IQSignal(std::move(x), fs);
}

// Unit-amplitude FM signal whose instantaneous frequency is f(t).
inline IQSignal fm(const std::function<double(double)>& f, std::size_t n, double fs = kDefaultSampleRateHz) {
  std::vector<Complex> x(n);
  double phase = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    phase += 2.0 * kPi * f(static_cast<double>(m) / fs) / fs;
    x[m] = std::polar(1.0, phase);
  }
  return IQSignal(std::move(x), fs);
}

inline IQSignal noise(std::size_t n, std::uint64_t seed, double fs = kDefaultSampleRateHz) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> x(n);
  for (auto& v : x) v = Complex(g(rng), g(rng));
  return IQSignal(std::move(x), fs);
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Code of the mdg::Error thrown by f, if any.
template <class F>
std::optional<ErrorCode> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Fresh, empty directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("mdg_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace mdg::test
