#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mdg {

using Complex = std::complex<double>;

/// 25 GHz CW radar slow-time rate used throughout the toolkit.
inline constexpr double kDefaultSampleRateHz = 12800.0;

/// Complex baseband radar return. Never empty; sample rate strictly positive.
class IQSignal {
 public:
  IQSignal(std::vector<Complex> samples, double sample_rate_hz);

  std::span<const Complex> samples() const noexcept { return samples_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration_s() const noexcept { return static_cast<double>(samples_.size()) / sample_rate_hz_; }

  /// Copy of samples [start, start + count).
  IQSignal slice(std::size_t start, std::size_t count) const;

 private:
  std::vector<Complex> samples_;
  double sample_rate_hz_;
};

enum class WindowKind { kRectangular };

struct StftConfig {
  std::size_t window_len = 2048;  // L
  std::size_t dft_len = 4096;     // K, zero-padded
  std::size_t hop = 64;
  WindowKind window = WindowKind::kRectangular;

  /// Throws BadConfig unless 1 <= hop <= L <= K and K is even.
  void validate() const;
};

enum class SpectrumLayout { kNatural, kCentered };

/// Time x Doppler power map, row-major (rows = frames, columns = DFT bins).
///
/// Natural layout keeps DFT order: bins [0, K/2) are non-negative
/// frequencies and [K/2, K) the negative half. Centered layout rotates the
/// columns so zero frequency sits at column K/2 and frequencies ascend from
/// -fs/2.
struct Spectrogram {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<double> power;
  std::vector<double> frame_times_s;
  std::vector<double> freqs_hz;
  double sample_rate_hz = 0.0;
  SpectrumLayout layout = SpectrumLayout::kNatural;

  double at(std::size_t n, std::size_t k) const { return power[n * bins + k]; }
  std::span<const double> row(std::size_t n) const {
    return std::span<const double>(power).subspan(n * bins, bins);
  }
  double bin_width_hz() const { return sample_rate_hz / static_cast<double>(bins); }

  /// Wraps a raw power matrix, filling the axes. Frame n is centred at
  /// first_frame_s + n * frame_step_s. Throws ShapeMismatch or BadConfig.
  static Spectrogram from_power(std::size_t frames, std::size_t bins, std::vector<double> power,
                                double sample_rate_hz, double frame_step_s = 1.0,
                                double first_frame_s = 0.0,
                                SpectrumLayout layout = SpectrumLayout::kNatural);
};

/// Frequency of natural-layout bin k for a K-point DFT.
double natural_bin_frequency(std::size_t k, std::size_t dft_len, double sample_rate_hz);

/// 100 x 100 gray-scale rendering of a centred spectrogram, values in [0, 1].
/// Row 0 is the highest frequency, columns run forward in time; the
/// vectorization is the row-major pixel array.
struct GrayImage {
  static constexpr std::size_t kSide = 100;
  static constexpr std::size_t kPixels = kSide * kSide;

  std::vector<double> pixels = std::vector<double>(kPixels, 0.0);

  double at(std::size_t r, std::size_t c) const { return pixels[r * kSide + c]; }
  std::span<const double> vectorized() const { return pixels; }
  static GrayImage from_vector(std::span<const double> v);
};

/// Magnitude-squared zero-padded STFT, natural layout.
/// Throws SignalTooShort when the signal is shorter than one window.
Spectrogram stft(const IQSignal& signal, const StftConfig& cfg = {});

/// Rotates columns by K/2. Throws AlreadyCentered on a centred input.
Spectrogram center_spectrum(const Spectrogram& spec);

struct SegmentationConfig {
  double window_s = 1.0;
  /// Search stride as a fraction of the sample rate.
  double stride_fraction = 0.1;
  /// Windows weaker than this fraction of the strongest window are dropped.
  double min_energy_ratio = 0.25;
};

/// Start indices chosen by the greedy max-energy window search, ascending.
std::vector<std::size_t> segment_starts(const IQSignal& recording, const SegmentationConfig& cfg);

/// Cuts a recording into gesture segments of round(window_s * fs) samples.
/// Throws RecordingTooShort when the recording cannot hold one window.
std::vector<IQSignal> segment_gesture(const IQSignal& recording, const SegmentationConfig& cfg = {});

/// Dynamic range kept below the peak when converting to dB.
inline constexpr double kDisplayRangeDb = 60.0;

/// Power in dB relative to nothing in particular, floored kDisplayRangeDb
/// below the peak. All-zero input yields an empty vector.
std::vector<double> floored_db(std::span<const double> power, double range_db = kDisplayRangeDb);

/// Separable triangle-filter (bilinear) resampling of a row-major
/// rows x cols grid. The filter widens when shrinking so every source sample
/// contributes; at equal size it is the identity.
std::vector<double> resize_bilinear(std::span<const double> src, std::size_t rows,
                                    std::size_t cols, std::size_t out_rows, std::size_t out_cols);

/// dB conversion, 60 dB floor, bilinear resize to 100 x 100 and min-max
/// normalization. All-zero input gives an all-zero image; a flat input gives
/// all ones. Throws WrongLayout unless centred.
GrayImage to_gray_image(const Spectrogram& spec);

}  // namespace mdg
