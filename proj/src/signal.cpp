#include "mdg/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fft.hpp"
#include "mdg/error.hpp"
#include "mdg/simd.hpp"

namespace mdg {

IQSignal::IQSignal(std::vector<Complex> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (samples_.empty()) throw Error(ErrorCode::kBadConfig, "I/Q signal has no samples");
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw Error(ErrorCode::kBadConfig, "sample rate must be positive");
  }
}

IQSignal IQSignal::slice(std::size_t start, std::size_t count) const {
  if (start + count > samples_.size() || count == 0) {
    throw Error(ErrorCode::kShapeMismatch, "slice out of range");
  }
  return IQSignal(std::vector<Complex>(samples_.begin() + static_cast<std::ptrdiff_t>(start),
                                       samples_.begin() + static_cast<std::ptrdiff_t>(start + count)),
                  sample_rate_hz_);
}

void StftConfig::validate() const {
  if (window_len == 0 || dft_len == 0 || hop == 0) {
    throw Error(ErrorCode::kBadConfig, "STFT lengths must be positive");
  }
  if (window_len > dft_len) throw Error(ErrorCode::kBadConfig, "window length exceeds DFT length");
  if (hop > window_len) throw Error(ErrorCode::kBadConfig, "hop exceeds window length");
  if (dft_len % 2 != 0) throw Error(ErrorCode::kBadConfig, "DFT length must be even");
}

double natural_bin_frequency(std::size_t k, std::size_t dft_len, double sample_rate_hz) {
  const double df = sample_rate_hz / static_cast<double>(dft_len);
  const auto kk = static_cast<double>(k);
  return k < dft_len / 2 ? kk * df : (kk - static_cast<double>(dft_len)) * df;
}

namespace {

std::vector<double> frequency_axis(std::size_t bins, double fs, SpectrumLayout layout) {
  std::vector<double> f(bins);
  const double df = fs / static_cast<double>(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    f[k] = layout == SpectrumLayout::kNatural
               ? natural_bin_frequency(k, bins, fs)
               : (static_cast<double>(k) - static_cast<double>(bins / 2)) * df;
  }
  return f;
}

}  // namespace

Spectrogram Spectrogram::from_power(std::size_t frames, std::size_t bins, std::vector<double> power,
                                    double sample_rate_hz, double frame_step_s,
                                    double first_frame_s, SpectrumLayout layout) {
  if (frames == 0 || bins == 0 || bins % 2 != 0) {
    throw Error(ErrorCode::kBadConfig, "spectrogram needs frames > 0 and an even bin count");
  }
  if (power.size() != frames * bins) {
    throw Error(ErrorCode::kShapeMismatch, "power matrix has " + std::to_string(power.size()) +
                                               " values, expected " + std::to_string(frames * bins));
  }
  if (!(sample_rate_hz > 0.0)) throw Error(ErrorCode::kBadConfig, "sample rate must be positive");
  Spectrogram s;
  s.frames = frames;
  s.bins = bins;
  s.power = std::move(power);
  s.sample_rate_hz = sample_rate_hz;
  s.layout = layout;
  s.freqs_hz = frequency_axis(bins, sample_rate_hz, layout);
  s.frame_times_s.resize(frames);
  for (std::size_t n = 0; n < frames; ++n) {
    s.frame_times_s[n] = first_frame_s + static_cast<double>(n) * frame_step_s;
  }
  return s;
}

GrayImage GrayImage::from_vector(std::span<const double> v) {
  if (v.size() != kPixels) {
    throw Error(ErrorCode::kShapeMismatch, "gray image vector must have 10000 entries");
  }
  GrayImage img;
  img.pixels.assign(v.begin(), v.end());
  return img;
}

Spectrogram stft(const IQSignal& signal, const StftConfig& cfg) {
  cfg.validate();
  const std::size_t n_samples = signal.size();
  const std::size_t L = cfg.window_len;
  if (n_samples < L) {
    throw Error(ErrorCode::kSignalTooShort, "signal has " + std::to_string(n_samples) +
                                                " samples, window needs " + std::to_string(L));
  }
  const std::size_t frames = (n_samples - L) / cfg.hop + 1;
  const std::size_t K = cfg.dft_len;
  const double fs = signal.sample_rate_hz();

  std::vector<double> power(frames * K);
  detail::FftPlan plan(K);
  auto in = plan.input();
  const auto s = signal.samples();
  const auto& kernels = simd::active_kernels();
  for (std::size_t n = 0; n < frames; ++n) {
    // Rectangular window: h(m) = 1 on [0, L); the tail stays zero-padded.
    std::copy_n(s.begin() + static_cast<std::ptrdiff_t>(n * cfg.hop), L, in.begin());
    plan.execute();
    kernels.norm_squared(plan.output().data(), power.data() + n * K, K);
  }

  const double step = static_cast<double>(cfg.hop) / fs;
  const double first = 0.5 * static_cast<double>(L) / fs;
  return Spectrogram::from_power(frames, K, std::move(power), fs, step, first);
}

Spectrogram center_spectrum(const Spectrogram& spec) {
  if (spec.layout == SpectrumLayout::kCentered) {
    throw Error(ErrorCode::kAlreadyCentered, "spectrogram is already centred");
  }
  const std::size_t K = spec.bins;
  const std::size_t half = K / 2;
  Spectrogram out = spec;
  out.layout = SpectrumLayout::kCentered;
  out.freqs_hz = frequency_axis(K, spec.sample_rate_hz, SpectrumLayout::kCentered);
  for (std::size_t n = 0; n < spec.frames; ++n) {
    const double* src = spec.power.data() + n * K;
    double* dst = out.power.data() + n * K;
    for (std::size_t k = 0; k < K; ++k) dst[(k + half) % K] = src[k];
  }
  return out;
}

std::vector<std::size_t> segment_starts(const IQSignal& recording, const SegmentationConfig& cfg) {
  const double fs = recording.sample_rate_hz();
  const auto win = static_cast<std::size_t>(std::llround(cfg.window_s * fs));
  const std::size_t n = recording.size();
  if (win == 0 || win > n) {
    throw Error(ErrorCode::kRecordingTooShort,
                "recording of " + std::to_string(n) + " samples is shorter than the window");
  }
  const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.stride_fraction * fs)));
  const std::size_t max_segments = n / win;

  std::vector<double> prefix(n + 1, 0.0);
  const auto s = recording.samples();
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::norm(s[i]);

  struct Candidate {
    std::size_t start;
    double energy;
  };
  std::vector<Candidate> cand;
  for (std::size_t start = 0; start + win <= n; start += stride) {
    cand.push_back({start, prefix[start + win] - prefix[start]});
  }
  // Strongest first; earlier start wins ties.
  std::stable_sort(cand.begin(), cand.end(),
                   [](const Candidate& a, const Candidate& b) { return a.energy > b.energy; });

  std::vector<std::size_t> chosen;
  const double best = cand.front().energy;
  for (const Candidate& c : cand) {
    if (chosen.size() == max_segments) break;
    if (c.energy < cfg.min_energy_ratio * best || (best > 0.0 && c.energy <= 0.0)) break;
    const bool overlaps = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t other) {
      return c.start < other + win && other < c.start + win;
    });
    if (!overlaps) chosen.push_back(c.start);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<IQSignal> segment_gesture(const IQSignal& recording, const SegmentationConfig& cfg) {
  const auto win = static_cast<std::size_t>(std::llround(cfg.window_s * recording.sample_rate_hz()));
  std::vector<IQSignal> out;
  for (std::size_t start : segment_starts(recording, cfg)) out.push_back(recording.slice(start, win));
  return out;
}

std::vector<double> floored_db(std::span<const double> power, double range_db) {
  const double peak = power.empty() ? 0.0 : *std::max_element(power.begin(), power.end());
  if (!(peak > 0.0)) return {};
  const double peak_db = 10.0 * std::log10(peak);
  const double floor_db = peak_db - range_db;
  std::vector<double> out(power.size());
  for (std::size_t i = 0; i < power.size(); ++i) {
    out[i] = power[i] > 0.0 ? std::max(10.0 * std::log10(power[i]), floor_db) : floor_db;
  }
  return out;
}

namespace {

struct Tap {
  std::size_t index;
  double weight;
};

// Triangle-filter taps for each output sample of a 1-D resampling.
std::vector<std::vector<Tap>> resample_taps(std::size_t in, std::size_t out) {
  std::vector<std::vector<Tap>> taps(out);
  const double scale = static_cast<double>(in) / static_cast<double>(out);
  const double support = std::max(1.0, scale);
  for (std::size_t o = 0; o < out; ++o) {
    const double center = (static_cast<double>(o) + 0.5) * scale - 0.5;
    const auto lo = static_cast<long>(std::floor(center - support));
    const auto hi = static_cast<long>(std::ceil(center + support));
    double total = 0.0;
    for (long i = std::max(lo, 0L); i <= std::min(hi, static_cast<long>(in) - 1); ++i) {
      const double w = 1.0 - std::abs(static_cast<double>(i) - center) / support;
      if (w > 0.0) {
        taps[o].push_back({static_cast<std::size_t>(i), w});
        total += w;
      }
    }
    if (taps[o].empty()) {
      // Output centre falls outside the source; clamp to the nearest edge.
      const double clamped = std::clamp(std::round(center), 0.0, static_cast<double>(in - 1));
      taps[o].push_back({static_cast<std::size_t>(clamped), 1.0});
      total = 1.0;
    }
    for (Tap& t : taps[o]) t.weight /= total;
  }
  return taps;
}

}  // namespace

std::vector<double> resize_bilinear(std::span<const double> src, std::size_t rows, std::size_t cols,
                                    std::size_t out_rows, std::size_t out_cols) {
  if (src.size() != rows * cols || rows == 0 || cols == 0 || out_rows == 0 || out_cols == 0) {
    throw Error(ErrorCode::kShapeMismatch, "bad resize geometry");
  }
  const auto col_taps = resample_taps(cols, out_cols);
  const auto row_taps = resample_taps(rows, out_rows);

  std::vector<double> tmp(rows * out_cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* in = src.data() + r * cols;
    for (std::size_t c = 0; c < out_cols; ++c) {
      double acc = 0.0;
      for (const Tap& t : col_taps[c]) acc += t.weight * in[t.index];
      tmp[r * out_cols + c] = acc;
    }
  }
  std::vector<double> out(out_rows * out_cols, 0.0);
  for (std::size_t r = 0; r < out_rows; ++r) {
    for (const Tap& t : row_taps[r]) {
      const double* in = tmp.data() + t.index * out_cols;
      double* dst = out.data() + r * out_cols;
      for (std::size_t c = 0; c < out_cols; ++c) dst[c] += t.weight * in[c];
    }
  }
  return out;
}

GrayImage to_gray_image(const Spectrogram& spec) {
  if (spec.layout != SpectrumLayout::kCentered) {
    throw Error(ErrorCode::kWrongLayout, "gray image conversion expects a centred spectrogram");
  }
  const std::size_t K = spec.bins;
  const std::size_t F = spec.frames;

  // Transpose so rows run from the highest frequency down and columns are frames.
  std::vector<double> grid(K * F);
  for (std::size_t n = 0; n < F; ++n) {
    for (std::size_t k = 0; k < K; ++k) grid[(K - 1 - k) * F + n] = spec.at(n, k);
  }
  const std::vector<double> db = floored_db(grid);
  GrayImage img;
  if (db.empty()) return img;

  std::vector<double> px = resize_bilinear(db, K, F, GrayImage::kSide, GrayImage::kSide);
  const auto [lo_it, hi_it] = std::minmax_element(px.begin(), px.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (hi - lo <= 0.0) {
    std::fill(px.begin(), px.end(), 1.0);
  } else {
    for (double& v : px) v = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
  }
  img.pixels = std::move(px);
  return img;
}

}  // namespace mdg
