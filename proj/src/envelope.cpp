#include "mdg/envelope.hpp"

#include <algorithm>
#include <tuple>
#include <string>

#include "mdg/error.hpp"
#include "mdg/simd.hpp"

namespace mdg {
namespace {

void require_natural(const Spectrogram& spec) {
  if (spec.layout != SpectrumLayout::kNatural) {
    throw Error(ErrorCode::kWrongLayout, "envelope extraction expects a natural-layout spectrogram");
  }
}

// Relative slack on the threshold test. The anchor bin satisfies
// S^2 == E * (S^2 / E) only up to rounding.
constexpr double kThresholdSlack = 1.0 - 1e-12;

// Natural-layout bin of frequency-ordered index i (index 0 is -fs/2).
std::size_t natural_bin(std::size_t i, std::size_t K) { return (i + K / 2) % K; }

struct Anchor {
  std::size_t frame = 0;
  std::size_t bin = 0;
  double value = 0.0;
};

Anchor peak_anchor(const Spectrogram& spec, std::size_t k_begin, std::size_t k_end) {
  Anchor a{0, k_begin, -1.0};
  for (std::size_t n = 0; n < spec.frames; ++n) {
    for (std::size_t k = k_begin; k < k_end; ++k) {
      if (spec.at(n, k) > a.value) a = {n, k, spec.at(n, k)};
    }
  }
  return a;
}

Anchor column_peak(const Spectrogram& spec, std::size_t k) {
  Anchor a{0, k, -1.0};
  for (std::size_t n = 0; n < spec.frames; ++n) {
    if (spec.at(n, k) > a.value) a = {n, k, spec.at(n, k)};
  }
  return a;
}

// Effective band of every frame as natural-layout bins (upper edge, lower
// edge), computed over the frequency-ordered S^2 row.
std::vector<std::pair<std::size_t, std::size_t>> frame_bands(const Spectrogram& spec, double fraction) {
  const std::size_t K = spec.bins;
  std::vector<std::pair<std::size_t, std::size_t>> out(spec.frames);
  std::vector<double> w(K);
  for (std::size_t n = 0; n < spec.frames; ++n) {
    for (std::size_t i = 0; i < K; ++i) {
      const double v = spec.at(n, natural_bin(i, K));
      w[i] = v * v;
    }
    const auto [lo, hi] = effective_band(w, fraction);
    out[n] = {natural_bin(hi, K), natural_bin(lo, K)};
  }
  return out;
}

// The maximum positive (negative) Doppler frequency of a half is the
// outermost bin whose time-integrated S^2 beyond it is at most
// (1 - fraction) of the half's total. The anchor frame is where that bin is
// strongest, and the anchor pixel is the edge of that frame's own effective
// band on the same side.
std::pair<Anchor, Anchor> edge_anchors(const Spectrogram& spec, double fraction,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& bands) {
  const std::size_t K = spec.bins;
  const std::size_t half = K / 2;
  std::vector<double> g(K, 0.0);
  for (std::size_t n = 0; n < spec.frames; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      const double v = spec.at(n, k);
      g[k] += v * v;
    }
  }
  auto edge = [&](std::size_t k_begin, std::size_t k_end, bool from_top) {
    double total = 0.0;
    for (std::size_t k = k_begin; k < k_end; ++k) total += g[k];
    const double tail = (1.0 - fraction) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < k_end - k_begin; ++i) {
      const std::size_t k = from_top ? k_end - 1 - i : k_begin + i;
      acc += g[k];
      if (acc > tail && g[k] > 0.0) return k;
    }
    return from_top ? k_begin : k_end - 1;
  };
  Anchor up = column_peak(spec, edge(0, half, true));
  Anchor down = column_peak(spec, edge(half, K, false));
  if (up.value > 0.0) {
    const std::size_t k = bands[up.frame].first;
    if (k < half && spec.freqs_hz[k] >= spec.freqs_hz[up.bin]) up = {up.frame, k, spec.at(up.frame, k)};
  }
  if (down.value > 0.0) {
    const std::size_t k = bands[down.frame].second;
    if (k >= half && spec.freqs_hz[k] <= spec.freqs_hz[down.bin]) down = {down.frame, k, spec.at(down.frame, k)};
  }
  return {up, down};
}

double sigma_at(const Anchor& a, const std::vector<double>& energy, bool& degenerate) {
  if (!(a.value > 0.0) || !(energy[a.frame] > 0.0)) {
    degenerate = true;
    return 0.5;
  }
  degenerate = false;
  const double sigma = a.value * a.value / energy[a.frame];
  return std::clamp(sigma, kScaleFactorEpsilon, 1.0 - kScaleFactorEpsilon);
}

}  // namespace

BandEnergies band_energies(const Spectrogram& spec) {
  require_natural(spec);
  const std::size_t half = spec.bins / 2;
  BandEnergies e;
  e.upper.resize(spec.frames);
  e.lower.resize(spec.frames);
  for (std::size_t n = 0; n < spec.frames; ++n) {
    const auto row = spec.row(n);
    e.upper[n] = simd::sum_squares(row.first(half));
    e.lower[n] = simd::sum_squares(row.subspan(half));
  }
  return e;
}

void EnvelopeConfig::validate() const {
  if (!(band_fraction > 0.0 && band_fraction <= 1.0)) {
    throw Error(ErrorCode::kBadConfig, "envelope band fraction must lie in (0, 1]");
  }
  if (!(min_frame_energy_ratio >= 0.0 && min_frame_energy_ratio < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "envelope frame energy ratio must lie in [0, 1)");
  }
}

std::pair<std::size_t, std::size_t> effective_band(const std::vector<double>& weights, double fraction) {
  if (weights.empty()) throw Error(ErrorCode::kBadLength, "effective band of an empty spectrum");
  double total = 0.0;
  for (double w : weights) total += w;
  std::size_t lo = 0;
  std::size_t hi = weights.size() - 1;
  if (!(total > 0.0)) return {lo, hi};
  const double tail = 0.5 * (1.0 - fraction) * total;
  // Drop outer elements while the mass removed from that side stays within
  // the tail allowance.
  for (double acc = weights[lo]; lo < hi && acc <= tail; acc += weights[lo]) ++lo;
  for (double acc = weights[hi]; hi > lo && acc <= tail; acc += weights[hi]) --hi;
  return {lo, hi};
}

ThresholdProfile select_scale_factors(const Spectrogram& spec, const BandEnergies& energies,
                                      const EnvelopeConfig& cfg) {
  require_natural(spec);
  cfg.validate();
  if (energies.upper.size() != spec.frames || energies.lower.size() != spec.frames) {
    throw Error(ErrorCode::kShapeMismatch, "band energies do not match the spectrogram");
  }
  const std::size_t K = spec.bins;
  const std::size_t half = K / 2;
  ThresholdProfile p;
  Anchor up;
  Anchor down;
  if (cfg.anchor == AnchorRule::kPeakPower) {
    up = peak_anchor(spec, 0, half);
    down = peak_anchor(spec, half, K);
  }
  const auto bands = frame_bands(spec, cfg.band_fraction);
  if (cfg.anchor == AnchorRule::kBandwidthEdge) std::tie(up, down) = edge_anchors(spec, cfg.band_fraction, bands);
  p.sigma_upper = sigma_at(up, energies.upper, p.upper_degenerate);
  p.sigma_lower = sigma_at(down, energies.lower, p.lower_degenerate);
  p.upper_anchor_frame = up.frame;
  p.upper_anchor_bin = up.bin;
  p.lower_anchor_frame = down.frame;
  p.lower_anchor_bin = down.bin;
  p.t_upper.resize(spec.frames);
  p.t_lower.resize(spec.frames);
  for (std::size_t n = 0; n < spec.frames; ++n) {
    p.t_upper[n] = energies.upper[n] * p.sigma_upper;
    p.t_lower[n] = energies.lower[n] * p.sigma_lower;
  }
  if (cfg.min_frame_energy_ratio > 0.0) {
    auto gate = [&](const std::vector<double>& e) {
      const double floor = cfg.min_frame_energy_ratio * *std::max_element(e.begin(), e.end());
      std::vector<char> active(e.size());
      for (std::size_t n = 0; n < e.size(); ++n) active[n] = e[n] >= floor;
      return active;
    };
    p.upper_active = gate(energies.upper);
    p.lower_active = gate(energies.lower);
  }
  if (cfg.limit_to_frame_band) {
    p.band_lo_hz.resize(spec.frames);
    p.band_hi_hz.resize(spec.frames);
    for (std::size_t n = 0; n < spec.frames; ++n) {
      p.band_hi_hz[n] = spec.freqs_hz[bands[n].first];
      p.band_lo_hz[n] = spec.freqs_hz[bands[n].second];
    }
  }
  return p;
}

EnvelopePair extract_envelopes(const Spectrogram& spec, const ThresholdProfile& prof) {
  require_natural(spec);
  if (prof.t_upper.size() != spec.frames || prof.t_lower.size() != spec.frames) {
    throw Error(ErrorCode::kShapeMismatch, "threshold profile does not match the spectrogram");
  }
  const bool banded = !prof.band_lo_hz.empty() || !prof.band_hi_hz.empty();
  if (banded && (prof.band_lo_hz.size() != spec.frames || prof.band_hi_hz.size() != spec.frames)) {
    throw Error(ErrorCode::kShapeMismatch, "frame bands do not match the spectrogram");
  }
  const bool gated = !prof.upper_active.empty() || !prof.lower_active.empty();
  if (gated && (prof.upper_active.size() != spec.frames || prof.lower_active.size() != spec.frames)) {
    throw Error(ErrorCode::kShapeMismatch, "frame activity does not match the spectrogram");
  }
  const std::size_t K = spec.bins;
  const std::size_t half = K / 2;
  EnvelopePair env;
  env.upper.assign(spec.frames, 0.0);
  env.lower.assign(spec.frames, 0.0);
  env.frame_times_s = spec.frame_times_s;
  env.sample_rate_hz = spec.sample_rate_hz;

  for (std::size_t n = 0; n < spec.frames; ++n) {
    const auto row = spec.row(n);
    const double lo_hz = banded ? prof.band_lo_hz[n] : -spec.sample_rate_hz;
    const double hi_hz = banded ? prof.band_hi_hz[n] : spec.sample_rate_hz;
    const double tu = prof.t_upper[n] * kThresholdSlack;
    const bool up_on = !gated || prof.upper_active[n];
    const bool down_on = !gated || prof.lower_active[n];
    // Highest positive frequency first.
    for (std::size_t k = up_on ? half : 0; k-- > 0;) {
      const double s2 = row[k] * row[k];
      if (spec.freqs_hz[k] > hi_hz) continue;
      if (spec.freqs_hz[k] < lo_hz) break;
      if (s2 > 0.0 && s2 >= tu) {
        env.upper[n] = spec.freqs_hz[k];
        break;
      }
    }
    const double tl = prof.t_lower[n] * kThresholdSlack;
    // Bin K/2 is -fs/2, the most negative frequency.
    for (std::size_t k = half; down_on && k < K; ++k) {
      const double s2 = row[k] * row[k];
      if (spec.freqs_hz[k] < lo_hz) continue;
      if (spec.freqs_hz[k] > hi_hz) break;
      if (s2 > 0.0 && s2 >= tl) {
        env.lower[n] = spec.freqs_hz[k];
        break;
      }
    }
  }
  return env;
}

std::vector<double> resample_linear(const std::vector<double>& x, std::size_t n_out) {
  if (n_out < 2) throw Error(ErrorCode::kBadLength, "resampled length must be at least 2");
  if (x.empty()) throw Error(ErrorCode::kBadLength, "cannot resample an empty sequence");
  std::vector<double> out(n_out);
  if (x.size() == n_out) return x;
  if (x.size() == 1) {
    std::fill(out.begin(), out.end(), x.front());
    return out;
  }
  const double step = static_cast<double>(x.size() - 1) / static_cast<double>(n_out - 1);
  for (std::size_t i = 0; i < n_out; ++i) {
    const double pos = static_cast<double>(i) * step;
    const auto j = std::min(static_cast<std::size_t>(pos), x.size() - 2);
    const double frac = pos - static_cast<double>(j);
    out[i] = x[j] + frac * (x[j + 1] - x[j]);
  }
  out.back() = x.back();
  return out;
}

EnvelopeFeature feature_vector(const EnvelopePair& env, std::size_t n_out) {
  if (n_out < 2) throw Error(ErrorCode::kBadLength, "feature length must be at least 2");
  if (env.upper.size() != env.lower.size()) {
    throw Error(ErrorCode::kShapeMismatch, "envelope halves differ in length");
  }
  EnvelopeFeature f;
  f.n_frames_resampled = n_out;
  const auto up = resample_linear(env.upper, n_out);
  const auto lo = resample_linear(env.lower, n_out);
  f.values.reserve(2 * n_out);
  f.values.insert(f.values.end(), up.begin(), up.end());
  f.values.insert(f.values.end(), lo.begin(), lo.end());
  return f;
}

EnvelopePair envelopes_of(const Spectrogram& spec, const EnvelopeConfig& cfg) {
  const BandEnergies e = band_energies(spec);
  return extract_envelopes(spec, select_scale_factors(spec, e, cfg));
}

}  // namespace mdg
