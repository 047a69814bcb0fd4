#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mdg/signal.hpp"

namespace mdg {

/// Per-frame energies of the positive and negative halves of a natural-layout
/// spectrogram, each the sum of squared spectrogram values S(n,k)^2.
struct BandEnergies {
  std::vector<double> upper;
  std::vector<double> lower;
};

/// Thresholds T(n) = E(n) * sigma for both bands.
struct ThresholdProfile {
  double sigma_upper = 0.5;
  double sigma_lower = 0.5;
  std::vector<double> t_upper;
  std::vector<double> t_lower;
  // Set when a band is identically zero; sigma then defaults to 0.5.
  bool upper_degenerate = false;
  bool lower_degenerate = false;
  // Frame and natural-layout bin the scale factors were read from.
  std::size_t upper_anchor_frame = 0;
  std::size_t upper_anchor_bin = 0;
  std::size_t lower_anchor_frame = 0;
  std::size_t lower_anchor_bin = 0;
  // Optional per-frame effective band [band_lo_hz, band_hi_hz]; envelope
  // searches stay inside it. Empty means unrestricted.
  std::vector<double> band_lo_hz;
  std::vector<double> band_hi_hz;
  // Optional per-frame activity of each band; inactive frames read 0. Empty
  // means every frame is active.
  std::vector<char> upper_active;
  std::vector<char> lower_active;
};

/// Where the scale factor sigma = S(n*,k*)^2 / E(n*) is read.
enum class AnchorRule {
  // The maximum positive (negative) Doppler frequency is the outermost bin
  // of the band whose time-integrated S^2 beyond it stays within
  // (1 - band_fraction) of the band total. n* is the frame where that bin is
  // strongest and k* the edge of n*'s own effective band on that side.
  kBandwidthEdge,
  // (n*, k*) is the global power maximum of the band.
  kPeakPower,
};

struct EnvelopeConfig {
  AnchorRule anchor = AnchorRule::kBandwidthEdge;
  // Energy share kept by the effective bands (global and per frame).
  double band_fraction = 0.99;
  // Restrict each frame's search to its own effective band.
  bool limit_to_frame_band = true;
  // Frames whose band energy is below this fraction of the band's largest
  // frame energy carry no motion and read 0. Zero disables the gate.
  double min_frame_energy_ratio = 1e-4;

  /// Throws BadConfig unless band_fraction lies in (0, 1] and the energy
  /// ratio in [0, 1).
  void validate() const;
};

/// Indices (into a frequency-ordered sequence of non-negative weights) of the
/// first and last element of the central band holding `fraction` of the
/// total, trimming (1 - fraction) / 2 from each end. An all-zero input gives
/// the full range.
std::pair<std::size_t, std::size_t> effective_band(const std::vector<double>& weights, double fraction);

/// Per-frame extreme Doppler frequencies (Hz): upper >= 0, lower <= 0.
struct EnvelopePair {
  std::vector<double> upper;
  std::vector<double> lower;
  std::vector<double> frame_times_s;
  double sample_rate_hz = 0.0;

  std::size_t frames() const { return upper.size(); }
};

/// [e_U resampled, e_L resampled], each half n_frames_resampled long.
struct EnvelopeFeature {
  std::vector<double> values;
  std::size_t n_frames_resampled = 0;
};

inline constexpr double kScaleFactorEpsilon = 1e-6;
inline constexpr std::size_t kDefaultEnvelopeLength = 128;

BandEnergies band_energies(const Spectrogram& spec);

/// sigma = S(n*,k*)^2 / E(n*) per band, clamped to (eps, 1 - eps), with
/// (n*, k*) chosen by cfg.anchor.
ThresholdProfile select_scale_factors(const Spectrogram& spec, const BandEnergies& energies,
                                      const EnvelopeConfig& cfg = {});

/// e_U(n) is the highest non-negative frequency whose S(n,k)^2 reaches
/// T_U(n); e_L(n) the lowest negative one reaching T_L(n). Frames with no
/// qualifying (non-zero) bin get 0.
EnvelopePair extract_envelopes(const Spectrogram& spec, const ThresholdProfile& prof);

/// Linear resampling of each envelope to n_out points, then concatenation.
EnvelopeFeature feature_vector(const EnvelopePair& env, std::size_t n_out = kDefaultEnvelopeLength);

/// Linear resampling of an arbitrary sequence onto n_out evenly spaced points
/// spanning the same index range.
std::vector<double> resample_linear(const std::vector<double>& x, std::size_t n_out);

/// band_energies -> select_scale_factors -> extract_envelopes.
EnvelopePair envelopes_of(const Spectrogram& spec, const EnvelopeConfig& cfg = {});

}  // namespace mdg
