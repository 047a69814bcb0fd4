#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mdg/signal.hpp"

namespace mdg {

enum class GestureClass {
  kSwipingHand = 0,
  kHandRotation = 1,
  kFlippingFingers = 2,
  kCalling = 3,
  kSnappingFingers = 4,
};

inline constexpr std::size_t kGestureClassCount = 5;

std::string_view to_string(GestureClass c);

/// One point scatterer. `law` maps normalized event time u in [0, 1] to a
/// Doppler frequency in Hz at nominal scale. The scatterer reflects only for
/// u in [on, off], with tapered edges.
struct Scatterer {
  double amplitude = 1.0;
  std::function<double(double)> law;
  double on = 0.0;
  double off = 1.0;
  double phase_rad = 0.0;  // carrier phase at t = 0
};


struct GestureTemplate {
  GestureClass class_id = GestureClass::kSwipingHand;
  std::vector<Scatterer> scatterers;
  double event_duration_s = 0.5;
  double event_start_s = 0.25;
  // Multiplies every Doppler law.
  double freq_scale = 1.0;

  /// Instantaneous Doppler of scatterer i at absolute time t (s); zero
  /// outside the event.
  double doppler_hz(std::size_t i, double t) const;
  /// Largest |f_d| over the event, sampled finely.
  double peak_abs_doppler_hz() const;
};

struct SynthConfig {
  std::size_t n_per_class = 50;
  double snr_db = 20.0;
  // Fractional randomization of duration and Doppler scale per instance.
  double jitter = 0.5;
  // Uniform onset offset range (+/- s) around the centred event.
  double onset_jitter_s = 0.2;
  // Uniform per-scatterer reflectivity spread (+/- dB).
  double amplitude_jitter_db = 3.0;
  // Uniform per-instance SNR spread (+/- dB) around snr_db, standing in for
  // the hand's varying distance to the radar.
  double snr_jitter_db = 6.0;
  // Weak secondary reflectors (fingers) riding the main scatterer's law at a
  // reduced, per-instance speed.
  std::size_t finger_scatterers = 2;
  std::uint64_t seed = 42;
  double sample_rate_hz = kDefaultSampleRateHz;
  double segment_s = 1.0;
  // Sub-gestures per class; each variant gets a fixed scale offset and its
  // own label (class * variants + v).
  std::size_t variants = 1;
  double variant_spread = 0.3;

  /// Throws BadConfig.
  void validate() const;
};

/// Nominal template of a class, event centred in the segment.
GestureTemplate nominal_template(GestureClass c, double segment_s = 1.0);

/// Template of variant v of class c, before per-instance jitter.
GestureTemplate variant_template(GestureClass c, std::size_t variant, const SynthConfig& cfg);

/// Point-scatterer phase model plus circular complex white noise at `snr_db`
/// (signal power averaged over the whole segment). Throws
/// AliasRisk when any Doppler reaches fs/2.
IQSignal synth_gesture(const GestureTemplate& tmpl, const SynthConfig& cfg, std::uint64_t instance_seed);
IQSignal synth_gesture(const GestureTemplate& tmpl, const SynthConfig& cfg, std::uint64_t instance_seed,
                       double snr_db);

struct SynthRecord {
  IQSignal signal;
  int label = 0;
  std::uint64_t seed = 0;
  double snr_db = 0.0;
  std::string file;
};

/// SNR of one instance: snr_db plus its seeded share of snr_jitter_db.
double instance_snr_db(const SynthConfig& cfg, std::uint64_t instance_seed);

/// n_per_class instances for every (class, variant) label, with per-instance
/// jitter of duration, Doppler scale and onset. Pure function of cfg.
std::vector<SynthRecord> synth_dataset(const SynthConfig& cfg);

/// Variant template with the instance jitter applied: duration, Doppler
/// scale, onset, reflectivities, finger speeds and carrier phases. With both
/// jitters at zero every instance of a variant is identical.
GestureTemplate jittered_template(GestureClass c, std::size_t variant, const SynthConfig& cfg,
                                  std::uint64_t instance_seed);

}  // namespace mdg
