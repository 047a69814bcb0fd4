#pragma once

#include "mdg/envelope.hpp"
#include "mdg/signal.hpp"

namespace mdg {

/// Handcrafted kinematic features: event length, positive/negative peak
/// ratio and bandwidth, plus the raw quantities they derive from.
struct EmpiricalFeatures {
  double event_len_s = 0.0;   // T = t_e - t_s
  double pn_ratio = 0.0;      // R = |f_p / f_n|
  double bandwidth_hz = 0.0;  // B_w = |f_p| + |f_n|
  double t_start_s = 0.0;
  double t_end_s = 0.0;
  double f_pos_hz = 0.0;
  double f_neg_hz = 0.0;
  // f_n was zero, so R used a one-bin denominator.
  bool ratio_floor_used = false;
};

struct EventBounds {
  double t_start_s = 0.0;
  double t_end_s = 0.0;
};

/// Onset threshold as a fraction of the peak frame energy.
inline constexpr double kDefaultOnsetFraction = 0.05;

/// First and last frame times whose E_U + E_L reaches onset_fraction of the
/// peak. An all-zero spectrogram gives (0, 0).
EventBounds event_bounds(const Spectrogram& spec, double onset_fraction = kDefaultOnsetFraction);

EmpiricalFeatures empirical_features(const Spectrogram& spec, const EnvelopePair& env,
                                     double onset_fraction = kDefaultOnsetFraction);

}  // namespace mdg
