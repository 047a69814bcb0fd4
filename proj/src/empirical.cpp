#include "mdg/empirical.hpp"

#include <algorithm>
#include <cmath>

#include "mdg/error.hpp"

namespace mdg {

EventBounds event_bounds(const Spectrogram& spec, double onset_fraction) {
  const BandEnergies e = band_energies(spec);
  std::vector<double> total(spec.frames);
  for (std::size_t n = 0; n < spec.frames; ++n) total[n] = e.upper[n] + e.lower[n];
  const double peak = *std::max_element(total.begin(), total.end());
  if (!(peak > 0.0)) return {};

  const double thr = onset_fraction * peak;
  std::size_t first = 0;
  while (total[first] < thr) ++first;
  std::size_t last = spec.frames - 1;
  while (total[last] < thr) --last;
  return {spec.frame_times_s[first], spec.frame_times_s[last]};
}

EmpiricalFeatures empirical_features(const Spectrogram& spec, const EnvelopePair& env,
                                     double onset_fraction) {
  if (env.frames() != spec.frames || env.lower.size() != spec.frames) {
    throw Error(ErrorCode::kShapeMismatch, "envelopes do not come from this spectrogram");
  }
  EmpiricalFeatures f;
  const EventBounds b = event_bounds(spec, onset_fraction);
  f.t_start_s = b.t_start_s;
  f.t_end_s = b.t_end_s;
  f.event_len_s = b.t_end_s - b.t_start_s;

  f.f_pos_hz = *std::max_element(env.upper.begin(), env.upper.end());
  f.f_neg_hz = *std::min_element(env.lower.begin(), env.lower.end());
  f.bandwidth_hz = std::abs(f.f_pos_hz) + std::abs(f.f_neg_hz);
  if (f.f_neg_hz != 0.0) {
    f.pn_ratio = std::abs(f.f_pos_hz / f.f_neg_hz);
  } else {
    f.pn_ratio = std::abs(f.f_pos_hz) / spec.bin_width_hz();
    f.ratio_floor_used = true;
  }
  return f;
}

}  // namespace mdg
