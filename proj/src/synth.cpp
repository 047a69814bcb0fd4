#include "mdg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "mdg/error.hpp"
#include "mdg/rng.hpp"

namespace mdg {
namespace {

constexpr double kPi = std::numbers::pi;
// Nominal speed and reflectivity of finger scatterers relative to the main one.
constexpr double kFingerSpeed = 0.6;
constexpr double kFingerAmplitude = 0.25;
// Fraction of the snapping event taken by each of its two bursts.
constexpr double kSnapBurst = 0.15 / 0.35;

// Half-sine lobe on [a, b], zero elsewhere.
double lobe(double u, double a, double b) {
  if (u <= a || u >= b) return 0.0;
  return std::sin(kPi * (u - a) / (b - a));
}

// Raised-cosine on/off ramps covering `edge` of the event at each end.
double taper(double u, double edge = 0.1) {
  if (u < 0.0 || u > 1.0) return 0.0;
  if (u < edge) return 0.5 - 0.5 * std::cos(kPi * u / edge);
  if (u > 1.0 - edge) return 0.5 - 0.5 * std::cos(kPi * (1.0 - u) / edge);
  return 1.0;
}

GestureTemplate centred(GestureClass c, double duration, double segment_s, std::vector<Scatterer> sc) {
  GestureTemplate t;
  t.class_id = c;
  t.scatterers = std::move(sc);
  t.event_duration_s = duration;
  t.event_start_s = 0.5 * (segment_s - duration);
  return t;
}

}  // namespace

std::string_view to_string(GestureClass c) {
  switch (c) {
    case GestureClass::kSwipingHand: return "SwipingHand";
    case GestureClass::kHandRotation: return "HandRotation";
    case GestureClass::kFlippingFingers: return "FlippingFingers";
    case GestureClass::kCalling: return "Calling";
    case GestureClass::kSnappingFingers: return "SnappingFingers";
  }
  return "Unknown";
}

double GestureTemplate::doppler_hz(std::size_t i, double t) const {
  const double u = (t - event_start_s) / event_duration_s;
  if (u < 0.0 || u > 1.0) return 0.0;
  return freq_scale * scatterers[i].law(u);
}

double GestureTemplate::peak_abs_doppler_hz() const {
  double peak = 0.0;
  for (const Scatterer& s : scatterers) {
    for (int i = 0; i <= 2000; ++i) peak = std::max(peak, std::abs(s.law(i / 2000.0)));
  }
  return peak * std::abs(freq_scale);
}

void SynthConfig::validate() const {
  if (n_per_class == 0) throw Error(ErrorCode::kBadConfig, "synth.n_per_class must be positive");
  if (!(sample_rate_hz > 0.0) || !(segment_s > 0.0)) {
    throw Error(ErrorCode::kBadConfig, "sample rate and segment length must be positive");
  }
  if (!(jitter >= 0.0 && jitter < 1.0)) throw Error(ErrorCode::kBadConfig, "synth.jitter must lie in [0, 1)");
  if (!(onset_jitter_s >= 0.0)) throw Error(ErrorCode::kBadConfig, "synth.onset_jitter_s must be >= 0");
  if (!(amplitude_jitter_db >= 0.0 && amplitude_jitter_db <= 40.0)) {
    throw Error(ErrorCode::kBadConfig, "synth.amplitude_jitter_db must lie in [0, 40]");
  }
  if (variants == 0) throw Error(ErrorCode::kBadConfig, "synth.variants must be positive");
  if (!(variant_spread >= 0.0 && variant_spread < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "synth.variant_spread must lie in [0, 1)");
  }
  if (!std::isfinite(snr_db)) throw Error(ErrorCode::kBadConfig, "synth.snr_db must be finite");
  if (!(snr_jitter_db >= 0.0 && snr_jitter_db <= 40.0)) {
    throw Error(ErrorCode::kBadConfig, "synth.snr_jitter_db must lie in [0, 40]");
  }
}

GestureTemplate nominal_template(GestureClass c, double segment_s) {
  switch (c) {
    case GestureClass::kSwipingHand:
      // Hand approaches then recedes: positive lobe followed by a negative one.
      return centred(c, 0.5, segment_s,
                     {{1.0, [](double u) { return 600.0 * std::sin(2.0 * kPi * u); }},
                      {0.35, [](double u) { return 300.0 * std::sin(2.0 * kPi * u); }}});
    case GestureClass::kHandRotation:
      // Opposite edges of the hand move in opposite directions at once.
      return centred(c, 0.8, segment_s,
                     {{1.0, [](double u) { return 300.0 * std::sin(2.0 * kPi * u); }},
                      {0.8, [](double u) { return -300.0 * std::sin(2.0 * kPi * u); }}});
    case GestureClass::kFlippingFingers:
      // Fingers flick outward quickly; a weak wrist return.
      return centred(c, 0.2, segment_s,
                     {{1.0, [](double u) { return 1100.0 * lobe(u, 0.0, 0.7); }, 0.0, 0.7},
                      {0.6, [](double u) { return 700.0 * lobe(u, 0.05, 0.65); }, 0.05, 0.65},
                      {0.5, [](double u) { return -275.0 * lobe(u, 0.55, 1.0); }, 0.55, 1.0}});
    case GestureClass::kCalling:
      // Small approach, then a larger beckoning pull.
      return centred(c, 0.25, segment_s,
                     {{1.0, [](double u) { return 150.0 * lobe(u, 0.0, 0.3) - 600.0 * lobe(u, 0.3, 1.0); }},
                      {0.4, [](double u) { return -300.0 * lobe(u, 0.3, 1.0); }, 0.3, 1.0}});
    case GestureClass::kSnappingFingers:
      // Two 0.15 s alternating bursts separated by a short pause.
      return centred(c, 0.35, segment_s,
                     {{1.0, [](double u) { return 500.0 * std::sin(2.0 * kPi * u / kSnapBurst); }, 0.0, kSnapBurst},
                      {1.0, [](double u) { return -500.0 * std::sin(2.0 * kPi * (u - (1.0 - kSnapBurst)) / kSnapBurst); },
                       1.0 - kSnapBurst, 1.0}});
  }
  throw Error(ErrorCode::kBadConfig, "unknown gesture class");
}

GestureTemplate variant_template(GestureClass c, std::size_t variant, const SynthConfig& cfg) {
  GestureTemplate t = nominal_template(c, cfg.segment_s);
  if (cfg.variants > 1) {
    // Variants spread evenly over [1 - spread/2, 1 + spread/2].
    const double pos = static_cast<double>(variant) / static_cast<double>(cfg.variants - 1) - 0.5;
    t.freq_scale *= 1.0 + cfg.variant_spread * pos;
    const double dur = t.event_duration_s * (1.0 + cfg.variant_spread * pos);
    t.event_start_s += 0.5 * (t.event_duration_s - dur);
    t.event_duration_s = dur;
  }
  return t;
}

GestureTemplate jittered_template(GestureClass c, std::size_t variant, const SynthConfig& cfg,
                                  std::uint64_t instance_seed) {
  GestureTemplate t = variant_template(c, variant, cfg);
  std::mt19937_64 rng(derive_seed({instance_seed, 0x7e3a}));
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const double dur_factor = 1.0 + cfg.jitter * sym(rng);
  const double freq_factor = 1.0 + cfg.jitter * sym(rng);
  const double onset = cfg.onset_jitter_s * sym(rng);
  const double dur = std::min(t.event_duration_s * dur_factor, cfg.segment_s);
  const double centre = t.event_start_s + 0.5 * t.event_duration_s + onset;
  t.event_duration_s = dur;
  t.event_start_s = std::clamp(centre - 0.5 * dur, 0.0, cfg.segment_s - dur);
  t.freq_scale *= freq_factor;

  const Scatterer main = t.scatterers.front();
  for (std::size_t i = 0; i < cfg.finger_scatterers; ++i) {
    const double speed = std::clamp(kFingerSpeed * (1.0 + 2.0 * cfg.jitter * sym(rng)), 0.1, 1.0);
    Scatterer f = main;
    f.amplitude = kFingerAmplitude * main.amplitude;
    f.law = [law = main.law, speed](double u) { return speed * law(u); };
    t.scatterers.push_back(std::move(f));
  }
  const bool random_phase = cfg.jitter > 0.0 || cfg.amplitude_jitter_db > 0.0;
  for (Scatterer& sc : t.scatterers) {
    sc.amplitude *= std::pow(10.0, cfg.amplitude_jitter_db * sym(rng) / 20.0);
    sc.phase_rad = random_phase ? kPi * (1.0 + sym(rng)) : 0.0;
  }
  return t;
}

double instance_snr_db(const SynthConfig& cfg, std::uint64_t instance_seed) {
  if (cfg.snr_jitter_db == 0.0) return cfg.snr_db;
  std::mt19937_64 rng(derive_seed({instance_seed, 0x5a12}));
  return cfg.snr_db + cfg.snr_jitter_db * std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

IQSignal synth_gesture(const GestureTemplate& tmpl, const SynthConfig& cfg, std::uint64_t instance_seed) {
  return synth_gesture(tmpl, cfg, instance_seed, cfg.snr_db);
}

IQSignal synth_gesture(const GestureTemplate& tmpl, const SynthConfig& cfg, std::uint64_t instance_seed,
                       double snr_db) {
  const double fs = cfg.sample_rate_hz;
  if (tmpl.peak_abs_doppler_hz() >= 0.5 * fs) {
    throw Error(ErrorCode::kAliasRisk, "Doppler reaches fs/2 for " + std::string(to_string(tmpl.class_id)));
  }
  for (const Scatterer& s : tmpl.scatterers) {
    if (!(s.amplitude > 0.0)) throw Error(ErrorCode::kBadConfig, "scatterer amplitudes must be positive");
    if (!(s.on >= 0.0 && s.on < s.off && s.off <= 1.0)) {
      throw Error(ErrorCode::kBadConfig, "scatterer activity window must satisfy 0 <= on < off <= 1");
    }
  }
  const auto n = static_cast<std::size_t>(std::llround(cfg.segment_s * fs));
  std::vector<Complex> x(n, Complex{});
  std::mt19937_64 rng(derive_seed({instance_seed, 0x51f0}));

  for (std::size_t i = 0; i < tmpl.scatterers.size(); ++i) {
    double phase = tmpl.scatterers[i].phase_rad;
    const double a = tmpl.scatterers[i].amplitude;
    for (std::size_t m = 0; m < n; ++m) {
      const double t = static_cast<double>(m) / fs;
      phase += 2.0 * kPi * tmpl.doppler_hz(i, t) / fs;
      const double u = (t - tmpl.event_start_s) / tmpl.event_duration_s;
      const Scatterer& sc = tmpl.scatterers[i];
      const double amp = a * taper((u - sc.on) / (sc.off - sc.on));
      if (amp > 0.0) x[m] += std::polar(amp, phase);
    }
  }

  double p_signal = 0.0;
  for (const Complex& v : x) p_signal += std::norm(v);
  p_signal /= static_cast<double>(n);
  if (p_signal > 0.0) {
    const double p_noise = p_signal / std::pow(10.0, snr_db / 10.0);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5 * p_noise));
    for (Complex& v : x) v += Complex(g(rng), g(rng));
  }
  return IQSignal(std::move(x), fs);
}

std::vector<SynthRecord> synth_dataset(const SynthConfig& cfg) {
  cfg.validate();
  std::vector<SynthRecord> out;
  for (std::size_t c = 0; c < kGestureClassCount; ++c) {
    for (std::size_t v = 0; v < cfg.variants; ++v) {
      const int label = static_cast<int>(c * cfg.variants + v);
      for (std::size_t i = 0; i < cfg.n_per_class; ++i) {
        const std::uint64_t seed = derive_seed({cfg.seed, static_cast<std::uint64_t>(label), i});
        const auto cls = static_cast<GestureClass>(c);
        const GestureTemplate t = jittered_template(cls, v, cfg, seed);
        char name[64];
        std::snprintf(name, sizeof name, "g%02d_%04zu.bin", label, i);
        const double snr = instance_snr_db(cfg, seed);
        out.push_back({synth_gesture(t, cfg, seed, snr), label, seed, snr, name});
      }
    }
  }
  return out;
}

}  // namespace mdg
