#include <doctest.h>

#include <array>

#include "helpers.hpp"
#include "mdg/empirical.hpp"
#include "mdg/synth.hpp"

using namespace mdg;

namespace {

EnvelopePair envelope_with(double fp, double fn, std::size_t frames = 10) {
  EnvelopePair e;
  e.upper.assign(frames, 0.0);
  e.lower.assign(frames, 0.0);
  e.frame_times_s.assign(frames, 0.0);
  e.upper[3] = fp;
  e.lower[6] = fn;
  return e;
}

Spectrogram empty_spec(std::size_t frames = 10) {
  return Spectrogram::from_power(frames, 8, std::vector<double>(frames * 8, 0.0), 8.0, 0.1);
}

}  // namespace

TEST_CASE("event bounds cover the energetic frames") {
  std::vector<double> p(30 * 8, 0.0);
  for (std::size_t n = 10; n <= 20; ++n) p[n * 8 + 1] = 1.0;
  const Spectrogram s = Spectrogram::from_power(30, 8, p, 8.0, 0.01, 0.005);
  const EventBounds b = event_bounds(s);
  CHECK(b.t_start_s == doctest::Approx(s.frame_times_s[10]));
  CHECK(b.t_end_s == doctest::Approx(s.frame_times_s[20]));

  const EventBounds z = event_bounds(empty_spec());
  CHECK(z.t_start_s == 0.0);
  CHECK(z.t_end_s == 0.0);
}

TEST_CASE("event length of a 0.4 s burst") {
  std::vector<Complex> v(12800, Complex{});
  for (std::size_t m = 3840; m < 3840 + 5120; ++m) v[m] = std::polar(1.0, 2 * test::kPi * 300.0 * m / 12800.0);
  const Spectrogram s = stft(IQSignal(v, 12800.0));
  const EmpiricalFeatures f = empirical_features(s, envelopes_of(s));
  CHECK(f.event_len_s == doctest::Approx(0.4).epsilon(0.25));
  CHECK(std::abs(f.event_len_s - 0.4) <= 0.1);

  Spectrogram big = s;
  for (double& x : big.power) x *= 1e4;
  CHECK(empirical_features(big, envelopes_of(big)).event_len_s == f.event_len_s);
}

TEST_CASE("ratio and bandwidth formulas") {
  const EmpiricalFeatures a = empirical_features(empty_spec(), envelope_with(500.0, -250.0));
  CHECK(a.pn_ratio == doctest::Approx(2.0));
  CHECK(a.bandwidth_hz == doctest::Approx(750.0));
  CHECK(a.f_pos_hz == 500.0);
  CHECK(a.f_neg_hz == -250.0);
  CHECK(!a.ratio_floor_used);

  const EmpiricalFeatures s = empirical_features(empty_spec(), envelope_with(300.0, -300.0));
  CHECK(s.pn_ratio == doctest::Approx(1.0));
  CHECK(s.bandwidth_hz == doctest::Approx(600.0));

  // No negative content: one bin (1 Hz here) stands in for |f_n|.
  const EmpiricalFeatures z = empirical_features(empty_spec(), envelope_with(300.0, 0.0));
  CHECK(z.ratio_floor_used);
  CHECK(z.pn_ratio == doctest::Approx(300.0));
}

TEST_CASE("ratio is scale invariant and bandwidth scales") {
  for (double c : {0.5, 2.0, 7.0}) {
    const EmpiricalFeatures a = empirical_features(empty_spec(), envelope_with(420.0, -130.0));
    const EmpiricalFeatures b = empirical_features(empty_spec(), envelope_with(420.0 * c, -130.0 * c));
    CHECK(b.pn_ratio == doctest::Approx(a.pn_ratio));
    CHECK(b.bandwidth_hz == doctest::Approx(a.bandwidth_hz * c));
    CHECK(b.bandwidth_hz >= std::max(std::abs(b.f_pos_hz), std::abs(b.f_neg_hz)));
  }
}

TEST_CASE("nominal class templates show the expected feature contrasts") {
  SynthConfig cfg;
  cfg.jitter = 0.0;
  cfg.onset_jitter_s = 0.0;
  cfg.amplitude_jitter_db = 0.0;
  cfg.snr_jitter_db = 0.0;
  cfg.finger_scatterers = 0;
  cfg.snr_db = 30.0;
  std::array<EmpiricalFeatures, kGestureClassCount> f;
  for (std::size_t c = 0; c < kGestureClassCount; ++c) {
    const auto t = nominal_template(static_cast<GestureClass>(c));
    const Spectrogram s = stft(synth_gesture(t, cfg, 100 + c));
    f[c] = empirical_features(s, envelopes_of(s));
    MESSAGE("class " << c << " T=" << f[c].event_len_s << " R=" << f[c].pn_ratio << " Bw=" << f[c].bandwidth_hz);
  }
  const auto& [I, II, III, IV, V] = f;
  // Time: swiping and rotation are long, the rest short.
  for (const auto* s : {&III, &IV, &V}) {
    CHECK(I.event_len_s > s->event_len_s);
    CHECK(II.event_len_s > s->event_len_s);
  }
  // Ratio: flipping largest, calling smallest.
  for (const auto* s : {&I, &II, &IV, &V}) CHECK(III.pn_ratio > s->pn_ratio);
  for (const auto* s : {&I, &II, &III, &V}) CHECK(IV.pn_ratio < s->pn_ratio);
  // Bandwidth: rotation smallest, flipping largest.
  for (const auto* s : {&I, &III, &IV, &V}) CHECK(II.bandwidth_hz < s->bandwidth_hz);
  for (const auto* s : {&I, &II, &IV, &V}) CHECK(III.bandwidth_hz > s->bandwidth_hz);
}
