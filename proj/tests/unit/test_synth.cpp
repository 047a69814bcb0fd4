#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "helpers.hpp"
#include "mdg/envelope.hpp"
#include "mdg/synth.hpp"

using namespace mdg;
using test::thrown_code;

namespace {

SynthConfig quiet() {
  SynthConfig c;
  c.jitter = 0.0;
  c.onset_jitter_s = 0.0;
  c.amplitude_jitter_db = 0.0;
  c.snr_jitter_db = 0.0;
  c.finger_scatterers = 0;
  return c;
}

double power(std::span<const Complex> x) {
  double s = 0.0;
  for (const Complex& v : x) s += std::norm(v);
  return s / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("constant Doppler scatterer gives a tone ridge") {
  GestureTemplate t;
  t.scatterers = {{1.0, [](double) { return 500.0; }}};
  t.event_start_s = 0.0;
  t.event_duration_s = 1.0;
  const IQSignal x = synth_gesture(t, quiet(), 1, 300.0);
  CHECK(x.size() == 12800);
  const Spectrogram s = center_spectrum(stft(x, StftConfig{256, 512, 64}));
  const double bin = 12800.0 / 512.0;
  std::size_t on_ridge = 0, interior = 0;
  for (std::size_t n = 0; n < s.frames; ++n) {
    const double u = s.frame_times_s[n];
    if (u < 0.1 || u > 0.9) continue;  // tapered edges
    ++interior;
    const auto row = std::span(s.power).subspan(n * s.bins, s.bins);
    const std::size_t k = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    on_ridge += std::abs(s.freqs_hz[k] - 500.0) <= bin;
  }
  CHECK(on_ridge == interior);
}

TEST_CASE("instantaneous frequency of a swept scatterer") {
  GestureTemplate t;
  t.scatterers = {{1.0, [](double u) { return 800.0 * std::sin(2.0 * test::kPi * u); }}};
  t.event_start_s = 0.0;
  t.event_duration_s = 1.0;
  const IQSignal x = synth_gesture(t, quiet(), 2, 300.0);
  const Spectrogram s = center_spectrum(stft(x, StftConfig{256, 512, 64}));
  const double bin = 12800.0 / 512.0;
  for (std::size_t n = 0; n < s.frames; ++n) {
    const double tc = s.frame_times_s[n];
    if (tc < 0.1 || tc > 0.9) continue;
    const auto row = std::span(s.power).subspan(n * s.bins, s.bins);
    const std::size_t k = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    CHECK(std::abs(s.freqs_hz[k] - t.doppler_hz(0, tc)) <= 2.0 * bin);
  }
}

TEST_CASE("swiping hand moves closer first") {
  const IQSignal x = synth_gesture(nominal_template(GestureClass::kSwipingHand), quiet(), 3);
  const EnvelopePair e = envelopes_of(stft(x));
  const auto up = std::max_element(e.upper.begin(), e.upper.end()) - e.upper.begin();
  const auto down = std::min_element(e.lower.begin(), e.lower.end()) - e.lower.begin();
  CHECK(up < down);
}

TEST_CASE("synthesis is deterministic per seed") {
  const SynthConfig cfg;
  const GestureTemplate t = jittered_template(GestureClass::kCalling, 0, cfg, 77);
  const IQSignal a = synth_gesture(t, cfg, 77);
  const IQSignal b = synth_gesture(t, cfg, 77);
  CHECK(std::equal(a.samples().begin(), a.samples().end(), b.samples().begin()));
  const IQSignal c = synth_gesture(t, cfg, 78);
  CHECK(!std::equal(a.samples().begin(), a.samples().end(), c.samples().begin()));
}

TEST_CASE("realized SNR matches the request") {
  const SynthConfig cfg;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto cls = static_cast<GestureClass>(seed % kGestureClassCount);
    const GestureTemplate t = jittered_template(cls, 0, cfg, seed);
    const IQSignal clean = synth_gesture(t, cfg, seed, 300.0);
    const double snr = instance_snr_db(cfg, seed);
    CHECK(std::abs(snr - cfg.snr_db) <= cfg.snr_jitter_db);
    const IQSignal noisy = synth_gesture(t, cfg, seed, snr);
    std::vector<Complex> noise(clean.size());
    for (std::size_t i = 0; i < noise.size(); ++i) noise[i] = noisy.samples()[i] - clean.samples()[i];
    const double realized = 10.0 * std::log10(power(clean.samples()) / power(noise));
    CHECK(std::abs(realized - snr) < 0.5);
  }
}

TEST_CASE("alias risk") {
  GestureTemplate t = nominal_template(GestureClass::kFlippingFingers);
  t.freq_scale = 6.0;
  CHECK(thrown_code([&] { synth_gesture(t, quiet(), 1); }) == ErrorCode::kAliasRisk);
  t.freq_scale = 1.0;
  t.scatterers[0].amplitude = 0.0;
  CHECK(thrown_code([&] { synth_gesture(t, quiet(), 1); }) == ErrorCode::kBadConfig);
}

TEST_CASE("templates respect the Nyquist limit and positivity") {
  for (std::size_t c = 0; c < kGestureClassCount; ++c) {
    const GestureTemplate t = nominal_template(static_cast<GestureClass>(c));
    CHECK(t.peak_abs_doppler_hz() < 6400.0);
    CHECK(t.peak_abs_doppler_hz() > 0.0);
    for (const Scatterer& s : t.scatterers) CHECK(s.amplitude > 0.0);
    CHECK(t.event_start_s >= 0.0);
    CHECK(t.event_start_s + t.event_duration_s <= 1.0);
  }
}

TEST_CASE("dataset shape and balance") {
  SynthConfig cfg;
  cfg.n_per_class = 2;
  const auto d = synth_dataset(cfg);
  REQUIRE(d.size() == 10);
  std::map<int, int> counts;
  for (const SynthRecord& r : d) {
    ++counts[r.label];
    CHECK(r.signal.size() == 12800);
  }
  CHECK(counts.size() == 5);
  for (const auto& [label, n] : counts) CHECK(n == 2);
  CHECK(d[0].file == "g00_0000.bin");
  CHECK(d[9].file == "g04_0001.bin");

  const auto again = synth_dataset(cfg);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(std::equal(d[i].signal.samples().begin(), d[i].signal.samples().end(), again[i].signal.samples().begin()));
  }

  cfg.variants = 3;
  const auto v = synth_dataset(cfg);
  CHECK(v.size() == 30);
  CHECK(v.back().label == 14);

  cfg.n_per_class = 0;
  CHECK(thrown_code([&] { synth_dataset(cfg); }) == ErrorCode::kBadConfig);
}

TEST_CASE("zero jitter leaves only the noise") {
  SynthConfig cfg = quiet();
  cfg.n_per_class = 3;
  for (const auto cls : {GestureClass::kHandRotation, GestureClass::kSnappingFingers}) {
    const GestureTemplate a = jittered_template(cls, 0, cfg, 10);
    const GestureTemplate b = jittered_template(cls, 0, cfg, 11);
    CHECK(a.event_start_s == b.event_start_s);
    CHECK(a.event_duration_s == b.event_duration_s);
    CHECK(a.freq_scale == b.freq_scale);
    const IQSignal ca = synth_gesture(a, cfg, 10, 300.0);
    const IQSignal cb = synth_gesture(b, cfg, 11, 300.0);
    double diff = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i) diff = std::max(diff, std::abs(ca.samples()[i] - cb.samples()[i]));
    CHECK(diff < 1e-6);
  }
}
