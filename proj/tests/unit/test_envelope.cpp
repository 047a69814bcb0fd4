#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "mdg/envelope.hpp"
#include "mdg/error.hpp"

using namespace mdg;
using test::kPi;

namespace {

Spectrogram grid(std::size_t frames, std::size_t bins, std::vector<double> p, double fs = 8.0) {
  return Spectrogram::from_power(frames, bins, std::move(p), fs);
}

EnvelopeConfig literal_rule() {
  EnvelopeConfig c;
  c.anchor = AnchorRule::kPeakPower;
  c.limit_to_frame_band = false;
  c.min_frame_energy_ratio = 0.0;
  return c;
}

// Share of frames whose envelopes are within two bins of the true
// instantaneous frequency at the frame centre.
double tracking_rate(const std::function<double(double)>& f, const StftConfig& cfg) {
  const Spectrogram s = stft(test::fm(f, 12800), cfg);
  const EnvelopePair e = envelopes_of(s);
  const double tol = 2.0 * s.bin_width_hz();
  std::size_t ok = 0;
  for (std::size_t n = 0; n < e.frames(); ++n) {
    const double fd = f(e.frame_times_s[n]);
    ok += std::abs(e.upper[n] - std::max(fd, 0.0)) <= tol && std::abs(e.lower[n] - std::min(fd, 0.0)) <= tol;
  }
  return static_cast<double>(ok) / static_cast<double>(e.frames());
}

}  // namespace

TEST_CASE("band energies square the power values per half") {
  std::mt19937_64 rng(11);
  const auto p = test::random_vector(4 * 8, rng, 0.0, 2.0);
  const BandEnergies e = band_energies(grid(4, 8, p));
  for (std::size_t n = 0; n < 4; ++n) {
    double up = 0.0, lo = 0.0;
    for (std::size_t k = 0; k < 4; ++k) up += p[n * 8 + k] * p[n * 8 + k];
    for (std::size_t k = 4; k < 8; ++k) lo += p[n * 8 + k] * p[n * 8 + k];
    CHECK(e.upper[n] == doctest::Approx(up).epsilon(1e-12));
    CHECK(e.lower[n] == doctest::Approx(lo).epsilon(1e-12));
  }
}

TEST_CASE("band energy edge cases") {
  std::vector<double> p(2 * 8, 0.0);
  p[1] = 2.0;
  p[8 + 3] = 1.0;
  const BandEnergies e = band_energies(grid(2, 8, p));
  CHECK(e.lower[0] == 0.0);
  CHECK(e.lower[1] == 0.0);
  CHECK(e.upper[0] == 4.0);

  // Halves mirrored under k -> K-1-k carry equal energy.
  std::mt19937_64 rng(3);
  auto q = test::random_vector(8, rng, 0.0, 1.0);
  for (std::size_t k = 0; k < 4; ++k) q[7 - k] = q[k];
  const BandEnergies m = band_energies(grid(1, 8, q));
  CHECK(m.upper[0] == doctest::Approx(m.lower[0]));

  CHECK_THROWS_AS(band_energies(center_spectrum(grid(1, 8, q))), Error);
}

TEST_CASE("scale factors from one or two upper pixels") {
  for (const EnvelopeConfig& cfg : {EnvelopeConfig{}, literal_rule()}) {
    std::vector<double> p(3 * 8, 0.0);
    p[8 + 2] = 5.0;
    const Spectrogram s = grid(3, 8, p);
    const ThresholdProfile one = select_scale_factors(s, band_energies(s), cfg);
    CHECK(one.sigma_upper == doctest::Approx(1.0 - kScaleFactorEpsilon));
    CHECK(one.upper_anchor_frame == 1);
    CHECK(one.upper_anchor_bin == 2);
    CHECK(one.lower_degenerate);
    CHECK(one.sigma_lower == 0.5);

    p[8 + 1] = 5.0;
    const Spectrogram s2 = grid(3, 8, p);
    const ThresholdProfile two = select_scale_factors(s2, band_energies(s2), cfg);
    CHECK(two.sigma_upper == doctest::Approx(0.5));
  }
}

TEST_CASE("thresholds equal band energy times sigma") {
  const Spectrogram s = stft(test::fm([](double t) { return 300.0 * std::sin(2 * kPi * t); }, 12800), {256, 512, 64});
  const BandEnergies e = band_energies(s);
  for (const EnvelopeConfig& cfg : {EnvelopeConfig{}, literal_rule()}) {
    const ThresholdProfile prof = select_scale_factors(s, e, cfg);
    CHECK(prof.sigma_upper > 0.0);
    CHECK(prof.sigma_upper < 1.0);
    CHECK(prof.sigma_lower > 0.0);
    CHECK(prof.sigma_lower < 1.0);
    for (std::size_t n = 0; n < s.frames; ++n) {
      CHECK(prof.t_upper[n] == e.upper[n] * prof.sigma_upper);
      CHECK(prof.t_lower[n] == e.lower[n] * prof.sigma_lower);
    }
    // The anchor cell reproduces sigma.
    const double a = s.at(prof.upper_anchor_frame, prof.upper_anchor_bin);
    CHECK(prof.sigma_upper == doctest::Approx(a * a / e.upper[prof.upper_anchor_frame]));
  }
}

TEST_CASE("extract envelopes picks the outermost qualifying bin") {
  std::vector<double> p(2 * 8, 0.0);
  p[2] = 1.0;      // +2 Hz in frame 0
  p[6] = 1.0;      // -2 Hz in frame 0
  p[8 + 1] = 0.1;  // frame 1: weak
  const Spectrogram s = grid(2, 8, p);
  ThresholdProfile prof;
  prof.t_upper = {0.5, 1.0};
  prof.t_lower = {0.5, 1.0};
  const EnvelopePair e = extract_envelopes(s, prof);
  CHECK(e.upper[0] == doctest::Approx(2.0));
  CHECK(e.lower[0] == doctest::Approx(-2.0));
  CHECK(e.upper[1] == 0.0);  // nothing reaches the threshold
  CHECK(e.lower[1] == 0.0);
}

TEST_CASE("raising a threshold never raises the envelope") {
  std::mt19937_64 rng(21);
  const auto p = test::random_vector(6 * 32, rng, 0.0, 1.0);
  const Spectrogram s = grid(6, 32, p, 32.0);
  ThresholdProfile prof;
  prof.t_upper.assign(6, 0.1);
  prof.t_lower.assign(6, 0.1);
  EnvelopePair prev = extract_envelopes(s, prof);
  for (double t : {0.2, 0.4, 0.6, 0.8, 0.95}) {
    prof.t_upper.assign(6, t);
    prof.t_lower.assign(6, t);
    const EnvelopePair cur = extract_envelopes(s, prof);
    for (std::size_t n = 0; n < 6; ++n) {
      CHECK(cur.upper[n] <= prev.upper[n]);
      CHECK(cur.lower[n] >= prev.lower[n]);
    }
    prev = cur;
  }
}

TEST_CASE("envelopes are unchanged by scaling the power") {
  const IQSignal x = test::fm([](double t) { return 500.0 * std::sin(2 * kPi * 2.0 * t); }, 12800);
  const Spectrogram s = stft(x, {256, 512, 64});
  Spectrogram big = s;
  for (double& v : big.power) v *= 1e3;
  for (const EnvelopeConfig& cfg : {EnvelopeConfig{}, literal_rule()}) {
    const ThresholdProfile a = select_scale_factors(s, band_energies(s), cfg);
    const ThresholdProfile b = select_scale_factors(big, band_energies(big), cfg);
    CHECK(a.sigma_upper == doctest::Approx(b.sigma_upper).epsilon(1e-12));
    CHECK(a.sigma_lower == doctest::Approx(b.sigma_lower).epsilon(1e-12));
    const EnvelopePair ea = envelopes_of(s, cfg);
    const EnvelopePair eb = envelopes_of(big, cfg);
    CHECK(ea.upper == eb.upper);
    CHECK(ea.lower == eb.lower);
  }
}

TEST_CASE("envelopes follow a sinusoidal Doppler law") {
  CHECK(tracking_rate([](double t) { return 300.0 * std::sin(2 * kPi * t); }, {256, 512, 64}) >= 0.95);
  CHECK(tracking_rate([](double t) { return -400.0 * std::sin(3 * kPi * t); }, {256, 512, 64}) >= 0.95);
  CHECK(tracking_rate([](double t) { return 300.0 * std::sin(2 * kPi * 0.02 * t); }, {}) >= 0.95);
}

TEST_CASE("envelope bounds") {
  const IQSignal x = test::noise(12800, 17);
  const Spectrogram s = stft(x, {256, 512, 64});
  const EnvelopePair e = envelopes_of(s, literal_rule());
  for (std::size_t n = 0; n < e.frames(); ++n) {
    CHECK(e.upper[n] >= 0.0);
    CHECK(e.upper[n] <= 6400.0 - 25.0);
    CHECK(e.lower[n] <= 0.0);
    CHECK(e.lower[n] >= -6400.0);
  }
}

TEST_CASE("silent frames read zero under the energy gate") {
  // Tone only in the second half of the segment.
  std::vector<Complex> v(12800, Complex{});
  for (std::size_t m = 6400; m < v.size(); ++m) v[m] = std::polar(1.0, 2 * kPi * 500.0 * m / 12800.0);
  const Spectrogram s = stft(IQSignal(v, 12800.0), {256, 512, 64});
  const EnvelopePair e = envelopes_of(s);
  for (std::size_t n = 0; n < e.frames(); ++n) {
    if (e.frame_times_s[n] < 0.45) CHECK(e.upper[n] == 0.0);
    if (e.frame_times_s[n] > 0.55) CHECK(e.upper[n] == doctest::Approx(500.0).epsilon(0.1));
    CHECK(e.lower[n] == 0.0);
  }
}

TEST_CASE("effective band trims equal tails") {
  const std::vector<double> w{1, 1, 1, 94, 1, 1, 1};
  CHECK(effective_band(w, 0.97) == std::pair<std::size_t, std::size_t>{1, 5});  // 1.5 trimmed per side
  CHECK(effective_band(w, 0.95) == std::pair<std::size_t, std::size_t>{2, 4});  // 2.5 per side
  CHECK(effective_band(w, 1.0) == std::pair<std::size_t, std::size_t>{0, 6});
  CHECK(effective_band(std::vector<double>(4, 0.0), 0.9) == std::pair<std::size_t, std::size_t>{0, 3});
  CHECK_THROWS_AS(effective_band({}, 0.9), Error);
}

TEST_CASE("config validation") {
  EnvelopeConfig c;
  c.band_fraction = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.min_frame_energy_ratio = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("feature vector resampling") {
  EnvelopePair c;
  c.upper.assign(9, 100.0);
  c.lower.assign(9, -50.0);
  CHECK(feature_vector(c, 4).values == std::vector<double>{100, 100, 100, 100, -50, -50, -50, -50});

  EnvelopePair r;
  for (int i = 0; i <= 10; ++i) r.upper.push_back(10.0 * i);
  r.lower.assign(11, 0.0);
  const auto f = feature_vector(r, 6);
  const std::vector<double> ramp{0, 20, 40, 60, 80, 100};
  for (std::size_t i = 0; i < 6; ++i) CHECK(f.values[i] == doctest::Approx(ramp[i]));
  CHECK(f.n_frames_resampled == 6);

  const auto same = feature_vector(r, 11);
  for (std::size_t i = 0; i < 11; ++i) CHECK(same.values[i] == r.upper[i]);

  std::mt19937_64 rng(4);
  const auto x = test::random_vector(37, rng);
  const auto once = resample_linear(x, 16);
  const auto twice = resample_linear(once, 16);
  CHECK(once == twice);

  CHECK_THROWS_AS(feature_vector(r, 1), Error);
}
