#include "mdg/features.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "mdg/error.hpp"
#include "mdg/io.hpp"

namespace mdg {

FeatureKind parse_feature_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "envelope") return FeatureKind::kEnvelope;
  if (s == "empirical") return FeatureKind::kEmpirical;
  if (s == "pca" || s == "image") return FeatureKind::kImage;
  if (s == "sparse" || s == "trajectory") return FeatureKind::kTrajectory;
  throw Error(ErrorCode::kConfigError, "unknown feature method '" + std::string(name) + "'");
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> envelope_row(const IQSignal& signal, const FeatureSettings& s) {
  const Spectrogram spec = stft(signal, s.stft);
  std::vector<double> v = feature_vector(envelopes_of(spec, s.envelope), s.envelope_n_out).values;
  if (s.envelope_normalize) {
    const double nyq = 0.5 * signal.sample_rate_hz();
    for (double& x : v) x /= nyq;
  }
  return v;
}

EmpiricalFeatures empirical_of(const IQSignal& signal, const FeatureSettings& s) {
  const Spectrogram spec = stft(signal, s.stft);
  return empirical_features(spec, envelopes_of(spec, s.envelope), s.onset_fraction);
}

GrayImage image_of(const IQSignal& signal, const FeatureSettings& s) {
  return to_gray_image(center_spectrum(stft(signal, s.stft)));
}

LabeledDataset extract_features(std::span<const LabeledSignal> signals, FeatureKind kind,
                                const FeatureSettings& s, std::size_t threads) {
  LabeledDataset data;
  data.kind = kind;
  data.samples.resize(signals.size());
  for (std::size_t i = 0; i < signals.size(); ++i) {
    data.samples[i].label = signals[i].label;
    data.samples[i].source_id = signals[i].source_id;
  }

  std::optional<GaborDictionary> dict;
  if (kind == FeatureKind::kTrajectory && !signals.empty()) {
    const IQSignal& first = *signals.front().signal;
    dict.emplace(build_dictionary(first.size(), first.sample_rate_hz(), s.gabor));
  }

  switch (kind) {
    case FeatureKind::kEnvelope: data.columns = io::envelope_columns(s.envelope_n_out); break;
    case FeatureKind::kEmpirical: data.columns = io::empirical_columns(); break;
    case FeatureKind::kImage: data.columns = io::image_columns(); break;
    case FeatureKind::kTrajectory: data.columns = io::trajectory_columns(s.sparsity); break;
  }

  parallel_for(signals.size(), threads, [&](std::size_t i) {
    const IQSignal& x = *signals[i].signal;
    std::vector<double>& f = data.samples[i].features;
    switch (kind) {
      case FeatureKind::kEnvelope: f = envelope_row(x, s); break;
      case FeatureKind::kEmpirical: {
        const EmpiricalFeatures e = empirical_of(x, s);
        f = {0.0, 0.0, 0.0, e.event_len_s, e.pn_ratio, e.bandwidth_hz, e.t_start_s, e.t_end_s, e.f_pos_hz, e.f_neg_hz};
        break;
      }
      case FeatureKind::kImage: f = image_of(x, s).pixels; break;
      case FeatureKind::kTrajectory: f = flatten(omp(x, *dict, s.sparsity).trajectory); break;
    }
  });

  if (kind == FeatureKind::kEmpirical && !data.samples.empty()) {
    const double n = static_cast<double>(data.samples.size());
    for (std::size_t c = 0; c < 3; ++c) {
      double mean = 0.0, sq = 0.0;
      for (const Sample& smp : data.samples) mean += smp.features[3 + c];
      mean /= n;
      for (const Sample& smp : data.samples) sq += (smp.features[3 + c] - mean) * (smp.features[3 + c] - mean);
      const double sd = n > 1 ? std::sqrt(sq / (n - 1)) : 0.0;
      for (Sample& smp : data.samples) smp.features[c] = sd > 0.0 ? (smp.features[3 + c] - mean) / sd : 0.0;
    }
  }
  return data;
}

}  // namespace mdg
