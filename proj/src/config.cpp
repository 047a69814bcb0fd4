#include "mdg/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "mdg/error.hpp"
#include "mdg/io.hpp"

namespace mdg {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw Error(ErrorCode::kConfigError,
              std::string(key) + ": expected " + std::string(expected) + ", got '" + std::string(value) + "'");
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || p != v.data() + v.size()) bad_value(key, v, "a non-negative integer");
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  try {
    return io::parse_double(v, key);
  } catch (const Error&) {
  }
  bad_value(key, v, "a number");
}

bool parse_bool(std::string_view key, std::string_view v) {
  const std::string s = lower(v);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  bad_value(key, v, "true or false");
}

AnchorRule parse_anchor(std::string_view key, std::string_view v) {
  const std::string s = lower(v);
  if (s == "edge") return AnchorRule::kBandwidthEdge;
  if (s == "peak") return AnchorRule::kPeakPower;
  bad_value(key, v, "edge or peak");
}

ClassifierKind parse_classifier(std::string_view key, std::string_view v) {
  const std::string s = lower(v);
  if (s == "auto") return ClassifierKind::kAuto;
  if (s == "knn") return ClassifierKind::kKnn;
  if (s == "svm") return ClassifierKind::kSvm;
  bad_value(key, v, "auto, knn or svm");
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Key size_key(std::string name, T RunConfig::*member) {
  return {name, [name, member](RunConfig& c, std::string_view v) { c.*member = parse_unsigned<T>(name, v); },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

// Keys addressing a field nested inside RunConfig.
template <typename F>
Key real_key(std::string name, F field) {
  return {name, [name, field](RunConfig& c, std::string_view v) { field(c) = parse_real(name, v); },
          [field](const RunConfig& c) { return io::format_double(field(c)); }};
}

template <typename F>
Key count_key(std::string name, F field) {
  using T = std::remove_reference_t<decltype(field(std::declval<RunConfig&>()))>;
  return {name, [name, field](RunConfig& c, std::string_view v) { field(c) = parse_unsigned<T>(name, v); },
          [field](const RunConfig& c) { return std::to_string(field(c)); }};
}

template <typename F>
Key bool_key(std::string name, F field) {
  return {name, [name, field](RunConfig& c, std::string_view v) { field(c) = parse_bool(name, v); },
          [field](const RunConfig& c) { return std::string(field(c) ? "true" : "false"); }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back(count_key("stft.L", [](auto& c) -> auto& { return c.features.stft.window_len; }));
    k.push_back(count_key("stft.K", [](auto& c) -> auto& { return c.features.stft.dft_len; }));
    k.push_back(count_key("stft.hop", [](auto& c) -> auto& { return c.features.stft.hop; }));
    k.push_back(real_key("segment.window_s", [](auto& c) -> auto& { return c.segment.window_s; }));
    k.push_back(real_key("segment.stride_fraction", [](auto& c) -> auto& { return c.segment.stride_fraction; }));
    k.push_back(real_key("segment.min_energy_ratio", [](auto& c) -> auto& { return c.segment.min_energy_ratio; }));
    k.push_back(count_key("envelope.n_out", [](auto& c) -> auto& { return c.features.envelope_n_out; }));
    k.push_back(bool_key("envelope.normalize", [](auto& c) -> auto& { return c.features.envelope_normalize; }));
    k.push_back({"envelope.anchor",
                 [](RunConfig& c, std::string_view v) { c.features.envelope.anchor = parse_anchor("envelope.anchor", v); },
                 [](const RunConfig& c) {
                   return std::string(c.features.envelope.anchor == AnchorRule::kPeakPower ? "peak" : "edge");
                 }});
    k.push_back(real_key("envelope.band_fraction", [](auto& c) -> auto& { return c.features.envelope.band_fraction; }));
    k.push_back(bool_key("envelope.limit_to_frame_band",
                         [](auto& c) -> auto& { return c.features.envelope.limit_to_frame_band; }));
    k.push_back(real_key("envelope.min_frame_energy_ratio",
                         [](auto& c) -> auto& { return c.features.envelope.min_frame_energy_ratio; }));
    k.push_back(real_key("empirical.onset_frac", [](auto& c) -> auto& { return c.features.onset_fraction; }));
    k.push_back(count_key("knn.k", [](auto& c) -> auto& { return c.knn.k; }));
    k.push_back({"knn.metric", [](RunConfig& c, std::string_view v) { c.knn.metric = parse_metric(v); },
                 [](const RunConfig& c) { return std::string(to_string(c.knn.metric)); }});
    k.push_back(real_key("svm.lambda", [](auto& c) -> auto& { return c.svm.lambda; }));
    k.push_back(count_key("svm.epochs", [](auto& c) -> auto& { return c.svm.epochs; }));
    k.push_back(count_key("svm.seed", [](auto& c) -> auto& { return c.svm.seed; }));
    k.push_back({"eval.classifier",
                 [](RunConfig& c, std::string_view v) { c.classifier = parse_classifier("eval.classifier", v); },
                 [](const RunConfig& c) { return std::string(to_string(c.classifier)); }});
    k.push_back(real_key("eval.train_frac", [](auto& c) -> auto& { return c.train_frac; }));
    k.push_back(size_key("eval.trials", &RunConfig::trials));
    k.push_back(size_key("eval.seed", &RunConfig::eval_seed));
    k.push_back(size_key("eval.threads", &RunConfig::threads));
    k.push_back(count_key("synth.n_per_class", [](auto& c) -> auto& { return c.synth.n_per_class; }));
    k.push_back(real_key("synth.snr_db", [](auto& c) -> auto& { return c.synth.snr_db; }));
    k.push_back(real_key("synth.jitter", [](auto& c) -> auto& { return c.synth.jitter; }));
    k.push_back(real_key("synth.onset_jitter_s", [](auto& c) -> auto& { return c.synth.onset_jitter_s; }));
    k.push_back(real_key("synth.amplitude_jitter_db", [](auto& c) -> auto& { return c.synth.amplitude_jitter_db; }));
    k.push_back(real_key("synth.snr_jitter_db", [](auto& c) -> auto& { return c.synth.snr_jitter_db; }));
    k.push_back(count_key("synth.finger_scatterers", [](auto& c) -> auto& { return c.synth.finger_scatterers; }));
    k.push_back(count_key("synth.seed", [](auto& c) -> auto& { return c.synth.seed; }));
    k.push_back(real_key("synth.sample_rate_hz", [](auto& c) -> auto& { return c.synth.sample_rate_hz; }));
    k.push_back(real_key("synth.segment_s", [](auto& c) -> auto& { return c.synth.segment_s; }));
    k.push_back(count_key("synth.variants", [](auto& c) -> auto& { return c.synth.variants; }));
    k.push_back(real_key("synth.variant_spread", [](auto& c) -> auto& { return c.synth.variant_spread; }));
    k.push_back(count_key("sparse.P", [](auto& c) -> auto& { return c.features.sparsity; }));
    k.push_back(count_key("sparse.time_step", [](auto& c) -> auto& { return c.features.gabor.time_step; }));
    k.push_back(real_key("sparse.freq_step_hz", [](auto& c) -> auto& { return c.features.gabor.freq_step_hz; }));
    k.push_back(real_key("sparse.scale_samples", [](auto& c) -> auto& { return c.features.gabor.scale_samples; }));
    k.push_back(size_key("sparse.seed", &RunConfig::sparse_seed));
    k.push_back(size_key("pca.d", &RunConfig::pca_d));
    k.push_back(size_key("subspace.d", &RunConfig::subspace_d));
    k.push_back(real_key("subspace.tau", [](auto& c) -> auto& { return c.subspace_tau; }));
    k.push_back(real_key("io.sample_rate_hz", [](auto& c) -> auto& { return c.sample_rate_hz; }));
    return k;
  }();
  return table;
}

const Key& find_key(std::string_view name) {
  for (const Key& k : keys()) {
    if (k.name == name) return k;
  }
  throw Error(ErrorCode::kConfigError, "unknown key '" + std::string(name) + "'");
}

void require(bool ok, std::string_view key, std::string_view rule) {
  if (!ok) throw Error(ErrorCode::kConfigError, std::string(key) + " " + std::string(rule));
}

// Message of an Error without its "Code: " prefix.
std::string detail(const Error& e) {
  const std::string_view what = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  return std::string(what.starts_with(prefix) ? what.substr(prefix.size()) : what);
}

// Module validators throw BadConfig; re-raise under the config error code.
template <typename F>
void module_check(F&& check) {
  try {
    check();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, detail(e));
  }
}

}  // namespace

std::string_view to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::kAuto: return "auto";
    case ClassifierKind::kKnn: return "knn";
    case ClassifierKind::kSvm: return "svm";
  }
  return "auto";
}

void RunConfig::validate() const {
  module_check([&] { features.stft.validate(); });
  module_check([&] { features.envelope.validate(); });
  module_check([&] { synth.validate(); });
  require(segment.window_s > 0.0, "segment.window_s", "must be positive");
  require(segment.stride_fraction > 0.0, "segment.stride_fraction", "must be positive");
  require(segment.min_energy_ratio >= 0.0 && segment.min_energy_ratio <= 1.0, "segment.min_energy_ratio",
          "must lie in [0, 1]");
  require(features.envelope_n_out >= 2, "envelope.n_out", "must be at least 2");
  require(features.onset_fraction > 0.0 && features.onset_fraction < 1.0, "empirical.onset_frac",
          "must lie in (0, 1)");
  require(knn.k >= 1, "knn.k", "must be at least 1");
  require(svm.lambda > 0.0, "svm.lambda", "must be positive");
  require(svm.epochs >= 1, "svm.epochs", "must be at least 1");
  require(train_frac > 0.0 && train_frac < 1.0, "eval.train_frac", "must lie in (0, 1)");
  require(trials >= 1, "eval.trials", "must be at least 1");
  require(features.sparsity >= 1, "sparse.P", "must be at least 1");
  require(features.gabor.time_step >= 1, "sparse.time_step", "must be at least 1");
  require(features.gabor.freq_step_hz > 0.0, "sparse.freq_step_hz", "must be positive");
  require(features.gabor.scale_samples > 0.0, "sparse.scale_samples", "must be positive");
  require(pca_d >= 1, "pca.d", "must be at least 1");
  require(subspace_d >= 1, "subspace.d", "must be at least 1");
  require(subspace_tau > 0.0 && subspace_tau <= 1.0, "subspace.tau", "must lie in (0, 1]");
  require(sample_rate_hz > 0.0, "io.sample_rate_hz", "must be positive");
}

void RunConfig::set_seed(std::uint64_t seed) {
  eval_seed = seed;
  synth.seed = seed;
  svm.seed = seed;
  sparse_seed = seed;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const Key& k : keys()) out.push_back(k.name);
  return out;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  find_key(key).set(cfg, trim(value));
}

std::string get_config_value(const RunConfig& cfg, std::string_view key) { return find_key(key).get(cfg); }

RunConfig parse_config(std::string_view text, std::string_view source) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigError, where + "expected key=value, got '" + std::string(line) + "'");
    }
    try {
      set_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigError, where + detail(e));
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string dump_config(const RunConfig& cfg) {
  std::string out = "# effective configuration\n";
  for (const Key& k : keys()) out += k.name + "=" + k.get(cfg) + "\n";
  return out;
}

}  // namespace mdg
