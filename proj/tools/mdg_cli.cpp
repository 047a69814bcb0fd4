// mdg: micro-Doppler gesture toolkit.
//
//   mdg synth        --out DIR
//   mdg spectrogram  FILE --out DIR
//   mdg features     DIR --method envelope|empirical|pca|sparse --out DIR
//   mdg eval         DATASET.csv --out DIR
//   mdg group        IMAGES.csv --out DIR
//
// Common flags: --config FILE, --seed N, --set key=value (repeatable).
// Exit status: 0 success, 1 usage or configuration error, 2 data error.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "mdg/commands.hpp"
#include "mdg/config.hpp"
#include "mdg/error.hpp"
#include "mdg/io.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "key=value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "seed for synthesis, splits and clustering");
  cmd->add_option("--set", o.overrides, "override one key, e.g. eval.trials=10");
  cmd->add_option("--out", o.out, "output directory")->required();
}

mdg::RunConfig resolve(const CommonOptions& o) {
  mdg::RunConfig cfg = o.config_path.empty() ? mdg::RunConfig{} : mdg::load_config(o.config_path);
  for (const std::string& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw mdg::Error(mdg::ErrorCode::kConfigError, "--set expects key=value, got '" + kv + "'");
    }
    mdg::set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) cfg.set_seed(*o.seed);
  cfg.validate();
  return cfg;
}

bool is_usage_error(mdg::ErrorCode code) {
  return code == mdg::ErrorCode::kConfigError || code == mdg::ErrorCode::kBadConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"micro-Doppler hand gesture analysis"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string input;
  std::string method;

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic gesture dataset");
  add_common(synth, opt);

  CLI::App* spectrogram = app.add_subcommand("spectrogram", "spectrogram CSV and PGM of one recording");
  spectrogram->add_option("input", input, "I/Q file (.csv or float32 binary)")->required();
  add_common(spectrogram, opt);

  CLI::App* features = app.add_subcommand("features", "feature dataset of a manifest directory");
  features->add_option("input", input, "directory holding manifest.csv")->required();
  features->add_option("--method", method, "envelope, empirical, pca or sparse")->required();
  add_common(features, opt);

  CLI::App* eval = app.add_subcommand("eval", "Monte Carlo evaluation of a feature dataset");
  eval->add_option("dataset", input, "features.csv")->required();
  add_common(eval, opt);

  CLI::App* group = app.add_subcommand("group", "group labels by image-subspace similarity");
  group->add_option("dataset", input, "image (pca) features.csv")->required();
  add_common(group, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const mdg::RunConfig cfg = resolve(opt);
    if (synth->parsed()) {
      const auto records = mdg::cmd_synth(cfg, opt.out);
      std::printf("wrote %zu segments to %s\n", records.size(), opt.out.c_str());
    } else if (spectrogram->parsed()) {
      const mdg::Spectrogram s = mdg::cmd_spectrogram(input, cfg, opt.out);
      std::printf("%zu frames x %zu bins\n", s.frames, s.bins);
    } else if (features->parsed()) {
      const mdg::FeatureKind kind = mdg::parse_feature_kind(method);
      const mdg::LabeledDataset d = mdg::cmd_features(input, kind, cfg, opt.out);
      std::printf("%zu rows x %zu features\n", d.size(), d.columns.size());
    } else if (eval->parsed()) {
      const mdg::EvalReport r = mdg::cmd_eval(input, cfg, opt.out);
      std::printf("accuracy %s over %zu trials\n", mdg::io::format_double(r.mean_accuracy).c_str(), r.n_trials);
    } else if (group->parsed()) {
      const mdg::GroupResult r = mdg::cmd_group(input, cfg, opt.out);
      std::printf("%zu labels in %zu groups\n", r.labels.size(), r.groups.size());
    }
  } catch (const mdg::Error& e) {
    std::fprintf(stderr, "mdg: %s\n", e.what());
    return is_usage_error(e.code()) ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mdg: %s\n", e.what());
    return kExitData;
  }
  return 0;
}
