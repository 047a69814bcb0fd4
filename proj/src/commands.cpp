#include "mdg/commands.hpp"

#include <cmath>
#include <map>

#include "mdg/error.hpp"
#include "mdg/io.hpp"
#include "mdg/pipeline.hpp"
#include "mdg/subspace.hpp"

namespace mdg {
namespace {

void prepare_out_dir(const fs::path& dir, const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  io::write_text(dir / kEffectiveConfigFile, dump_config(cfg));
}

std::vector<double> to_doubles(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

std::vector<LabeledSignal> SignalSet::view() const {
  std::vector<LabeledSignal> out;
  out.reserve(signals.size());
  for (std::size_t i = 0; i < signals.size(); ++i) out.push_back({&signals[i], labels[i], ids[i]});
  return out;
}

SignalSet load_signal_set(const fs::path& dir, const RunConfig& cfg) {
  const std::vector<io::ManifestEntry> manifest = io::read_manifest(dir / kManifestFile);
  SignalSet set;
  for (const io::ManifestEntry& e : manifest) {
    IQSignal x = io::read_iq(dir / e.file, std::nullopt, cfg.sample_rate_hz);
    const auto window = static_cast<std::size_t>(std::llround(cfg.segment.window_s * x.sample_rate_hz()));
    if (x.size() <= window) {
      set.signals.push_back(std::move(x));
      set.labels.push_back(e.label);
      set.ids.push_back(e.file);
      continue;
    }
    std::vector<IQSignal> parts = segment_gesture(x, cfg.segment);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      set.signals.push_back(std::move(parts[k]));
      set.labels.push_back(e.label);
      set.ids.push_back(e.file + "#" + std::to_string(k));
    }
  }
  return set;
}

std::unique_ptr<Pipeline> make_pipeline(FeatureKind kind, const RunConfig& cfg) {
  KnnConfig knn = cfg.knn;
  knn.nyquist_hz = 0.5 * cfg.sample_rate_hz;
  if (cfg.classifier == ClassifierKind::kSvm) return std::make_unique<SvmPipeline>(cfg.svm);
  if (cfg.classifier == ClassifierKind::kKnn && kind != FeatureKind::kEmpirical) {
    return std::make_unique<KnnPipeline>(knn, cfg.threads);
  }
  switch (kind) {
    case FeatureKind::kEnvelope: return std::make_unique<KnnPipeline>(knn, cfg.threads);
    // Raw T, R and B_w columns, standardized on each training split.
    case FeatureKind::kEmpirical:
      return std::make_unique<StandardizedKnnPipeline>(knn, std::vector<std::size_t>{3, 4, 5});
    case FeatureKind::kImage: return std::make_unique<PcaPipeline>(cfg.pca_d);
    case FeatureKind::kTrajectory:
      return std::make_unique<SparsePipeline>(TrajectoryAxes{cfg.segment.window_s, 0.5 * cfg.sample_rate_hz},
                                              cfg.sparse_seed);
  }
  throw Error(ErrorCode::kConfigError, "no classifier for this dataset kind");
}

EvalReport run_eval(const LabeledDataset& data, const RunConfig& cfg) {
  std::unique_ptr<Pipeline> p = make_pipeline(data.kind, cfg);
  return evaluate(data, *p, cfg.train_frac, cfg.trials, cfg.eval_seed, cfg.threads);
}

std::vector<SynthRecord> cmd_synth(const RunConfig& cfg, const fs::path& out_dir) {
  std::vector<SynthRecord> records = synth_dataset(cfg.synth);
  prepare_out_dir(out_dir, cfg);
  std::vector<io::ManifestEntry> manifest;
  for (const SynthRecord& r : records) {
    io::write_iq(out_dir / r.file, r.signal);
    manifest.push_back({r.file, r.label, r.seed, r.snr_db});
  }
  io::write_manifest(out_dir / kManifestFile, manifest);
  return records;
}

Spectrogram cmd_spectrogram(const fs::path& input, const RunConfig& cfg, const fs::path& out_dir) {
  const IQSignal x = io::read_iq(input, std::nullopt, cfg.sample_rate_hz);
  const Spectrogram centred = center_spectrum(stft(x, cfg.features.stft));
  prepare_out_dir(out_dir, cfg);
  io::write_spectrogram_csv(out_dir / "spectrogram.csv", centred);
  io::write_pgm(out_dir / "spectrogram.pgm", centred);
  return centred;
}

LabeledDataset cmd_features(const fs::path& input_dir, FeatureKind kind, const RunConfig& cfg,
                            const fs::path& out_dir) {
  const SignalSet set = load_signal_set(input_dir, cfg);
  const std::vector<LabeledSignal> view = set.view();
  LabeledDataset data = extract_features(view, kind, cfg.features, cfg.threads);
  prepare_out_dir(out_dir, cfg);
  io::write_dataset(out_dir / "features.csv", data);
  return data;
}

EvalReport cmd_eval(const fs::path& dataset_csv, const RunConfig& cfg, const fs::path& out_dir) {
  const LabeledDataset data = io::read_dataset(dataset_csv);
  std::unique_ptr<Pipeline> p = make_pipeline(data.kind, cfg);
  const EvalReport report = evaluate(data, *p, cfg.train_frac, cfg.trials, cfg.eval_seed, cfg.threads);
  prepare_out_dir(out_dir, cfg);
  io::write_confusion_csv(out_dir / "confusion.csv", report.labels, report.mean_confusion);
  io::write_confusion_csv(out_dir / "counts.csv", report.labels, to_doubles(report.total_counts));
  std::string trials = "trial,accuracy\n";
  for (std::size_t t = 0; t < report.trial_accuracy.size(); ++t) {
    trials += std::to_string(t) + "," + io::format_double(report.trial_accuracy[t]) + "\n";
  }
  io::write_text(out_dir / "trials.csv", trials);
  io::write_summary(out_dir / "summary.txt", report, p->name());
  return report;
}

GroupResult group_images(const LabeledDataset& images, const RunConfig& cfg) {
  if (images.kind != FeatureKind::kImage) {
    throw Error(ErrorCode::kShapeMismatch, "grouping needs an image (pca) dataset");
  }
  images.validate();
  std::map<int, std::vector<GrayImage>> by_label;
  for (const Sample& s : images.samples) by_label[s.label].push_back(GrayImage::from_vector(s.features));
  if (by_label.empty()) throw Error(ErrorCode::kNoClasses, "image dataset is empty");

  GroupResult r;
  std::vector<SubspaceModel> models;
  for (const auto& [label, imgs] : by_label) {
    r.labels.push_back(label);
    models.push_back(pca_basis(ImageStack::from_images(imgs, std::vector<int>(imgs.size(), label)), cfg.subspace_d));
  }
  r.similarity = similarity_matrix(models);
  r.groups = group_classes(r.similarity, cfg.subspace_tau);
  return r;
}

GroupResult cmd_group(const fs::path& dataset_csv, const RunConfig& cfg, const fs::path& out_dir) {
  GroupResult r = group_images(io::read_dataset(dataset_csv), cfg);
  prepare_out_dir(out_dir, cfg);
  std::vector<std::string> ids;
  for (int l : r.labels) ids.push_back(std::to_string(l));
  io::write_similarity_csv(out_dir / "similarity.csv", ids, r.similarity);
  io::write_partition(out_dir / "partition.txt", ids, r.groups);
  return r;
}

}  // namespace mdg
