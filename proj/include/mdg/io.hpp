#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdg/dataset.hpp"
#include "mdg/empirical.hpp"
#include "mdg/envelope.hpp"
#include "mdg/evaluate.hpp"
#include "mdg/signal.hpp"

namespace mdg::io {

namespace fs = std::filesystem;

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text, std::string_view what);
std::vector<std::string> split_csv_line(std::string_view line);

/// key=value lines; '#' starts a comment. Throws FormatError on a line
/// without '='.
std::map<std::string, std::string> read_key_values(const fs::path& path);
void write_key_values(const fs::path& path, const std::map<std::string, std::string>& kv);

/// Sidecar metadata path of a data file: "<file>.meta".
fs::path meta_path(const fs::path& data);

/// CSV with header "i,q". Throws FormatError / IoError.
std::vector<Complex> read_iq_csv(const fs::path& path);
void write_iq_csv(const fs::path& path, std::span<const Complex> samples);

/// Little-endian float32 I,Q pairs. A trailing partial pair is a FormatError.
std::vector<Complex> read_iq_binary(const fs::path& path);
void write_iq_binary(const fs::path& path, std::span<const Complex> samples);

/// Reads a recording by extension (.csv, otherwise binary). The sample rate
/// is, in order of preference: `sample_rate_hz`, the sidecar's
/// sample_rate_hz key, then `fallback_hz`.
IQSignal read_iq(const fs::path& path, std::optional<double> sample_rate_hz, double fallback_hz);

/// Writes the binary samples plus a sidecar with the sample rate.
void write_iq(const fs::path& path, const IQSignal& signal);

/// Power matrix CSV (one row per frame) plus "<file>.axes.csv" holding
/// axis,index,value rows for frame times and bin frequencies.
void write_spectrogram_csv(const fs::path& path, const Spectrogram& spec);

/// 8-bit binary PGM of a centred spectrogram: one column per frame, one row
/// per bin with the highest frequency on top, 60 dB floored and min-max
/// scaled. An all-zero spectrogram gives a uniform black image.
void write_pgm(const fs::path& path, const Spectrogram& centred);

struct ManifestEntry {
  std::string file;
  int label = 0;
  std::uint64_t seed = 0;
  double snr_db = 0.0;
};

void write_manifest(const fs::path& path, std::span<const ManifestEntry> entries);
/// Accepts "file,label" with optional seed and snr_db columns.
std::vector<ManifestEntry> read_manifest(const fs::path& path);

/// label,source_id,<feature columns>.
void write_dataset(const fs::path& path, const LabeledDataset& data);
/// The feature kind is inferred from the first feature column name.
LabeledDataset read_dataset(const fs::path& path);

/// Column names used for each kind.
std::vector<std::string> envelope_columns(std::size_t n_out);
std::vector<std::string> empirical_columns();
std::vector<std::string> image_columns();
std::vector<std::string> trajectory_columns(std::size_t sparsity);

void write_envelope_csv(const fs::path& path, const EnvelopePair& env);

struct EmpiricalRow {
  int label = 0;
  EmpiricalFeatures features;
};
void write_empirical_csv(const fs::path& path, std::span<const EmpiricalRow> rows);

/// Confusion CSV: header "true\\pred,<labels>", one row per true label.
void write_confusion_csv(const fs::path& path, const std::vector<int>& labels,
                         const std::vector<double>& matrix);
void write_summary(const fs::path& path, const EvalReport& report, const std::string& pipeline);

void write_similarity_csv(const fs::path& path, const std::vector<std::string>& ids,
                          const Eigen::MatrixXd& sim);
void write_partition(const fs::path& path, const std::vector<std::string>& ids,
                     const std::vector<std::vector<std::size_t>>& groups);

void write_text(const fs::path& path, std::string_view text);

}  // namespace mdg::io
