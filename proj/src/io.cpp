#include "mdg/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mdg/error.hpp"

namespace mdg::io {
namespace {

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

int parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  int v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw Error(ErrorCode::kFormatError, "bad integer for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw Error(ErrorCode::kFormatError, "bad integer for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    v = ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) | (v >> 24);
  }
  return v;
}

void put_f32(std::ostream& out, double value) {
  const std::uint32_t bits = to_le(std::bit_cast<std::uint32_t>(static_cast<float>(value)));
  std::array<char, 4> b;
  std::memcpy(b.data(), &bits, 4);
  out.write(b.data(), 4);
}

float get_f32(const char* p) {
  std::uint32_t bits;
  std::memcpy(&bits, p, 4);
  return std::bit_cast<float>(to_le(bits));
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf;
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kFormatError, "bad number for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::map<std::string, std::string> read_key_values(const fs::path& path) {
  auto in = open_in(path);
  std::map<std::string, std::string> kv;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != s.npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == s.npos) {
      throw Error(ErrorCode::kFormatError, path.string() + ":" + std::to_string(no) + ": expected key=value");
    }
    kv[std::string(trim(s.substr(0, eq)))] = std::string(trim(s.substr(eq + 1)));
  }
  return kv;
}

void write_key_values(const fs::path& path, const std::map<std::string, std::string>& kv) {
  auto out = open_out(path);
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
  finish(out, path);
}

fs::path meta_path(const fs::path& data) { return fs::path(data.string() + ".meta"); }

std::vector<Complex> read_iq_csv(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kFormatError, path.string() + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() != 2 || header[0] != "i" || header[1] != "q") {
    throw Error(ErrorCode::kFormatError, path.string() + ": expected header 'i,q'");
  }
  std::vector<Complex> x;
  for (std::size_t no = 2; std::getline(in, line); ++no) {
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2) {
      throw Error(ErrorCode::kFormatError, path.string() + ":" + std::to_string(no) + ": expected two fields");
    }
    x.emplace_back(parse_double(f[0], "i"), parse_double(f[1], "q"));
  }
  if (x.empty()) throw Error(ErrorCode::kFormatError, path.string() + ": no samples");
  return x;
}

void write_iq_csv(const fs::path& path, std::span<const Complex> samples) {
  auto out = open_out(path);
  out << "i,q\n";
  for (const Complex& z : samples) out << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  finish(out, path);
}

std::vector<Complex> read_iq_binary(const fs::path& path) {
  auto in = open_in(path, std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.empty()) throw Error(ErrorCode::kFormatError, path.string() + ": no samples");
  if (bytes.size() % 8 != 0) {
    throw Error(ErrorCode::kFormatError,
                path.string() + ": size " + std::to_string(bytes.size()) + " is not a whole number of I/Q pairs");
  }
  std::vector<Complex> x(bytes.size() / 8);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = Complex(get_f32(bytes.data() + 8 * i), get_f32(bytes.data() + 8 * i + 4));
  }
  return x;
}

void write_iq_binary(const fs::path& path, std::span<const Complex> samples) {
  auto out = open_out(path, std::ios::binary);
  for (const Complex& z : samples) {
    put_f32(out, z.real());
    put_f32(out, z.imag());
  }
  finish(out, path);
}

IQSignal read_iq(const fs::path& path, std::optional<double> sample_rate_hz, double fallback_hz) {
  double fs_hz = fallback_hz;
  if (sample_rate_hz) {
    fs_hz = *sample_rate_hz;
  } else if (fs::exists(meta_path(path))) {
    const auto kv = read_key_values(meta_path(path));
    if (auto it = kv.find("sample_rate_hz"); it != kv.end()) fs_hz = parse_double(it->second, "sample_rate_hz");
  }
  const bool csv = path.extension() == ".csv";
  return IQSignal(csv ? read_iq_csv(path) : read_iq_binary(path), fs_hz);
}

void write_iq(const fs::path& path, const IQSignal& signal) {
  write_iq_binary(path, signal.samples());
  write_key_values(meta_path(path), {{"sample_rate_hz", format_double(signal.sample_rate_hz())}});
}

void write_spectrogram_csv(const fs::path& path, const Spectrogram& spec) {
  auto out = open_out(path);
  for (std::size_t n = 0; n < spec.frames; ++n) {
    for (std::size_t k = 0; k < spec.bins; ++k) {
      if (k) out << ',';
      out << format_double(spec.at(n, k));
    }
    out << '\n';
  }
  finish(out, path);

  const fs::path axes(path.string() + ".axes.csv");
  auto ax = open_out(axes);
  ax << "axis,index,value\n";
  for (std::size_t n = 0; n < spec.frames; ++n) ax << "frame_time_s," << n << ',' << format_double(spec.frame_times_s[n]) << '\n';
  for (std::size_t k = 0; k < spec.bins; ++k) ax << "freq_hz," << k << ',' << format_double(spec.freqs_hz[k]) << '\n';
  finish(ax, axes);
}

void write_pgm(const fs::path& path, const Spectrogram& centred) {
  if (centred.layout != SpectrumLayout::kCentered) {
    throw Error(ErrorCode::kWrongLayout, "PGM export expects a centred spectrogram");
  }
  const std::size_t width = centred.frames;
  const std::size_t height = centred.bins;
  std::vector<unsigned char> pix(width * height, 0);
  const std::vector<double> db = floored_db(centred.power);
  if (!db.empty()) {
    const auto [lo, hi] = std::minmax_element(db.begin(), db.end());
    const double span = *hi - *lo;
    for (std::size_t n = 0; n < width; ++n) {
      for (std::size_t k = 0; k < height; ++k) {
        const double v = span > 0.0 ? (db[n * height + k] - *lo) / span : 0.0;
        // Highest frequency (last centred column) on the top row.
        pix[(height - 1 - k) * width + n] = static_cast<unsigned char>(std::lround(255.0 * v));
      }
    }
  }
  auto out = open_out(path, std::ios::binary);
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pix.data()), static_cast<std::streamsize>(pix.size()));
  finish(out, path);
}

void write_manifest(const fs::path& path, std::span<const ManifestEntry> entries) {
  auto out = open_out(path);
  out << "file,label,seed,snr_db\n";
  for (const auto& e : entries) out << e.file << ',' << e.label << ',' << e.seed << ',' << format_double(e.snr_db) << '\n';
  finish(out, path);
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kFormatError, path.string() + ": empty manifest");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "file" || header[1] != "label") {
    throw Error(ErrorCode::kFormatError, path.string() + ": manifest header must start with file,label");
  }
  std::vector<ManifestEntry> out;
  for (std::size_t no = 2; std::getline(in, line); ++no) {
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) {
      throw Error(ErrorCode::kFormatError, path.string() + ":" + std::to_string(no) + ": wrong field count");
    }
    ManifestEntry e;
    e.file = f[0];
    e.label = parse_int(f[1], "label");
    for (std::size_t c = 2; c < header.size(); ++c) {
      if (header[c] == "seed") e.seed = parse_u64(f[c], "seed");
      if (header[c] == "snr_db") e.snr_db = parse_double(f[c], "snr_db");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> envelope_columns(std::size_t n_out) {
  std::vector<std::string> c;
  for (std::size_t i = 0; i < n_out; ++i) c.push_back("eu_" + std::to_string(i));
  for (std::size_t i = 0; i < n_out; ++i) c.push_back("el_" + std::to_string(i));
  return c;
}

std::vector<std::string> empirical_columns() {
  return {"T_z", "R_z", "Bw_z", "T_s", "R", "Bw_hz", "ts_s", "te_s", "fp_hz", "fn_hz"};
}

std::vector<std::string> image_columns() {
  std::vector<std::string> c;
  for (std::size_t i = 0; i < GrayImage::kPixels; ++i) c.push_back("px_" + std::to_string(i));
  return c;
}

std::vector<std::string> trajectory_columns(std::size_t sparsity) {
  std::vector<std::string> c;
  for (std::size_t i = 1; i <= sparsity; ++i) {
    for (const char* p : {"t", "f", "a"}) c.push_back(p + std::to_string(i));
  }
  return c;
}

void write_dataset(const fs::path& path, const LabeledDataset& data) {
  data.validate();
  auto out = open_out(path);
  out << "label,source_id";
  for (const auto& c : data.columns) out << ',' << c;
  out << '\n';
  for (const Sample& s : data.samples) {
    out << s.label << ',' << s.source_id;
    for (double v : s.features) out << ',' << format_double(v);
    out << '\n';
  }
  finish(out, path);
}

LabeledDataset read_dataset(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kFormatError, path.string() + ": empty dataset");
  auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "label" || header[1] != "source_id") {
    throw Error(ErrorCode::kFormatError, path.string() + ": header must start with label,source_id and name features");
  }
  LabeledDataset data;
  data.columns.assign(header.begin() + 2, header.end());
  const std::string& first = data.columns.front();
  if (first == "eu_0") {
    data.kind = FeatureKind::kEnvelope;
  } else if (first == "T_z") {
    data.kind = FeatureKind::kEmpirical;
  } else if (first == "px_0") {
    data.kind = FeatureKind::kImage;
  } else if (first == "t1") {
    data.kind = FeatureKind::kTrajectory;
  } else {
    throw Error(ErrorCode::kFormatError, path.string() + ": cannot infer feature kind from column '" + first + "'");
  }
  for (std::size_t no = 2; std::getline(in, line); ++no) {
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) {
      throw Error(ErrorCode::kFormatError, path.string() + ":" + std::to_string(no) + ": wrong field count");
    }
    Sample s;
    s.label = parse_int(f[0], "label");
    s.source_id = f[1];
    s.features.reserve(f.size() - 2);
    for (std::size_t c = 2; c < f.size(); ++c) s.features.push_back(parse_double(f[c], header[c]));
    data.samples.push_back(std::move(s));
  }
  return data;
}

void write_envelope_csv(const fs::path& path, const EnvelopePair& env) {
  auto out = open_out(path);
  out << "frame_time_s,e_upper_hz,e_lower_hz\n";
  for (std::size_t n = 0; n < env.frames(); ++n) {
    out << format_double(env.frame_times_s[n]) << ',' << format_double(env.upper[n]) << ','
        << format_double(env.lower[n]) << '\n';
  }
  finish(out, path);
}

void write_empirical_csv(const fs::path& path, std::span<const EmpiricalRow> rows) {
  auto out = open_out(path);
  out << "label,T_s,R,Bw_hz,ts_s,te_s,fp_hz,fn_hz\n";
  for (const auto& r : rows) {
    const auto& e = r.features;
    out << r.label;
    for (double v : {e.event_len_s, e.pn_ratio, e.bandwidth_hz, e.t_start_s, e.t_end_s, e.f_pos_hz, e.f_neg_hz}) {
      out << ',' << format_double(v);
    }
    out << '\n';
  }
  finish(out, path);
}

void write_confusion_csv(const fs::path& path, const std::vector<int>& labels, const std::vector<double>& matrix) {
  const std::size_t c = labels.size();
  if (matrix.size() != c * c) throw Error(ErrorCode::kShapeMismatch, "confusion matrix size");
  auto out = open_out(path);
  out << "true\\pred";
  for (int l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < c; ++i) {
    out << labels[i];
    for (std::size_t j = 0; j < c; ++j) out << ',' << format_double(matrix[i * c + j]);
    out << '\n';
  }
  finish(out, path);
}

void write_summary(const fs::path& path, const EvalReport& report, const std::string& pipeline) {
  double var = 0.0;
  for (double a : report.trial_accuracy) var += (a - report.mean_accuracy) * (a - report.mean_accuracy);
  const double sd = report.n_trials > 1 ? std::sqrt(var / static_cast<double>(report.n_trials - 1)) : 0.0;
  auto out = open_out(path);
  out << "pipeline=" << pipeline << '\n'
      << "accuracy=" << format_double(report.mean_accuracy) << '\n'
      << "accuracy_sd=" << format_double(sd) << '\n'
      << "trials=" << report.n_trials << '\n'
      << "seed=" << report.seed << '\n'
      << "classes=" << report.labels.size() << '\n';
  finish(out, path);
}

void write_similarity_csv(const fs::path& path, const std::vector<std::string>& ids, const Eigen::MatrixXd& sim) {
  auto out = open_out(path);
  out << "id";
  for (const auto& id : ids) out << ',' << id;
  out << '\n';
  for (Eigen::Index i = 0; i < sim.rows(); ++i) {
    out << ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < sim.cols(); ++j) out << ',' << format_double(sim(i, j));
    out << '\n';
  }
  finish(out, path);
}

void write_partition(const fs::path& path, const std::vector<std::string>& ids,
                     const std::vector<std::vector<std::size_t>>& groups) {
  auto out = open_out(path);
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << ids[g[i]];
    out << '\n';
  }
  finish(out, path);
}

void write_text(const fs::path& path, std::string_view text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

}  // namespace mdg::io
