#include "drbench/dataset_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace drbench {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

double parse_number(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw DataError("cannot parse number '" + std::string(field) + "'");
  }
  return v;
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_number(m(i, j));
    }
    os << '\n';
  }
}

Matrix read_matrix_csv(const fs::path& file, Eigen::Index expected_cols) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());
  std::vector<double> values;
  Eigen::Index cols = expected_cols;
  Eigen::Index rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    Eigen::Index count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(parse_number(rest.substr(0, comma)));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols < 0) cols = count;
    if (count != cols) {
      throw DataError(file.string() + ": line " + std::to_string(rows + 1) + " has " + std::to_string(count) +
                      " values, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (cols < 0) cols = 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  return m;
}

std::string frame_file_name(std::size_t t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t%04zu.csv", t);
  return buf;
}

namespace {

json read_meta(const fs::path& dir) {
  const fs::path file = dir / "meta.json";
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(file.string() + ": " + e.what());
  }
}

template <typename T>
T meta_field(const json& meta, const char* key, const fs::path& dir) {
  if (!meta.contains(key)) throw DataError((dir / "meta.json").string() + ": missing field '" + key + "'");
  try {
    return meta.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DataError((dir / "meta.json").string() + ": field '" + key + "': " + e.what());
  }
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot write " + file.string());
  out << text;
}

void write_frames(const fs::path& dir, const std::vector<Matrix>& frames) {
  for (std::size_t t = 0; t < frames.size(); ++t) {
    std::ostringstream os;
    write_matrix_csv(os, frames[t]);
    write_text(dir / frame_file_name(t), os.str());
  }
}

void write_labels(const fs::path& dir, const std::vector<int>& labels) {
  std::ostringstream os;
  for (int l : labels) os << l << '\n';
  write_text(dir / "labels.csv", os.str());
}

std::vector<Matrix> read_frames(const fs::path& dir, std::size_t T, Eigen::Index N, Eigen::Index cols) {
  std::vector<Matrix> frames;
  frames.reserve(T);
  for (std::size_t t = 0; t < T; ++t) {
    Matrix m = read_matrix_csv(dir / frame_file_name(t), cols);
    if (m.rows() != N) {
      throw DataError((dir / frame_file_name(t)).string() + ": " + std::to_string(m.rows()) + " rows, meta.json says " +
                      std::to_string(N));
    }
    frames.push_back(std::move(m));
  }
  return frames;
}

}  // namespace

void write_dataset(const fs::path& dir, const DynamicDataset& d) {
  fs::create_directories(dir);
  json meta = {{"name", d.name},
               {"N", d.num_samples()},
               {"T", d.num_timesteps()},
               {"n", d.num_dims()},
               {"class_names", d.class_names}};
  write_text(dir / "meta.json", meta.dump(2) + "\n");
  write_labels(dir, d.labels);
  write_frames(dir, d.revisions);
}

DynamicDataset read_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError("dataset directory not found: " + dir.string());
  const json meta = read_meta(dir);
  DynamicDataset d;
  d.name = meta_field<std::string>(meta, "name", dir);
  const auto N = meta_field<Eigen::Index>(meta, "N", dir);
  const auto T = meta_field<std::size_t>(meta, "T", dir);
  const auto n = meta_field<Eigen::Index>(meta, "n", dir);
  d.class_names = meta_field<std::vector<std::string>>(meta, "class_names", dir);

  const Matrix labels = read_matrix_csv(dir / "labels.csv", 1);
  if (labels.rows() != N) {
    throw DataError((dir / "labels.csv").string() + ": " + std::to_string(labels.rows()) + " labels, expected " +
                    std::to_string(N));
  }
  d.labels.resize(static_cast<std::size_t>(N));
  for (Eigen::Index i = 0; i < N; ++i) {
    const double v = labels(i, 0);
    if (v != static_cast<double>(static_cast<int>(v))) {
      throw DataError((dir / "labels.csv").string() + ": non-integer label on line " + std::to_string(i + 1));
    }
    d.labels[static_cast<std::size_t>(i)] = static_cast<int>(v);
  }
  d.revisions = read_frames(dir, T, N, n);
  return d;
}

void write_projection(const fs::path& dir, const ProjectionSequence& p, const DynamicDataset& source) {
  fs::create_directories(dir);
  const std::size_t N = p.frames.empty() ? 0 : static_cast<std::size_t>(p.frames.front().rows());
  json meta = {{"name", p.dataset_name + "/" + p.technique},
               {"N", N},
               {"T", p.frames.size()},
               {"n", 2},
               {"class_names", source.class_names},
               {"technique", p.technique},
               {"dataset_name", p.dataset_name}};
  write_text(dir / "meta.json", meta.dump(2) + "\n");
  write_labels(dir, source.labels);
  write_frames(dir, p.frames);
}

ProjectionSequence read_projection(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError("projection directory not found: " + dir.string());
  const json meta = read_meta(dir);
  ProjectionSequence p;
  p.technique = meta_field<std::string>(meta, "technique", dir);
  p.dataset_name = meta_field<std::string>(meta, "dataset_name", dir);
  const auto N = meta_field<Eigen::Index>(meta, "N", dir);
  const auto T = meta_field<std::size_t>(meta, "T", dir);
  const auto n = meta_field<Eigen::Index>(meta, "n", dir);
  if (n != 2) throw DataError((dir / "meta.json").string() + ": projection must have n = 2");
  p.frames = read_frames(dir, T, N, 2);
  return p;
}

}  // namespace drbench
