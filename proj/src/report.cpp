#include "drbench/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "drbench/dataset_io.hpp"
#include "drbench/temporal_quality.hpp"

namespace drbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json traits_to_json(const DatasetTraits& tr) {
  return {{"N", tr.num_samples},       {"T", tr.num_timesteps},
          {"n", tr.num_dims},          {"classes", tr.num_classes},
          {"rho_n", tr.intrinsic_dim_ratio}, {"sigma_n", tr.sparsity_ratio}};
}

DatasetTraits traits_from_json(const json& j) {
  DatasetTraits tr;
  tr.num_samples = j.at("N").get<std::size_t>();
  tr.num_timesteps = j.at("T").get<std::size_t>();
  tr.num_dims = j.at("n").get<std::size_t>();
  tr.num_classes = j.at("classes").get<std::size_t>();
  tr.intrinsic_dim_ratio = j.at("rho_n").get<double>();
  tr.sparsity_ratio = j.at("sigma_n").get<double>();
  return tr;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string identifiers_header() {
  std::string h = "technique,dataset";
  for (auto name : metric_names()) h += "," + std::string(name);
  return h + "\n";
}

void write_file(const fs::path& file, const std::string& text, ExportSummary& summary) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot write " + file.string());
  out << text;
  if (!out) throw DataError("write failed: " + file.string());
  summary.files.push_back(file);
}

// Two decimals are plenty for SVG coordinates and keep files stable.
std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                              "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* class_color(int label) { return kPalette[static_cast<std::size_t>(label) % kPalette.size()]; }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Dark blue (0) to near white (1).
std::string heat_color(double v) {
  if (std::isnan(v)) return "#cccccc";
  v = std::clamp(v, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(8 + v * (247 - 8)));
  const int g = static_cast<int>(std::lround(48 + v * (251 - 48)));
  const int b = static_cast<int>(std::lround(107 + v * (255 - 107)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  return out;
}

}  // namespace

json table_to_json(const BenchmarkTable& t) {
  json cells = json::array();
  for (const CellResult& c : t.cells) {
    json cj = {{"technique", c.technique}, {"dataset", c.dataset}, {"status", c.ok ? "ok" : "failed"},
               {"warnings", c.warnings}};
    if (c.ok) {
      const json r = report_to_json(c.report);
      cj["metrics"] = r.at("metrics");
      cj["curves"] = r.at("curves");
    } else {
      cj["error"] = c.error;
    }
    cells.push_back(std::move(cj));
  }
  json traits = json::array();
  for (std::size_t d = 0; d < t.datasets.size(); ++d) {
    traits.push_back(t.traits[d] ? traits_to_json(*t.traits[d]) : json(nullptr));
  }
  const Provenance& p = t.provenance;
  return {{"techniques", t.techniques},
          {"datasets", t.datasets},
          {"dataset_errors", t.dataset_errors},
          {"traits", traits},
          {"cells", cells},
          {"provenance",
           {{"config_hash", p.config_hash},
            {"technique_seeds", p.technique_seeds},
            {"dataset_seeds", p.dataset_seeds},
            {"started_at", p.started_at},
            {"finished_at", p.finished_at}}}};
}

BenchmarkTable table_from_json(const json& j) {
  BenchmarkTable t;
  try {
    t.techniques = j.at("techniques").get<std::vector<std::string>>();
    t.datasets = j.at("datasets").get<std::vector<std::string>>();
    t.dataset_errors = j.value("dataset_errors", std::vector<std::string>(t.datasets.size()));
    for (const json& tj : j.at("traits")) {
      t.traits.push_back(tj.is_null() ? std::nullopt : std::optional<DatasetTraits>(traits_from_json(tj)));
    }
    for (const json& cj : j.at("cells")) {
      CellResult c;
      c.technique = cj.at("technique").get<std::string>();
      c.dataset = cj.at("dataset").get<std::string>();
      c.ok = cj.at("status").get<std::string>() == "ok";
      c.warnings = cj.value("warnings", std::vector<std::string>{});
      if (c.ok) c.report = report_from_json(cj);
      else c.error = cj.value("error", std::string{});
      t.cells.push_back(std::move(c));
    }
    const json& p = j.at("provenance");
    t.provenance.config_hash = p.value("config_hash", std::string{});
    t.provenance.technique_seeds = p.value("technique_seeds", std::vector<std::uint64_t>{});
    t.provenance.dataset_seeds = p.value("dataset_seeds", std::vector<std::uint64_t>{});
    t.provenance.started_at = p.value("started_at", std::string{});
    t.provenance.finished_at = p.value("finished_at", std::string{});
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed results: ") + e.what());
  }
  if (t.cells.size() != t.techniques.size() * t.datasets.size() || t.traits.size() != t.datasets.size()) {
    throw DataError("malformed results: table shape does not match technique and dataset lists");
  }
  t.dataset_data.resize(t.datasets.size());
  return t;
}

std::string results_csv(const BenchmarkTable& t) {
  std::string out = identifiers_header();
  for (const CellResult& c : t.cells) {
    out += csv_field(c.technique) + "," + csv_field(c.dataset);
    for (double v : c.report.values) out += "," + (c.ok ? format_number(v) : std::string());
    out += "\n";
  }
  return out;
}

std::string normalized_csv(const BenchmarkTable& t, const NormalizedTable& norm) {
  std::string out = identifiers_header();
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    out += csv_field(t.cells[i].technique) + "," + csv_field(t.cells[i].dataset);
    for (double v : norm.rows[i]) out += "," + (std::isnan(v) ? std::string() : format_number(v));
    out += "\n";
  }
  return out;
}

std::string trait_correlation_csv(const TraitCorrelation& corr) {
  std::string out = "trait";
  for (const char* g : kMetricGroupNames) out += std::string(",") + g;
  out += "\n";
  for (std::size_t tr = 0; tr < kTraitNames.size(); ++tr) {
    out += kTraitNames[tr];
    for (const auto& v : corr[tr]) out += "," + (v ? format_number(*v) : std::string("undefined"));
    out += "\n";
  }
  return out;
}

std::vector<CsvRow> parse_results_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<CsvRow> rows;
  if (!std::getline(in, line)) throw DataError("empty results CSV");
  if (split_csv_line(line).size() != 2 + kMetricCount) throw DataError("unexpected results CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2 + kMetricCount) throw DataError("results CSV row has " + std::to_string(fields.size()) + " fields");
    CsvRow row;
    row.technique = fields[0];
    row.dataset = fields[1];
    for (std::size_t c = 0; c < kMetricCount; ++c)
      if (!fields[2 + c].empty()) row.values[c] = parse_number(fields[2 + c]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string trails_svg(const DynamicDataset& d, const ProjectionSequence& p) {
  constexpr double kSize = 400.0, kMargin = 10.0;
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  for (const Matrix& f : p.frames) {
    if (f.rows() == 0) continue;
    xmin = std::min(xmin, f.col(0).minCoeff());
    xmax = std::max(xmax, f.col(0).maxCoeff());
    ymin = std::min(ymin, f.col(1).minCoeff());
    ymax = std::max(ymax, f.col(1).maxCoeff());
  }
  const double extent = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = (kSize - 2 * kMargin) / extent;
  auto sx = [&](double x) { return fmt2(kMargin + (x - xmin) * scale); };
  // SVG y grows downward.
  auto sy = [&](double y) { return fmt2(kSize - kMargin - (y - ymin) * scale); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  os << "<title>" << xml_escape(p.technique + " on " + p.dataset_name) << "</title>\n";
  os << "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  const Eigen::Index N = p.frames.empty() ? 0 : p.frames.front().rows();
  for (Eigen::Index i = 0; i < N; ++i) {
    const int label = static_cast<std::size_t>(i) < d.labels.size() ? d.labels[static_cast<std::size_t>(i)] : 0;
    os << "<polyline fill=\"none\" stroke=\"" << class_color(label) << "\" stroke-opacity=\"0.5\" stroke-width=\"0.8\" points=\"";
    for (std::size_t t = 0; t < p.frames.size(); ++t) {
      if (t) os << ' ';
      os << sx(p.frames[t](i, 0)) << ',' << sy(p.frames[t](i, 1));
    }
    os << "\"/>\n";
    const Matrix& last = p.frames.back();
    os << "<circle r=\"1.5\" fill=\"" << class_color(label) << "\" cx=\"" << sx(last(i, 0)) << "\" cy=\""
       << sy(last(i, 1)) << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string overview_svg(const BenchmarkTable& t, const NormalizedTable& norm) {
  constexpr int kCell = 56, kRowH = 28, kLeft = 110, kTop = 40;
  const std::size_t K = t.techniques.size();
  const int width = kLeft + kCell * static_cast<int>(kMetricCount) + 10;
  const int height = kTop + kRowH * static_cast<int>(K) + 10;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  for (std::size_t c = 0; c < kMetricCount; ++c) {
    os << "<text x=\"" << kLeft + kCell * static_cast<int>(c) + kCell / 2 << "\" y=\"" << kTop - 8
       << "\" text-anchor=\"middle\">" << metric_names()[c] << "</text>\n";
  }
  for (std::size_t k = 0; k < K; ++k) {
    const int y = kTop + kRowH * static_cast<int>(k);
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + kRowH / 2 + 4 << "\" text-anchor=\"end\">"
       << xml_escape(t.techniques[k]) << "</text>\n";
    for (std::size_t c = 0; c < kMetricCount; ++c) {
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t d = 0; d < t.datasets.size(); ++d) {
        const double v = norm.rows[d * K + k][c];
        if (!std::isnan(v)) {
          sum += v;
          ++count;
        }
      }
      const double mean = count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
      const int x = kLeft + kCell * static_cast<int>(c);
      os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\"" << kRowH << "\" fill=\""
         << heat_color(mean) << "\" stroke=\"white\"/>\n";
      if (count) {
        os << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kRowH / 2 + 4 << "\" text-anchor=\"middle\" fill=\""
           << (mean < 0.5 ? "white" : "black") << "\">" << fmt2(mean) << "</text>\n";
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string meta_projection_svg(const std::vector<MetaPoint>& points) {
  constexpr double kSize = 400.0, kMargin = 20.0;
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin, xmax = -xmin, ymax = -xmin;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double extent = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = (kSize - 2 * kMargin) / extent;
  // Color by technique, glyph by dataset (circle, square, triangle cycle).
  std::vector<std::string> techniques, datasets;
  for (const auto& p : points) {
    if (std::find(techniques.begin(), techniques.end(), p.technique) == techniques.end()) techniques.push_back(p.technique);
    if (std::find(datasets.begin(), datasets.end(), p.dataset) == datasets.end()) datasets.push_back(p.dataset);
  }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  os << "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  for (const auto& p : points) {
    const auto ti = static_cast<int>(std::find(techniques.begin(), techniques.end(), p.technique) - techniques.begin());
    const auto di = static_cast<std::size_t>(std::find(datasets.begin(), datasets.end(), p.dataset) - datasets.begin());
    const double x = kMargin + (p.x - xmin) * scale;
    const double y = kSize - kMargin - (p.y - ymin) * scale;
    const char* color = class_color(ti);
    os << "<g><title>" << xml_escape(p.technique + " / " + p.dataset) << "</title>";
    switch (di % 3) {
      case 0: os << "<circle cx=\"" << fmt2(x) << "\" cy=\"" << fmt2(y) << "\" r=\"5\" fill=\"" << color << "\"/>"; break;
      case 1:
        os << "<rect x=\"" << fmt2(x - 4.5) << "\" y=\"" << fmt2(y - 4.5) << "\" width=\"9\" height=\"9\" fill=\"" << color
           << "\"/>";
        break;
      default:
        os << "<polygon points=\"" << fmt2(x) << ',' << fmt2(y - 5.5) << ' ' << fmt2(x - 5) << ',' << fmt2(y + 4) << ' '
           << fmt2(x + 5) << ',' << fmt2(y + 4) << "\" fill=\"" << color << "\"/>";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_shepard_csv(const fs::path& file, const DynamicDataset& d, const ProjectionSequence& p) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot write " + file.string());
  out << "d,dbar\n";
  // One revision at a time bounds memory to a single pair list.
  for (std::size_t t = 0; t < d.num_timesteps(); ++t) {
    const ShepardPoints sp = shepard_points(d.revisions[t], p.frames[t]);
    std::string block;
    for (std::size_t k = 0; k < sp.size(); ++k) block += format_number(sp.d[k]) + "," + format_number(sp.dbar[k]) + "\n";
    out << block;
  }
  if (!out) throw DataError("write failed: " + file.string());
}

void write_displacements_csv(const fs::path& file, const DisplacementSet& ds) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot write " + file.string());
  out << "point,t,delta,delta_bar\n";
  for (std::size_t k = 0; k < ds.size(); ++k) {
    out << ds.point[k] << ',' << ds.step[k] << ',' << format_number(ds.delta[k]) << ','
        << format_number(ds.delta_bar[k]) << '\n';
  }
  if (!out) throw DataError("write failed: " + file.string());
}

void write_histogram_csv(const fs::path& file, const std::vector<RankHistogramBin>& hist) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot write " + file.string());
  out << "bin_low,bin_high,frequency\n";
  for (const auto& b : hist) out << format_number(b.low) << ',' << format_number(b.high) << ',' << format_number(b.frequency) << '\n';
  if (!out) throw DataError("write failed: " + file.string());
}

ExportSummary export_report(const BenchmarkTable& t, const fs::path& out_dir, const ExportOptions& options) {
  ExportSummary summary;
  fs::create_directories(out_dir);
  write_file(out_dir / "results.json", table_to_json(t).dump(2) + "\n", summary);
  write_file(out_dir / "results.csv", results_csv(t), summary);

  const NormalizedTable norm = normalize_columns(t);
  for (const auto& w : norm.warnings) summary.warnings.push_back("normalization: " + w);
  write_file(out_dir / "normalized.csv", normalized_csv(t, norm), summary);
  write_file(out_dir / "overview.svg", overview_svg(t, norm), summary);

  try {
    write_file(out_dir / "trait_correlation.csv", trait_correlation_csv(trait_metric_correlation(t)), summary);
  } catch (const std::invalid_argument& e) {
    summary.warnings.push_back(std::string("trait correlation skipped: ") + e.what());
  }

  try {
    const auto points = meta_projection(t, options.meta_seed);
    std::string csv = "technique,dataset,x,y\n";
    for (const auto& p : points) {
      csv += csv_field(p.technique) + "," + csv_field(p.dataset) + "," + format_number(p.x) + "," + format_number(p.y) + "\n";
    }
    write_file(out_dir / "meta_projection.csv", csv, summary);
    write_file(out_dir / "meta_projection.svg", meta_projection_svg(points), summary);
  } catch (const std::invalid_argument& e) {
    summary.warnings.push_back(std::string("meta projection skipped: ") + e.what());
  }

  const std::size_t K = t.techniques.size();
  for (std::size_t idx = 0; idx < t.cells.size(); ++idx) {
    const CellResult& cell = t.cells[idx];
    const std::size_t d = idx / std::max<std::size_t>(K, 1);
    if (!cell.ok || !cell.projection || d >= t.dataset_data.size() || !t.dataset_data[d]) continue;
    const DynamicDataset& data = *t.dataset_data[d];
    const ProjectionSequence& proj = *cell.projection;
    const fs::path dir = out_dir / "cells" / (sanitize(cell.technique) + "__" + sanitize(cell.dataset));
    fs::create_directories(dir);

    write_shepard_csv(dir / "shepard_spatial.csv", data, proj);
    summary.files.push_back(dir / "shepard_spatial.csv");

    const DisplacementSet ds = displacements(data, proj);
    write_displacements_csv(dir / "displacements.csv", ds);
    summary.files.push_back(dir / "displacements.csv");

    std::vector<double> dd, db;
    for (std::size_t tt = 0; tt < data.num_timesteps(); ++tt) {
      ShepardPoints sp = shepard_points(data.revisions[tt], proj.frames[tt]);
      dd.insert(dd.end(), sp.d.begin(), sp.d.end());
      db.insert(db.end(), sp.dbar.begin(), sp.dbar.end());
    }
    write_histogram_csv(dir / "rank_hist_spatial.csv", rank_difference_histogram(dd, db, options.histogram_bins));
    summary.files.push_back(dir / "rank_hist_spatial.csv");
    write_histogram_csv(dir / "rank_hist_temporal.csv",
                        rank_difference_histogram(ds.delta, ds.delta_bar, options.histogram_bins));
    summary.files.push_back(dir / "rank_hist_temporal.csv");

    write_file(dir / "trails.svg", trails_svg(data, proj), summary);
  }
  return summary;
}

}  // namespace drbench
