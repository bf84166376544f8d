#include "drbench/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "drbench/correlation.hpp"
#include "drbench/dataset_io.hpp"
#include "drbench/synthetic.hpp"
#include "drbench/tsne.hpp"

namespace drbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

constexpr std::array<std::array<Metric, 4>, 3> kGroupMembers = {{
    {Metric::SpatialStress, Metric::SpatialPearson, Metric::SpatialSpearman, Metric::SpatialKendall},
    {Metric::SpatialNP, Metric::SpatialNH, Metric::SpatialTrust, Metric::SpatialCont},
    {Metric::TemporalStress, Metric::TemporalPearson, Metric::TemporalSpearman, Metric::TemporalKendall},
}};

}  // namespace

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BenchmarkConfig config_from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  BenchmarkConfig cfg;
  cfg.source = j;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "datasets") {
        for (const json& dj : value) {
          DatasetSource src;
          if (dj.contains("name")) src.name = dj.at("name").get<std::string>();
          if (dj.contains("path")) {
            src.path = dj.at("path").get<std::string>();
            if (src.path.is_relative() && !base_dir.empty()) src.path = base_dir / src.path;
          } else if (dj.contains("generator")) {
            src.generator = dj.at("generator").get<std::string>();
            src.seed = dj.value("seed", std::uint64_t{0});
            src.params = dj.value("params", json::object());
          } else {
            throw std::invalid_argument("dataset entry needs 'path' or 'generator'");
          }
          cfg.datasets.push_back(std::move(src));
        }
      } else if (key == "techniques") {
        for (const json& tj : value) {
          TechniqueEntry entry;
          entry.spec = technique_from_json(tj);
          entry.label = tj.contains("label") ? tj.at("label").get<std::string>() : entry.spec.label();
          cfg.techniques.push_back(std::move(entry));
        }
      } else if (key == "k_sweep") {
        cfg.eval = eval_options_from_json(value);
      } else if (key == "output" || key == "output_dir") {
        cfg.output_dir = value.get<std::string>();
      } else if (key == "histogram_bins") {
        cfg.histogram_bins = value.get<std::size_t>();
      } else if (key == "meta_seed") {
        cfg.meta_seed = value.get<std::uint64_t>();
      } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid config: ") + e.what());
  }
  if (cfg.datasets.empty()) throw std::invalid_argument("config lists no datasets");
  if (cfg.techniques.empty()) throw std::invalid_argument("config lists no techniques");
  if (cfg.histogram_bins < 1) throw std::invalid_argument("histogram_bins must be positive");
  std::set<std::string> labels;
  for (const auto& t : cfg.techniques) {
    if (!labels.insert(t.label).second) {
      throw std::invalid_argument("duplicate technique label '" + t.label + "'; set a distinct \"label\"");
    }
  }
  return cfg;
}

BenchmarkConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open config " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(file.string() + ": " + e.what());
  }
  return config_from_json(j, file.parent_path());
}

DynamicDataset load_dataset(const DatasetSource& source) {
  DynamicDataset d = source.generator.empty() ? read_dataset(source.path)
                                              : generate_by_name(source.generator, source.seed, source.params);
  if (!source.name.empty()) d.name = source.name;
  require_valid(d);
  return d;
}

std::size_t resolve_jobs(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DRBENCH_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1;
}

namespace {

// Runs fn(0..count-1) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : workers) th.join();
}

}  // namespace

BenchmarkTable run_benchmark(const BenchmarkConfig& config, std::size_t jobs) {
  BenchmarkTable table;
  table.provenance.started_at = utc_now();
  table.provenance.config_hash = fnv1a_hex(config.source.dump());
  for (const auto& t : config.techniques) {
    table.techniques.push_back(t.label);
    table.provenance.technique_seeds.push_back(t.spec.tsne.seed);
  }

  const std::size_t D = config.datasets.size();
  const std::size_t K = config.techniques.size();
  table.datasets.resize(D);
  table.traits.resize(D);
  table.dataset_errors.resize(D);
  table.dataset_data.resize(D);
  std::vector<std::vector<DistanceRankCache>> caches(D);

  parallel_for(D, jobs, [&](std::size_t d) {
    const DatasetSource& src = config.datasets[d];
    table.datasets[d] = !src.name.empty() ? src.name : !src.generator.empty() ? src.generator : src.path.filename().string();
    try {
      auto data = std::make_shared<DynamicDataset>(load_dataset(src));
      table.datasets[d] = data->name;
      table.traits[d] = compute_traits(*data);
      caches[d] = revision_caches(data->revisions);
      table.dataset_data[d] = std::move(data);
    } catch (const std::exception& e) {
      table.dataset_errors[d] = e.what();
    }
  });
  for (const auto& src : config.datasets) table.provenance.dataset_seeds.push_back(src.seed);

  table.cells.resize(D * K);
  parallel_for(D * K, jobs, [&](std::size_t idx) {
    const std::size_t d = idx / K;
    const std::size_t k = idx % K;
    CellResult& cell = table.cells[idx];
    cell.technique = table.techniques[k];
    cell.dataset = table.datasets[d];
    if (!table.dataset_data[d]) {
      cell.error = "dataset unavailable: " + table.dataset_errors[d];
      return;
    }
    try {
      const DynamicDataset& data = *table.dataset_data[d];
      auto proj = std::make_shared<ProjectionSequence>(project_dynamic(data, config.techniques[k].spec, &cell.warnings));
      proj->technique = cell.technique;
      cell.report = evaluate(data, caches[d], *proj, config.eval);
      cell.projection = std::move(proj);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });
  table.provenance.finished_at = utc_now();
  return table;
}

NormalizedTable normalize_columns(const BenchmarkTable& t) {
  NormalizedTable out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.rows.assign(t.cells.size(), {});
  for (auto& row : out.rows) row.fill(nan);
  for (std::size_t c = 0; c < kMetricCount; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const CellResult& cell : t.cells) {
      if (!cell.ok) continue;
      lo = std::min(lo, cell.report.values[c]);
      hi = std::max(hi, cell.report.values[c]);
    }
    if (std::isinf(lo)) continue;
    const bool constant = !(hi > lo);
    if (constant) out.warnings.push_back(std::string("column ") + std::string(metric_names()[c]) + " is constant; mapped to 1");
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
      if (!t.cells[i].ok) continue;
      double v = constant ? 1.0 : (t.cells[i].report.values[c] - lo) / (hi - lo);
      if (!constant && is_stress_metric(c)) v = 1.0 - v;
      out.rows[i][c] = v;
    }
  }
  return out;
}

std::array<double, 6> trait_vector(const DatasetTraits& tr) {
  return {static_cast<double>(tr.num_samples), static_cast<double>(tr.num_timesteps),
          static_cast<double>(tr.num_dims),    static_cast<double>(tr.num_classes),
          tr.intrinsic_dim_ratio,              tr.sparsity_ratio};
}

TraitCorrelation trait_group_correlation(const std::vector<DatasetTraits>& traits,
                                         const std::vector<std::array<double, 3>>& group_scores) {
  if (traits.size() != group_scores.size()) throw std::invalid_argument("traits and group scores differ in length");
  if (traits.size() < 3) {
    throw std::invalid_argument("trait correlation needs at least 3 datasets, got " + std::to_string(traits.size()));
  }
  TraitCorrelation out{};
  for (std::size_t tr = 0; tr < kTraitNames.size(); ++tr) {
    std::vector<double> xs;
    for (const auto& t : traits) xs.push_back(trait_vector(t)[tr]);
    for (std::size_t g = 0; g < 3; ++g) {
      std::vector<double> ys;
      for (const auto& s : group_scores) ys.push_back(s[g]);
      try {
        out[tr][g] = pearson(xs, ys);
      } catch (const DataError&) {
        out[tr][g] = std::nullopt;
      }
    }
  }
  return out;
}

TraitCorrelation trait_metric_correlation(const BenchmarkTable& t) {
  const NormalizedTable norm = normalize_columns(t);
  std::vector<DatasetTraits> traits;
  std::vector<std::array<double, 3>> scores;
  for (std::size_t d = 0; d < t.datasets.size(); ++d) {
    if (!t.traits[d]) continue;
    std::array<double, 3> sum{};
    std::size_t count = 0;
    for (std::size_t k = 0; k < t.techniques.size(); ++k) {
      const std::size_t idx = d * t.techniques.size() + k;
      if (!t.cells[idx].ok) continue;
      ++count;
      for (std::size_t g = 0; g < 3; ++g) {
        double s = 0.0;
        for (Metric m : kGroupMembers[g]) s += norm.rows[idx][static_cast<std::size_t>(m)];
        sum[g] += s / static_cast<double>(kGroupMembers[g].size());
      }
    }
    if (count == 0) continue;
    for (double& s : sum) s /= static_cast<double>(count);
    traits.push_back(*t.traits[d]);
    scores.push_back(sum);
  }
  return trait_group_correlation(traits, scores);
}

std::vector<MetaPoint> meta_projection(const BenchmarkTable& t, std::uint64_t seed) {
  const NormalizedTable norm = normalize_columns(t);
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < t.cells.size(); ++i)
    if (t.cells[i].ok) ok.push_back(i);
  if (ok.size() < 5) {
    throw std::invalid_argument("meta projection needs at least 5 successful cells, got " + std::to_string(ok.size()));
  }
  Matrix x(static_cast<Eigen::Index>(ok.size()), static_cast<Eigen::Index>(kMetricCount));
  for (std::size_t r = 0; r < ok.size(); ++r)
    for (std::size_t c = 0; c < kMetricCount; ++c) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = norm.rows[ok[r]][c];

  TSNEConfig cfg;
  cfg.perplexity = std::min(5.0, static_cast<double>(ok.size()) / 4.0);
  cfg.seed = seed;
  const TSNEResult r = tsne(x, cfg);
  std::vector<MetaPoint> out;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    const CellResult& cell = t.cells[ok[i]];
    out.push_back({cell.technique, cell.dataset, r.embedding(static_cast<Eigen::Index>(i), 0),
                   r.embedding(static_cast<Eigen::Index>(i), 1)});
  }
  return out;
}

}  // namespace drbench
