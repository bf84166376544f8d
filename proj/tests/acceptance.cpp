// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "drbench/benchmark.hpp"
#include "drbench/cli.hpp"
#include "drbench/correlation.hpp"
#include "drbench/evaluation.hpp"
#include "drbench/projection.hpp"
#include "drbench/spatial_quality.hpp"
#include "drbench/synthetic.hpp"
#include "drbench/temporal_quality.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "scratch.hpp"

using namespace drbench;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// 1. Every metric against the naive oracles on 50 random instances.
Outcome metric_oracles() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  std::size_t kendall_mismatches = 0;
  for (int instance = 0; instance < 50; ++instance) {
    const Matrix x = oracle::random_matrix(50, 8, rng), y = oracle::random_matrix(50, 2, rng);
    std::vector<int> labels(50);
    for (auto& l : labels) l = static_cast<int>(rng() % 3);
    const DistanceRankCache cx(x), cy(y);
    const auto dx = oracle::distances(oracle::to_rows(x)), dy = oracle::distances(oracle::to_rows(y));
    for (std::size_t k : sweep_k_values(50, default_sweep(NeighborhoodMetric::Preservation))) {
      worst = std::max(worst, std::abs(trustworthiness(cx, cy, k) - oracle::trustworthiness(dx, dy, k)));
      worst = std::max(worst, std::abs(continuity(cx, cy, k) - oracle::continuity(dx, dy, k)));
      worst = std::max(worst, std::abs(neighborhood_preservation(cx, cy, k) - oracle::neighborhood_preservation(dx, dy, k)));
      worst = std::max(worst, std::abs(neighborhood_hit(cy, labels, k) - oracle::neighborhood_hit(dy, labels, k)));
    }
    std::vector<double> d, dbar;
    for (std::size_t i = 0; i < 50; ++i)
      for (std::size_t j = i + 1; j < 50; ++j) {
        d.push_back(dx[i][j]);
        dbar.push_back(dy[i][j]);
      }
    const ShepardPoints sp = shepard_points(cx, cy);
    worst = std::max(worst, std::abs(normalized_stress(sp) - oracle::stress(d, dbar)));
    worst = std::max(worst, std::abs(shepard_correlation(sp, CorrelationKind::Pearson) - oracle::pearson(d, dbar)));
    worst = std::max(worst, std::abs(shepard_correlation(sp, CorrelationKind::Spearman) - oracle::spearman(d, dbar)));
    kendall_mismatches += shepard_correlation(sp, CorrelationKind::Kendall) != oracle::kendall_tau_b(d, dbar);
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-10 && kendall_mismatches == 0 && elapsed < 30.0,
          "max deviation " + fmt(worst) + ", Kendall mismatches " + std::to_string(kendall_mismatches) + ", " +
              fmt(elapsed, 3) + " s"};
}

// 2. Identity projection of 2D data scores perfectly everywhere.
Outcome perfect_projection() {
  DynamicDataset d = fixtures::planar(5, 200, 4);
  d.labels.assign(200, 0);
  d.class_names = {"one"};
  ProjectionSequence p;
  p.frames = d.revisions;
  const MetricReport r = evaluate(d, p);
  double worst = 0.0;
  for (std::size_t c = 0; c < kMetricCount; ++c) {
    const double target = is_stress_metric(c) ? 0.0 : 1.0;
    worst = std::max(worst, std::abs(r.values[c] - target));
  }
  for (const auto& curve : r.curves)
    for (double s : curve.scores) worst = std::max(worst, std::abs(s - 1.0));
  return {worst <= 1e-9, "max deviation " + fmt(worst)};
}

// 3. The 4-point fixture.
Outcome hand_fixture() {
  Matrix data(4, 1), proj(4, 1);
  data << 0, 1, 2.2, 4;
  proj << 0, 1, 4, 2.2;
  const DistanceRankCache a(data), b(proj);
  const double np = neighborhood_preservation(a, b, 1), tr = trustworthiness(a, b, 1), co = continuity(a, b, 1);
  return {np == 0.5 && tr == 0.75 && co == 0.75, "NP " + fmt(np) + ", trust " + fmt(tr) + ", cont " + fmt(co)};
}

struct SeedRun {
  std::vector<std::string> labels;
  std::vector<MetricReport> reports;
  double mean_dbar_penalized = 0.0;
  double mean_dbar_free = 0.0;
};

double mean_displacement(const ProjectionSequence& p) {
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t t = 0; t + 1 < p.frames.size(); ++t) {
    total += (p.frames[t + 1] - p.frames[t]).rowwise().norm().sum();
    count += static_cast<std::size_t>(p.frames[t].rows());
  }
  return total / static_cast<double>(count);
}

// The five techniques of criteria 4 and 5 plus an unpenalized dt-SNE run for 6.
std::vector<SeedRun> gaussians_runs(double* elapsed) {
  const auto start = Clock::now();
  std::vector<SeedRun> runs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DynamicDataset d = gen_gaussians(seed);
    const auto caches = revision_caches(d.revisions);
    SeedRun run;
    for (auto [technique, strategy] : {std::pair{Technique::PCA, Strategy::Global}, std::pair{Technique::PCA, Strategy::PerTimeframe},
                                       std::pair{Technique::TSNE, Strategy::Global}, std::pair{Technique::TSNE, Strategy::PerTimeframe},
                                       std::pair{Technique::DTSNE, Strategy::Global}}) {
      TechniqueSpec spec;
      spec.technique = technique;
      spec.strategy = strategy;
      spec.tsne.seed = seed;
      const ProjectionSequence p = project_dynamic(d, spec);
      run.labels.push_back(spec.label());
      run.reports.push_back(evaluate(d, caches, p));
      if (technique == Technique::DTSNE) {
        run.mean_dbar_penalized = mean_displacement(p);
        spec.lambda = 0.0;
        run.mean_dbar_free = mean_displacement(project_dynamic(d, spec));
      }
    }
    runs.push_back(std::move(run));
  }
  *elapsed = seconds_since(start);
  return runs;
}

// Index of the labelled technique within a run.
std::size_t find(const SeedRun& run, const std::string& label) {
  return static_cast<std::size_t>(std::find(run.labels.begin(), run.labels.end(), label) - run.labels.begin());
}

Outcome stability_ordering(const std::vector<SeedRun>& runs, double elapsed) {
  int pca_above = 0, tf_last = 0;
  std::string values;
  for (const auto& run : runs) {
    auto spearman = [&](const std::string& label) { return run.reports[find(run, label)][Metric::TemporalSpearman]; };
    const double tf = spearman("TF-tSNE");
    pca_above += spearman("G-PCA") > tf;
    bool last = true;
    for (const auto& label : run.labels)
      if (label != "TF-tSNE" && spearman(label) <= tf) last = false;
    tf_last += last;
    values += (values.empty() ? "" : "; ") + std::string("G-PCA ") + fmt(spearman("G-PCA"), 3) + " TF-tSNE " + fmt(tf, 3) +
              " G-tSNE " + fmt(spearman("G-tSNE"), 3);
  }
  return {pca_above == 5 && tf_last >= 4 && elapsed < 600.0,
          "G-PCA above TF-tSNE " + std::to_string(pca_above) + "/5, TF-tSNE last " + std::to_string(tf_last) + "/5, " +
              fmt(elapsed, 3) + " s [" + values + "]"};
}

Outcome spatial_ordering(const std::vector<SeedRun>& runs) {
  int wins = 0;
  std::string values;
  for (const auto& run : runs) {
    const double tf = run.reports[find(run, "TF-tSNE")][Metric::SpatialNP];
    const double g = run.reports[find(run, "G-tSNE")][Metric::SpatialNP];
    wins += tf > g;
    values += (values.empty() ? "" : "; ") + fmt(tf, 3) + " vs " + fmt(g, 3);
  }
  return {wins >= 4, "TF-tSNE S_NP above G-tSNE " + std::to_string(wins) + "/5 [" + values + "]"};
}

Outcome movement_penalty(const std::vector<SeedRun>& runs) {
  double penalized = 0.0, free = 0.0;
  for (const auto& run : runs) {
    penalized += run.mean_dbar_penalized / 5.0;
    free += run.mean_dbar_free / 5.0;
  }
  return {penalized < free, "mean displacement lambda=0.1 " + fmt(penalized) + " vs lambda=0 " + fmt(free)};
}

// 7. Axis swap under TF-PCA, fixed axes under G-PCA.
Outcome reflection_artifact() {
  const DynamicDataset d = fixtures::variance_swap(7);
  const auto tf = pca_models(d, Strategy::PerTimeframe);
  const auto g = pca_models(d, Strategy::Global);
  const double tf_dot = std::abs(tf[2].components.row(0).dot(tf[1].components.row(0)));
  double g_dev = 0.0;
  for (std::size_t t = 1; t < g.size(); ++t)
    for (int c = 0; c < 2; ++c) g_dev = std::max(g_dev, std::abs(g[t].components.row(c).dot(g[0].components.row(c)) - 1.0));
  return {tf_dot < 0.5 && g_dev < 1e-12, "TF-PCA |dot| " + fmt(tf_dot) + ", G-PCA deviation from 1 " + fmt(g_dev)};
}

// 8. Min-max normalization with stress inversion.
Outcome normalization_contract() {
  auto table_for = [](std::size_t column) {
    BenchmarkTable t;
    t.techniques = {"x"};
    for (double v : {2.0, 4.0, 6.0}) {
      CellResult cell;
      cell.ok = true;
      cell.report.values.fill(1.0);
      cell.report.values[column] = v;
      t.cells.push_back(cell);
      t.datasets.push_back("d");
    }
    return normalize_columns(t);
  };
  const auto plain = table_for(static_cast<std::size_t>(Metric::SpatialNP));
  const auto stress = table_for(static_cast<std::size_t>(Metric::SpatialStress));
  const auto tstress = table_for(static_cast<std::size_t>(Metric::TemporalStress));
  bool ok = true;
  const double expected[3] = {0.0, 0.5, 1.0};
  for (int i = 0; i < 3; ++i) {
    ok &= plain.rows[i][0] == expected[i];
    ok &= stress.rows[i][4] == 1.0 - expected[i];
    ok &= tstress.rows[i][8] == 1.0 - expected[i];
  }
  return {ok, "plain [" + fmt(plain.rows[0][0]) + "," + fmt(plain.rows[1][0]) + "," + fmt(plain.rows[2][0]) + "], stress [" +
                  fmt(stress.rows[0][4]) + "," + fmt(stress.rows[1][4]) + "," + fmt(stress.rows[2][4]) + "]"};
}

// 9. Two benchmark runs through the command line.
Outcome benchmark_determinism() {
  const Scratch dir("acceptance_determinism");
  {
    std::ofstream cfg(dir.path / "config.json");
    cfg << R"({
  "datasets": [
    {"generator": "gaussians", "seed": 3, "params": {"num_classes": 4, "per_class": 10, "n": 10, "T": 4}},
    {"generator": "walk", "seed": 3, "params": {"per_class": 15, "n": 10, "T": 4}},
    {"generator": "sorts", "seed": 3, "params": {"algorithms": 4, "arrays_per_algorithm": 8, "array_len": 12, "T": 4}}
  ],
  "techniques": [
    {"name": "pca", "strategy": "G"},
    {"name": "pca", "strategy": "TF"},
    {"name": "tsne", "strategy": "G", "seed": 1, "params": {"perplexity": 8, "iterations": 300}},
    {"name": "tsne", "strategy": "TF", "seed": 1, "params": {"perplexity": 8, "iterations": 300}},
    {"name": "dtsne", "seed": 1, "params": {"perplexity": 8, "iterations": 300}}
  ]
})";
  }
  const std::string cfg = (dir.path / "config.json").string();
  const int a = dispatch({"drbench", "benchmark", "--config", cfg, "--out", (dir.path / "a").string(), "--jobs", "2"});
  const int b = dispatch({"drbench", "benchmark", "--config", cfg, "--out", (dir.path / "b").string(), "--jobs", "1"});
  const std::string ra = slurp(dir.path / "a" / "results.csv"), rb = slurp(dir.path / "b" / "results.csv");
  const bool same = !ra.empty() && ra == rb;
  return {a == kExitOk && b == kExitOk && same,
          "exit codes " + std::to_string(a) + "," + std::to_string(b) + ", results.csv " + (same ? "identical" : "differs") +
              " (" + std::to_string(ra.size()) + " bytes)"};
}

// 10. Rigid motion plus scaling of the projection leaves all metrics alone.
Outcome invariance() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int instance = 0; instance < 20; ++instance) {
    const std::size_t N = 40 + rng() % 40, T = 3 + rng() % 3;
    DynamicDataset d;
    d.class_names = {"a", "b", "c"};
    for (std::size_t i = 0; i < N; ++i) d.labels.push_back(static_cast<int>(rng() % 3));
    for (std::size_t t = 0; t < T; ++t) d.revisions.push_back(oracle::random_matrix(N, 6, rng));
    ProjectionSequence p, moved;
    for (std::size_t t = 0; t < T; ++t) p.frames.push_back(oracle::random_matrix(N, 2, rng));
    const std::uint64_t transform_seed = rng();
    for (const auto& f : p.frames) {
      std::mt19937_64 same(transform_seed);
      moved.frames.push_back(oracle::rigid_scale(f, same));
    }
    const auto caches = revision_caches(d.revisions);
    const MetricReport a = evaluate(d, caches, p), b = evaluate(d, caches, moved);
    for (std::size_t c = 0; c < kMetricCount; ++c) worst = std::max(worst, std::abs(a.values[c] - b.values[c]));
  }
  return {worst < 1e-8, "max change " + fmt(worst)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << " (" << name << "): " << o.detail << std::endl;
    failures += !o.pass;
  };

  report(1, "metric-oracle equivalence", metric_oracles());
  report(2, "perfect projection", perfect_projection());
  report(3, "hand-computed fixture", hand_fixture());
  double elapsed = 0.0;
  const auto runs = gaussians_runs(&elapsed);
  report(4, "stability ordering", stability_ordering(runs, elapsed));
  report(5, "spatial ordering", spatial_ordering(runs));
  report(6, "dt-SNE movement penalty", movement_penalty(runs));
  report(7, "TF-PCA reflection artifact", reflection_artifact());
  report(8, "normalization contract", normalization_contract());
  report(9, "benchmark determinism", benchmark_determinism());
  report(10, "rigid and scale invariance", invariance());
  std::cout << (10 - failures) << "/10 criteria passed" << std::endl;
  return failures;
}
