#include "drbench/projection.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace drbench {

using nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void append(std::vector<std::string>* sink, const std::vector<std::string>& items, const std::string& prefix = "") {
  if (!sink) return;
  for (const auto& w : items) sink->push_back(prefix + w);
}

}  // namespace

std::string_view to_string(Technique t) {
  switch (t) {
    case Technique::PCA: return "pca";
    case Technique::TSNE: return "tsne";
    case Technique::DTSNE: return "dtsne";
    case Technique::Identity: return "identity";
  }
  return "?";
}

std::string_view to_string(Strategy s) { return s == Strategy::Global ? "G" : "TF"; }

Technique parse_technique(std::string_view name) {
  const std::string s = lower(name);
  if (s == "pca") return Technique::PCA;
  if (s == "tsne" || s == "t-sne") return Technique::TSNE;
  if (s == "dtsne" || s == "dt-sne") return Technique::DTSNE;
  if (s == "identity") return Technique::Identity;
  throw std::invalid_argument("unknown technique '" + std::string(name) + "' (expected pca, tsne, dtsne, identity)");
}

Strategy parse_strategy(std::string_view name) {
  const std::string s = lower(name);
  if (s == "g" || s == "global") return Strategy::Global;
  if (s == "tf" || s == "per_timeframe" || s == "per-timeframe") return Strategy::PerTimeframe;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "' (expected G or TF)");
}

std::string TechniqueSpec::label() const {
  switch (technique) {
    case Technique::PCA: return std::string(to_string(strategy)) + "-PCA";
    case Technique::TSNE: return std::string(to_string(strategy)) + "-tSNE";
    case Technique::DTSNE: return "dt-SNE";
    case Technique::Identity: return "identity";
  }
  return "?";
}

TechniqueSpec technique_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("technique entry must be a JSON object");
  TechniqueSpec spec;
  spec.technique = parse_technique(j.at("name").get<std::string>());
  if (j.contains("strategy")) spec.strategy = parse_strategy(j.at("strategy").get<std::string>());
  if (j.contains("seed")) spec.tsne.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("params")) {
    for (const auto& [key, value] : j.at("params").items()) {
      TSNEConfig& c = spec.tsne;
      if (key == "perplexity") c.perplexity = value.get<double>();
      else if (key == "iterations") c.iterations = value.get<int>();
      else if (key == "learning_rate") c.learning_rate = value.get<double>();
      else if (key == "initial_momentum") c.initial_momentum = value.get<double>();
      else if (key == "final_momentum") c.final_momentum = value.get<double>();
      else if (key == "momentum_switch_iteration") c.momentum_switch_iteration = value.get<int>();
      else if (key == "early_exaggeration") c.early_exaggeration = value.get<double>();
      else if (key == "exaggeration_iterations") c.exaggeration_iterations = value.get<int>();
      else if (key == "init_sigma") c.init_sigma = value.get<double>();
      else if (key == "lambda") spec.lambda = value.get<double>();
      else throw std::invalid_argument("unknown technique parameter '" + key + "'");
    }
  }
  if (spec.lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
  return spec;
}

json technique_to_json(const TechniqueSpec& spec) {
  json j = {{"name", to_string(spec.technique)}, {"strategy", to_string(spec.strategy)}, {"seed", spec.tsne.seed}};
  if (spec.technique == Technique::TSNE || spec.technique == Technique::DTSNE) {
    const TSNEConfig& c = spec.tsne;
    j["params"] = {{"perplexity", c.perplexity},
                   {"iterations", c.iterations},
                   {"learning_rate", c.learning_rate},
                   {"initial_momentum", c.initial_momentum},
                   {"final_momentum", c.final_momentum},
                   {"momentum_switch_iteration", c.momentum_switch_iteration},
                   {"early_exaggeration", c.early_exaggeration},
                   {"exaggeration_iterations", c.exaggeration_iterations},
                   {"init_sigma", c.init_sigma}};
    if (spec.technique == Technique::DTSNE) j["params"]["lambda"] = spec.lambda;
  } else {
    j["params"] = json::object();
  }
  return j;
}

std::vector<PCAModel> pca_models(const DynamicDataset& d, Strategy strategy) {
  std::vector<PCAModel> models;
  if (strategy == Strategy::Global) {
    models.assign(d.num_timesteps(), fit_pca(concatenate_revisions(d.revisions)));
  } else {
    models.reserve(d.num_timesteps());
    for (const Matrix& r : d.revisions) models.push_back(fit_pca(r));
  }
  return models;
}

ProjectionSequence project_dynamic(const DynamicDataset& d, const TechniqueSpec& spec,
                                   std::vector<std::string>* warnings) {
  require_valid(d);
  ProjectionSequence out;
  out.dataset_name = d.name;
  out.technique = spec.label();
  const std::size_t T = d.num_timesteps();
  const auto N = static_cast<Eigen::Index>(d.num_samples());

  switch (spec.technique) {
    case Technique::Identity: {
      if (d.num_dims() != 2) throw DataError("identity technique needs 2-dimensional data");
      out.frames = d.revisions;
      break;
    }
    case Technique::PCA: {
      const auto models = pca_models(d, spec.strategy);
      for (std::size_t t = 0; t < T; ++t) out.frames.push_back(transform_pca(models[t], d.revisions[t]));
      break;
    }
    case Technique::TSNE: {
      if (spec.strategy == Strategy::Global) {
        const std::size_t rows = T * d.num_samples();
        if (rows > kMaxGlobalTsneRows) {
          throw DataError("global t-SNE over " + std::to_string(rows) + " rows exceeds the limit of " +
                          std::to_string(kMaxGlobalTsneRows));
        }
        TSNEResult r = tsne(concatenate_revisions(d.revisions), spec.tsne);
        append(warnings, r.warnings);
        for (std::size_t t = 0; t < T; ++t) {
          out.frames.push_back(r.embedding.middleRows(static_cast<Eigen::Index>(t) * N, N));
        }
      } else {
        for (std::size_t t = 0; t < T; ++t) {
          TSNEConfig cfg = spec.tsne;
          cfg.seed = spec.tsne.seed + t;
          TSNEResult r = tsne(d.revisions[t], cfg);
          append(warnings, r.warnings, "revision " + std::to_string(t) + ": ");
          out.frames.push_back(std::move(r.embedding));
        }
      }
      break;
    }
    case Technique::DTSNE: {
      DTSNEResult r = dtsne(d, DTSNEConfig{spec.tsne, spec.lambda});
      append(warnings, r.warnings);
      out.frames = std::move(r.projection.frames);
      break;
    }
  }
  return out;
}

}  // namespace drbench
