#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "drbench/core_model.hpp"
#include "drbench/pca.hpp"
#include "drbench/tsne.hpp"

namespace drbench {

enum class Technique { PCA, TSNE, DTSNE, Identity };
enum class Strategy { Global, PerTimeframe };

/// Largest T * N accepted by the global t-SNE strategy (dense N^2 affinities).
inline constexpr std::size_t kMaxGlobalTsneRows = 20000;

/// A fully parameterized dynamic projection technique.
struct TechniqueSpec {
  Technique technique = Technique::PCA;
  Strategy strategy = Strategy::Global;
  TSNEConfig tsne;      // t-SNE and dt-SNE; tsne.seed is the run seed
  double lambda = 0.1;  // dt-SNE only

  /// Display name, e.g. "G-PCA", "TF-tSNE", "dt-SNE".
  std::string label() const;
};

Technique parse_technique(std::string_view name);
Strategy parse_strategy(std::string_view name);
std::string_view to_string(Technique t);
std::string_view to_string(Strategy s);

/// JSON form: {"name": "tsne", "strategy": "TF", "seed": 3, "params": {...}}.
/// Unknown keys in params are rejected.
TechniqueSpec technique_from_json(const nlohmann::json& j);
nlohmann::json technique_to_json(const TechniqueSpec& spec);

/// The PCA models a PCA technique applies per frame: one shared model for the
/// global strategy, one independent fit per revision otherwise.
std::vector<PCAModel> pca_models(const DynamicDataset& d, Strategy strategy);

/// Projects every revision. Global strategies fit on the row-concatenation
/// of all revisions; per-timeframe strategies fit each revision alone with
/// seed + t. dt-SNE is always joint. Identity passes 2-column data through.
/// Non-fatal diagnostics are appended to `warnings` when given.
ProjectionSequence project_dynamic(const DynamicDataset& d, const TechniqueSpec& spec,
                                   std::vector<std::string>* warnings = nullptr);

}  // namespace drbench
