#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

#include "json.hpp"
#include "profitrec/catalog.hpp"
#include "profitrec/oracle.hpp"
#include "profitrec/similarity.hpp"
#include "profitrec/solve_report.hpp"

namespace profitrec {

inline constexpr int kReportSchemaVersion = 1;

struct RunConfig {
  double tau = 0.9;
  SimilarityMeasure measure = SimilarityMeasure::kDice;
  PurchaseModel model = PurchaseModel::kLinear;
  double max_rating = 5.0;
  double epsilon = 1e-6;
  bool clamp = false;
  std::uint64_t seed = 0;
  DecisionRule decision_rule = DecisionRule::kNonnegative;

  // kInvalidTau / kInvalidConfig on out-of-range fields; the measure must be
  // Dice or Jaccard.
  void validate() const;
};

std::string_view to_string(DecisionRule rule);
std::optional<DecisionRule> parse_decision_rule(std::string_view name);

/// Solves one customer's catalog and returns the report document. Keys are
/// emitted in a fixed order so identical inputs give byte-identical output.
nlohmann::ordered_json run(const std::vector<CatalogRecord>& records,
                           const RunConfig& config);

/// Wraps several per-customer reports, preserving input order.
nlohmann::ordered_json batch_report(std::vector<nlohmann::ordered_json> reports);

std::string render(const nlohmann::ordered_json& report);

}  // namespace profitrec
