#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "profitrec/vectors.hpp"

namespace profitrec {

enum class DecisionRule {
  // Closed-form candidate on the sphere; "no" as soon as any entry is < 0.
  kClosedForm,
  // Exact maximizer over ball ∩ {r >= 0}; agrees with kClosedForm whenever
  // that candidate is already nonnegative.
  kNonnegative,
};

/// The recommendation projected onto [0, m], with its metrics recomputed.
struct ClampedResult {
  RatingVector recommendation;
  double achieved_similarity;
  double expected_profit;
  double gain_ratio;
};

struct SearchTrace {
  DecisionRule rule;
  std::size_t steps = 0;
  std::size_t step_bound = 0;
  double lower = 0.0;
  double upper = 0.0;
  // Best expected profit held after each halving; non-decreasing.
  std::vector<double> best_profit_by_step;
};

struct SolveReport {
  RatingVector recommendation;  // raw, possibly above max_rating
  double achieved_similarity;
  double expected_profit;
  double baseline_profit;  // E_p(c) under the same purchase model
  double gain_ratio;       // (expected_profit - baseline_profit) / baseline_profit
  std::optional<double> lambda;  // absent when tau == 1
  std::vector<std::size_t> cap_violations;
  bool clamped = false;
  std::optional<ClampedResult> clamped_result;
  std::optional<SearchTrace> search;  // multinomial only
};

}  // namespace profitrec
