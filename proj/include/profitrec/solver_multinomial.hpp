#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "profitrec/similarity.hpp"
#include "profitrec/solve_report.hpp"
#include "profitrec/vectors.hpp"

namespace profitrec {

/// Answer to "is there an r with E_p(r) >= V and dice(c, r) >= tau?".
struct DecisionOutcome {
  bool feasible = false;
  // Present iff feasible: nonnegative, inside the Dice ball, E_p >= V.
  std::optional<RatingVector> witness;
  double value_tested = 0.0;
  // The point the rule evaluated, kept for diagnostics even when infeasible
  // (may contain negative entries under the closed-form rule).
  std::vector<double> candidate;
  std::optional<double> lambda;
};

struct SearchConfig {
  double epsilon = 1e-6;  // absolute tolerance on expected profit
  std::size_t max_steps = 200;
  DecisionRule rule = DecisionRule::kNonnegative;
  SimilarityMeasure measure = SimilarityMeasure::kDice;
  bool clamp = false;

  void validate() const;
};

/// Expected profit when exactly one item is bought, item i with probability
/// r_i / sum r: sum p_i r_i / sum r. Throws kZeroRecommendation if sum r == 0.
double expected_profit_multinomial(std::span<const double> p,
                                   std::span<const double> r);
double expected_profit_multinomial(const ProfitVector& p, const RatingVector& r);

/// Decision procedure with the closed-form witness. E_p(r) >= V is equivalent to
/// sum (p_i - V) r_i >= 0, whose maximizer over the Dice sphere is the linear
/// solution shifted by V:
///
///   r_i = (p_i - V) / (2 lambda) + c_i / tau,
///   lambda = 1/2 sqrt(sum (p_i - V)^2 / ((1/tau^2 - 1) sum c^2)).
///
/// Feasible iff every r_i >= 0 and sum (p_i - V) r_i >= 0. When every p_i
/// equals V any point works and c is returned.
DecisionOutcome decide(const RatingVector& c, const ProfitVector& p,
                       double tau, double value);

/// Same question answered exactly over ball ∩ {r >= 0}. KKT gives
/// r_i = max(0, c_i/tau + s (p_i - V)) with the step s >= 0 chosen so r lies
/// on the sphere (or unbounded when zeroing the losing items already fits).
/// Returns the closed-form witness whenever that one is nonnegative.
DecisionOutcome decide_nonnegative(const RatingVector& c, const ProfitVector& p,
                                   double tau, double value);

/// ceil(log2(v_max / epsilon)), or 0 when epsilon >= v_max.
std::size_t search_step_bound(double v_max, double epsilon);

/// Binary search on V over [0, max_i p_i] using the configured decision
/// rule. Keeps the best feasible witness seen rather than the last one, since
/// the closed-form rule is not guaranteed monotone in V.
SolveReport solve_multinomial(const RatingVector& c, const ProfitVector& p,
                              double tau, const SearchConfig& config = {});

}  // namespace profitrec
