#pragma once

#include <span>
#include <vector>

#include "profitrec/similarity.hpp"
#include "profitrec/solve_report.hpp"
#include "profitrec/vectors.hpp"

namespace profitrec {

struct LinearOptions {
  SimilarityMeasure measure = SimilarityMeasure::kDice;
  // Also report the recommendation projected onto [0, m].
  bool clamp = false;
};

/// Expected profit when item i is bought independently with probability
/// r_i / m: (1/m) sum p_i r_i. Entries above m are not rejected; the raw
/// solver output is scored with the same algebraic formula.
double expected_profit_linear(const ProfitVector& p, const RatingVector& r);

/// Maximizer of w.r over a ball: center + radius * w / |w|. Returns the
/// center when w is zero or the radius is zero.
std::vector<double> maximize_linear_on_ball(const SphereRegion& ball,
                                            std::span<const double> weights);

/// Profit-maximizing recommendation under the independent-purchase model,
/// subject to similarity(c, r) >= tau.
///
/// The maximum lies on the surface of the Dice sphere (the objective has a
/// constant nonzero gradient p/m, so there are no interior stationary
/// points), at
///
///   r_i = p_i sqrt((1/tau^2 - 1) sum c_j^2 / sum p_j^2) + c_i / tau
///
/// with multiplier lambda = (1/2m) sqrt(sum p^2 / ((1/tau^2 - 1) sum c^2)).
/// tau == 1 returns r = c exactly and leaves lambda unset.
///
/// The raw r may exceed m; affected indices go to cap_violations. With
/// options.clamp the projected vector is reported alongside, never instead.
SolveReport solve_linear(const RatingVector& c, const ProfitVector& p,
                         double tau, const LinearOptions& options = {});

struct GainBound {
  double tight;  // sqrt(1/tau^2 - 1) + 1/tau - 1
  double weak;   // 2 (1/tau - 1)
};

/// Guaranteed relative profit gain of solve_linear over presenting c.
GainBound gain_lower_bound(double tau);

}  // namespace profitrec
