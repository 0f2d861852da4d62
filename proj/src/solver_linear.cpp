#include "profitrec/solver_linear.hpp"

#include <algorithm>
#include <cmath>

#include "profitrec/error.hpp"

namespace profitrec {

double expected_profit_linear(const ProfitVector& p, const RatingVector& r) {
  return dot(p.values(), r.values()) / r.max_rating();
}

std::vector<double> maximize_linear_on_ball(const SphereRegion& ball,
                                            std::span<const double> weights) {
  require_same_length(ball.center.size(), weights.size());
  std::vector<double> r = ball.center;
  const double w_norm = std::sqrt(squared_norm(weights));
  if (!(w_norm > 0.0) || !(ball.radius_squared > 0.0)) return r;
  const double step = ball.radius() / w_norm;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += step * weights[i];
  return r;
}

SolveReport solve_linear(const RatingVector& c, const ProfitVector& p,
                         double tau, const LinearOptions& options) {
  require_same_length(c.size(), p.size());
  const double dice_tau = equivalent_dice_threshold(options.measure, tau);
  const SphereRegion ball = dice_sphere(c, dice_tau);

  std::optional<double> lambda;
  std::vector<double> raw;
  if (dice_tau == 1.0) {
    raw.assign(c.values().begin(), c.values().end());
  } else {
    raw = maximize_linear_on_ball(ball, p.values());
    lambda = std::sqrt(squared_norm(p.values()) / ball.radius_squared) /
             (2.0 * c.max_rating());
  }

  RatingVector r(std::move(raw), c.max_rating(), Bounds::kRelaxed);
  const double baseline = expected_profit_linear(p, c);
  const double profit = expected_profit_linear(p, r);

  SolveReport report{
      .recommendation = r,
      .achieved_similarity = similarity(options.measure, c, r),
      .expected_profit = profit,
      .baseline_profit = baseline,
      .gain_ratio = (profit - baseline) / baseline,
      .lambda = lambda,
      .cap_violations = r.cap_violations(),
  };
  if (options.clamp) {
    RatingVector projected = r.clamped();
    const double clamped_profit = expected_profit_linear(p, projected);
    report.clamped = true;
    report.clamped_result = ClampedResult{
        .recommendation = projected,
        .achieved_similarity = similarity(options.measure, c, projected),
        .expected_profit = clamped_profit,
        .gain_ratio = (clamped_profit - baseline) / baseline,
    };
  }
  return report;
}

GainBound gain_lower_bound(double tau) {
  validate_tau(tau);
  const double inv = 1.0 / tau;
  return GainBound{
      .tight = std::sqrt(std::max(0.0, inv * inv - 1.0)) + inv - 1.0,
      .weak = 2.0 * (inv - 1.0),
  };
}

}  // namespace profitrec
