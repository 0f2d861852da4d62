#include "profitrec/solver_multinomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "profitrec/error.hpp"
#include "profitrec/solver_linear.hpp"

namespace profitrec {
namespace {

std::vector<double> shifted_weights(const ProfitVector& p, double value) {
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = p[i] - value;
  return w;
}

bool all_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Accepts the candidate when it is nonnegative, non-trivial and satisfies the
// linearized profit test.
DecisionOutcome conclude(const RatingVector& c, std::span<const double> w,
                         std::vector<double> candidate, double value,
                         std::optional<double> lambda) {
  DecisionOutcome out;
  out.value_tested = value;
  out.lambda = lambda;
  const bool nonnegative = std::all_of(candidate.begin(), candidate.end(),
                                       [](double x) { return x >= 0.0; });
  if (nonnegative && sum(candidate) > 0.0 && dot(w, candidate) >= 0.0) {
    out.feasible = true;
    out.witness.emplace(candidate, c.max_rating(), Bounds::kRelaxed);
  }
  out.candidate = std::move(candidate);
  return out;
}

DecisionOutcome degenerate(const RatingVector& c, double value) {
  DecisionOutcome out;
  out.feasible = true;
  out.value_tested = value;
  out.witness = c;
  out.candidate.assign(c.values().begin(), c.values().end());
  return out;
}

void check_inputs(const RatingVector& c, const ProfitVector& p, double tau) {
  require_same_length(c.size(), p.size());
  validate_tau(tau);
}

std::optional<double> decision_lambda(std::span<const double> w,
                                      const SphereRegion& ball) {
  if (!(ball.radius_squared > 0.0)) return std::nullopt;
  return 0.5 * std::sqrt(squared_norm(w) / ball.radius_squared);
}

}  // namespace

void SearchConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidConfig, "epsilon must be positive");
  }
}

double expected_profit_multinomial(std::span<const double> p,
                                   std::span<const double> r) {
  require_same_length(p.size(), r.size());
  const double total = sum(r);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kZeroRecommendation,
                "purchase distribution undefined: ratings sum to zero");
  }
  return dot(p, r) / total;
}

double expected_profit_multinomial(const ProfitVector& p,
                                   const RatingVector& r) {
  return expected_profit_multinomial(p.values(), r.values());
}

DecisionOutcome decide(const RatingVector& c, const ProfitVector& p,
                       double tau, double value) {
  check_inputs(c, p, tau);
  const SphereRegion ball = dice_sphere(c, tau);
  const auto w = shifted_weights(p, value);
  if (all_zero(w)) return degenerate(c, value);
  return conclude(c, w, maximize_linear_on_ball(ball, w), value,
                  decision_lambda(w, ball));
}

DecisionOutcome decide_nonnegative(const RatingVector& c,
                                   const ProfitVector& p, double tau,
                                   double value) {
  check_inputs(c, p, tau);
  const SphereRegion ball = dice_sphere(c, tau);
  const auto w = shifted_weights(p, value);
  if (all_zero(w)) return degenerate(c, value);
  const auto& center = ball.center;
  const std::size_t n = w.size();

  // |r(s) - center|^2 is piecewise quadratic and non-decreasing in s: items
  // with w_i < 0 stop moving once they hit zero at s = center_i / -w_i.
  struct Breakpoint {
    double s;
    std::size_t index;
  };
  std::vector<Breakpoint> breakpoints;
  double active = 0.0;  // sum of w_i^2 over items still moving
  for (std::size_t i = 0; i < n; ++i) {
    active += w[i] * w[i];
    if (w[i] < 0.0) breakpoints.push_back({center[i] / -w[i], i});
  }
  std::sort(breakpoints.begin(), breakpoints.end(),
            [](const Breakpoint& a, const Breakpoint& b) {
              return a.s < b.s || (a.s == b.s && a.index < b.index);
            });

  const double r2 = ball.radius_squared;
  double saturated = 0.0;  // sum of center_i^2 over items pinned at zero
  double step = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& bp : breakpoints) {
    if (active > 0.0 && active * bp.s * bp.s + saturated >= r2) {
      step = std::sqrt(std::max(0.0, r2 - saturated) / active);
      found = true;
      break;
    }
    active -= w[bp.index] * w[bp.index];
    saturated += center[bp.index] * center[bp.index];
  }
  if (!found && active > 0.0) {
    step = std::sqrt(std::max(0.0, r2 - saturated) / active);
  }

  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isinf(step)) {
      // Only items with w_i <= 0 remain; pin the losing ones at zero.
      r[i] = w[i] < 0.0 ? 0.0 : center[i];
    } else {
      r[i] = std::max(0.0, center[i] + step * w[i]);
    }
  }
  return conclude(c, w, std::move(r), value, decision_lambda(w, ball));
}

std::size_t search_step_bound(double v_max, double epsilon) {
  if (epsilon >= v_max) return 0;
  return static_cast<std::size_t>(std::ceil(std::log2(v_max / epsilon)));
}

SolveReport solve_multinomial(const RatingVector& c, const ProfitVector& p,
                              double tau, const SearchConfig& config) {
  config.validate();
  require_same_length(c.size(), p.size());
  const double dice_tau = equivalent_dice_threshold(config.measure, tau);
  const auto decide_at = [&](double value) {
    return config.rule == DecisionRule::kClosedForm
               ? decide(c, p, dice_tau, value)
               : decide_nonnegative(c, p, dice_tau, value);
  };

  const double baseline = expected_profit_multinomial(p, c);
  const double v_max = p.max_profit();

  DecisionOutcome first = decide_at(0.0);
  if (!first.feasible) {
    throw Error(ErrorCode::kNoFeasibleWitness,
                "decision at V = 0 failed; this indicates a solver defect");
  }
  RatingVector best = *first.witness;
  double best_profit = expected_profit_multinomial(p, best);
  std::optional<double> best_lambda = first.lambda;

  SearchTrace trace{.rule = config.rule,
                    .step_bound = search_step_bound(v_max, config.epsilon),
                    .lower = 0.0,
                    .upper = v_max};
  while (trace.upper - trace.lower > config.epsilon &&
         trace.steps < config.max_steps) {
    const double mid = 0.5 * (trace.lower + trace.upper);
    DecisionOutcome outcome = decide_at(mid);
    if (outcome.feasible) {
      trace.lower = mid;
      const double profit = expected_profit_multinomial(p, *outcome.witness);
      if (profit > best_profit) {
        best = *outcome.witness;
        best_profit = profit;
        best_lambda = outcome.lambda;
      }
    } else {
      trace.upper = mid;
    }
    ++trace.steps;
    trace.best_profit_by_step.push_back(best_profit);
  }

  SolveReport report{
      .recommendation = best,
      .achieved_similarity = similarity(config.measure, c, best),
      .expected_profit = best_profit,
      .baseline_profit = baseline,
      .gain_ratio = (best_profit - baseline) / baseline,
      .lambda = best_lambda,
      .cap_violations = best.cap_violations(),
      .search = std::move(trace),
  };
  if (config.clamp) {
    RatingVector projected = best.clamped();
    const double clamped_profit = expected_profit_multinomial(p, projected);
    report.clamped = true;
    report.clamped_result = ClampedResult{
        .recommendation = projected,
        .achieved_similarity = similarity(config.measure, c, projected),
        .expected_profit = clamped_profit,
        .gain_ratio = (clamped_profit - baseline) / baseline,
    };
  }
  return report;
}

}  // namespace profitrec
