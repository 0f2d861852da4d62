#include "profitrec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "profitrec/oracle.hpp"
#include "profitrec/similarity.hpp"
#include "profitrec/solver_linear.hpp"
#include "profitrec/solver_multinomial.hpp"

namespace profitrec {
namespace {

constexpr double kMaxRating = 5.0;

struct Instance {
  RatingVector c;
  ProfitVector p;
  double tau;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

  std::vector<double> ratings(std::size_t n) {
    std::vector<double> v(n);
    do {
      for (auto& x : v) x = uniform(0.0, kMaxRating);
    } while (squared_norm(v) == 0.0);
    return v;
  }

  Instance instance(std::size_t n, double tau) {
    std::vector<double> p(n);
    for (auto& x : p) x = uniform(0.5, 10.0);
    return {RatingVector(ratings(n), kMaxRating), ProfitVector(p), tau};
  }

  double tau() {
    static constexpr double kTaus[] = {0.5, 0.7, 0.9, 0.99};
    return kTaus[index(0, 3)];
  }

 private:
  std::mt19937_64 engine_;
};

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

CheckResult tally(std::string name, std::size_t violations, std::size_t total,
                  std::string extra = {}) {
  std::string detail =
      std::to_string(violations) + "/" + std::to_string(total) + " violations";
  if (!extra.empty()) detail += "; " + extra;
  return {std::move(name), violations == 0, std::move(detail)};
}

using LinearSolver =
    std::function<SolveReport(const RatingVector&, const ProfitVector&, double)>;

LinearSolver make_linear_solver(bool faulty) {
  if (!faulty) {
    return [](const RatingVector& c, const ProfitVector& p, double tau) {
      return solve_linear(c, p, tau);
    };
  }
  return [](const RatingVector& c, const ProfitVector& p, double tau) {
    SolveReport report = solve_linear(c, p, tau);
    std::vector<double> v(report.recommendation.values().begin(),
                          report.recommendation.values().end());
    for (auto& x : v) x *= 0.97;
    report.recommendation = RatingVector(v, c.max_rating(), Bounds::kRelaxed);
    report.achieved_similarity = dice(c, report.recommendation);
    report.expected_profit = expected_profit_linear(p, report.recommendation);
    report.gain_ratio = (report.expected_profit - report.baseline_profit) /
                        report.baseline_profit;
    return report;
  };
}

void similarity_checks(Sampler& rng, std::vector<CheckResult>& out) {
  const std::size_t pairs = 10'000;
  std::size_t range = 0, identity = 0, zero = 0, angle = 0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t n = rng.index(1, 50);
    const auto c = rng.ratings(n);
    auto r = rng.ratings(n);
    const double d = dice(c, r);
    if (d < 0.0 || d > 1.0) ++range;
    if (std::abs(dice(c, c) - 1.0) > 1e-12) ++identity;
    if (c != r && d >= 1.0) ++identity;
    auto nudged = c;
    nudged[rng.index(0, n - 1)] += 1e-3;
    if (dice(c, nudged) >= 1.0) ++identity;
    const double form = cosine(c, r) * 2.0 * std::sqrt(squared_norm(c)) *
                        std::sqrt(squared_norm(r)) /
                        (squared_norm(c) + squared_norm(r));
    if (std::abs(form - d) > 1e-12) ++angle;
    // r zero wherever c is positive
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] > 0.0) r[i] = 0.0;
    }
    if (dice(c, r) != 0.0) ++zero;
  }
  out.push_back(tally("dice range [0,1]", range, pairs));
  out.push_back(tally("dice identity iff equal", identity, pairs));
  out.push_back(tally("dice zero iff no overlap", zero, pairs));
  out.push_back(tally("dice angle form", angle, pairs));

  for (const auto measure : {SimilarityMeasure::kDice, SimilarityMeasure::kJaccard}) {
    std::size_t mismatches = 0, total = 0;
    for (double tau : {0.5, 0.9, 0.99}) {
      for (std::size_t k = 0; k < 5'000; ++k) {
        const std::size_t n = rng.index(1, 10);
        const RatingVector c(rng.ratings(n), kMaxRating);
        const RatingVector r(rng.ratings(n), kMaxRating);
        const SphereRegion ball = measure == SimilarityMeasure::kDice
                                      ? dice_sphere(c, tau)
                                      : jaccard_sphere(c, tau);
        const double s = similarity(measure, c, r);
        ++total;
        if (std::abs(s - tau) <= kThresholdTolerance) continue;
        if ((s >= tau) != ball.contains(r.values())) ++mismatches;
      }
    }
    out.push_back(tally(std::string(to_string(measure)) + " sphere equivalence",
                        mismatches, total));
  }

  const RatingVector picky(std::vector<double>(10, 1.0), kMaxRating);
  const RatingVector high(std::vector<double>(10, 5.0), kMaxRating);
  std::vector<double> prefs(100, 1.0), flipped(100, 1.0);
  for (std::size_t i = 0; i < 3; ++i) {
    prefs[i] = 5.0;
    flipped[99 - i] = 5.0;
  }
  const RatingVector cm(prefs, kMaxRating), rm(flipped, kMaxRating);
  const bool flaws = std::abs(cosine(picky, high) - 1.0) < 1e-12 &&
                     std::abs(dice(picky, high) - 5.0 / 13.0) < 1e-12 &&
                     std::abs(one_minus_mse(cm, rm) - 0.9616) < 1e-12 &&
                     std::abs(dice(cm, rm) - 31.0 / 43.0) < 1e-12;
  out.push_back({"measure flaw regressions", flaws,
                 "cosine=" + fmt(cosine(picky, high)) +
                     " dice=" + fmt(dice(picky, high)) +
                     " 1-mse=" + fmt(one_minus_mse(cm, rm)) +
                     " dice=" + fmt(dice(cm, rm))});
}

void linear_checks(Sampler& rng, const VerifyConfig& config,
                   std::vector<CheckResult>& out) {
  const LinearSolver solve = make_linear_solver(config.inject_linear_fault);

  std::size_t optimal = 0, on_sphere = 0, stationary = 0;
  double worst_gap = 0.0;
  const std::size_t instances = 20;
  for (std::size_t k = 0; k < instances; ++k) {
    const auto inst = rng.instance(rng.index(2, 3), rng.tau());
    const auto report = solve(inst.c, inst.p, inst.tau);
    const auto grid = grid_max_on_sphere(inst.c, inst.p, inst.tau,
                                         PurchaseModel::kLinear,
                                         {.resolution = config.resolution});
    const double rel = (grid.profit - report.expected_profit) / grid.profit;
    worst_gap = std::max(worst_gap, std::abs(rel));
    // The closed form must match the grid and never lose to it.
    if (std::abs(rel) > 1e-3 || rel > 1e-9) ++optimal;
    if (std::abs(report.achieved_similarity - inst.tau) > kThresholdTolerance) {
      ++on_sphere;
    }
    const double m = inst.c.max_rating();
    for (std::size_t i = 0; i < inst.c.size() && report.lambda; ++i) {
      const double residual =
          inst.p[i] / m - 2.0 * *report.lambda *
                              (report.recommendation[i] - inst.c[i] / inst.tau);
      if (std::abs(residual) > 1e-9) {
        ++stationary;
        break;
      }
    }
  }
  out.push_back(tally("linear optimality vs grid", optimal, instances,
                      "worst rel gap " + fmt(worst_gap)));
  out.push_back(tally("linear solution on dice sphere", on_sphere, instances));
  out.push_back(tally("linear lagrange stationarity", stationary, instances));

  std::size_t below = 0, equality = 0;
  const std::size_t gain_cases = 1'000;
  for (std::size_t k = 0; k < gain_cases; ++k) {
    const double tau = rng.uniform(0.05, 1.0);
    const auto inst = rng.instance(rng.index(1, 20), tau);
    const auto report = solve(inst.c, inst.p, tau);
    const double bound = gain_lower_bound(tau).tight;
    if (report.gain_ratio < bound - 1e-9) ++below;
    std::vector<double> scaled(inst.c.values().begin(), inst.c.values().end());
    if (std::any_of(scaled.begin(), scaled.end(), [](double x) { return x <= 0.0; })) {
      continue;
    }
    const double alpha = rng.uniform(0.1, 10.0);
    for (auto& x : scaled) x *= alpha;
    const auto prop = solve(inst.c, ProfitVector(scaled), tau);
    if (std::abs(prop.gain_ratio - bound) > 1e-9) ++equality;
  }
  out.push_back(tally("gain >= lower bound", below, gain_cases));
  out.push_back(tally("gain bound tight when p ~ c", equality, gain_cases));

  for (double tau : {0.5, 0.7, 0.9, 0.99}) {
    const auto b = gain_lower_bound(tau);
    out.push_back({"bound ordering tau=" + fmt(tau), b.tight >= b.weak,
                   "tight=" + fmt(b.tight) + " weak=" + fmt(b.weak)});
  }

  std::size_t gradient = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const auto inst = rng.instance(rng.index(1, 6), 0.9);
    const auto ball = dice_sphere(inst.c, inst.tau);
    std::vector<double> r = ball.center;
    for (auto& x : r) x += rng.uniform(-0.3, 0.3) * ball.radius() / std::sqrt(r.size());
    const auto g = finite_diff_gradient(
        [&](std::span<const double> x) { return dot(inst.p.values(), x) / kMaxRating; },
        r, 1e-5);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(g[i] - inst.p[i] / kMaxRating) > 1e-6) {
        ++gradient;
        break;
      }
    }
  }
  out.push_back(tally("linear gradient constant p/m", gradient, 100));
}

void multinomial_checks(Sampler& rng, const VerifyConfig& config,
                        std::vector<CheckResult>& out) {
  std::size_t reduction = 0;
  const std::size_t triples = 10'000;
  for (std::size_t k = 0; k < triples; ++k) {
    const std::size_t n = rng.index(1, 10);
    const auto inst = rng.instance(n, 0.9);
    const auto r = rng.ratings(n);
    const double value = rng.uniform(0.0, 10.0);
    const double gap = expected_profit_multinomial(inst.p.values(), r) - value;
    double rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) rhs += (inst.p[i] - value) * r[i];
    const double scale = 1e-12 * (dot(inst.p.values(), r) + value * sum(r));
    if (std::abs(rhs) > scale && (gap >= 0.0) != (rhs >= 0.0)) ++reduction;
  }
  out.push_back(tally("reduction identity", reduction, triples));

  std::size_t invalid = 0, stationary = 0, total = 0;
  for (std::size_t k = 0; k < 2'000; ++k) {
    const auto inst = rng.instance(rng.index(1, 8), rng.tau());
    const double value = rng.uniform(0.0, inst.p.max_profit());
    for (const bool closed_form : {true, false}) {
      const auto outcome = closed_form ? decide(inst.c, inst.p, inst.tau, value)
                                    : decide_nonnegative(inst.c, inst.p, inst.tau, value);
      ++total;
      if (outcome.feasible) {
        const auto& w = *outcome.witness;
        const bool ok =
            dice(inst.c, w) >= inst.tau - kThresholdTolerance &&
            std::all_of(w.values().begin(), w.values().end(),
                        [](double x) { return x >= 0.0; }) &&
            expected_profit_multinomial(inst.p, w) >= value - 1e-9;
        if (!ok) ++invalid;
      }
      if (closed_form && outcome.lambda) {
        for (std::size_t i = 0; i < inst.c.size(); ++i) {
          const double residual =
              (inst.p[i] - value) -
              2.0 * *outcome.lambda * (outcome.candidate[i] - inst.c[i] / inst.tau);
          if (std::abs(residual) > 1e-9 * (1.0 + std::abs(inst.p[i] - value))) {
            ++stationary;
            break;
          }
        }
      }
    }
  }
  out.push_back(tally("decision witness validity", invalid, total));
  out.push_back(tally("shifted solution stationarity", stationary, total));

  std::size_t interior = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const auto inst = rng.instance(rng.index(2, 6), 0.9);
    const auto ball = dice_sphere(inst.c, inst.tau);
    std::vector<double> r = ball.center;
    for (auto& x : r) x += rng.uniform(-0.3, 0.3) * ball.radius() / std::sqrt(r.size());
    const auto g = finite_diff_gradient(
        [&](std::span<const double> x) { return expected_profit_multinomial(inst.p.values(), x); },
        r, 1e-5);
    if (squared_norm(g) < 1e-16) ++interior;
  }
  out.push_back(tally("multinomial gradient nonzero inside ball", interior, 100));

  std::size_t near = 0, anytime = 0, steps = 0, closed_short = 0;
  double worst_closed = 0.0;
  const std::size_t instances = 20;
  for (std::size_t k = 0; k < instances; ++k) {
    const auto inst = rng.instance(rng.index(2, 3), rng.tau());
    const double eps = 1e-6 * inst.p.max_profit();
    const auto report = solve_multinomial(inst.c, inst.p, inst.tau, {.epsilon = eps});
    const auto grid = grid_max_on_sphere(inst.c, inst.p, inst.tau,
                                         PurchaseModel::kMultinomial,
                                         {.resolution = config.resolution});
    const double allowed = eps + 1e-3 * grid.profit;
    if (report.expected_profit < grid.profit - allowed) ++near;
    const auto& trace = report.search->best_profit_by_step;
    if (!std::is_sorted(trace.begin(), trace.end())) ++anytime;
    if (report.search->steps > report.search->step_bound) ++steps;

    const auto closed = solve_multinomial(
        inst.c, inst.p, inst.tau,
        {.epsilon = eps, .rule = DecisionRule::kClosedForm});
    if (closed.expected_profit < grid.profit - allowed) ++closed_short;
    worst_closed =
        std::max(worst_closed, (grid.profit - closed.expected_profit) / grid.profit);
  }
  out.push_back(tally("multinomial near-optimality vs grid", near, instances));
  out.push_back(tally("multinomial anytime monotone", anytime, instances));
  out.push_back(tally("multinomial step bound", steps, instances));
  out.push_back({"closed-form decision gap", true,
                 std::to_string(closed_short) + "/" + std::to_string(instances) +
                     " below optimum; worst rel gap " + fmt(worst_closed),
                 true});
}

void simulation_checks(Sampler& rng, const VerifyConfig& config,
                       std::vector<CheckResult>& out) {
  for (const auto model : {PurchaseModel::kLinear, PurchaseModel::kMultinomial}) {
    std::size_t outside = 0;
    const std::size_t fixtures = 5;
    for (std::size_t k = 0; k < fixtures; ++k) {
      const auto inst = rng.instance(rng.index(1, 5), 0.9);
      const auto est = simulate_profit(inst.p, inst.c, model, config.trials,
                                       config.seed + k);
      const double analytic = expected_profit(model, inst.p, inst.c);
      if (std::abs(est.mean_profit - analytic) >
          3.0 * est.std_error + 1e-12 * std::abs(analytic)) {
        ++outside;
      }
    }
    out.push_back(tally("monte carlo " + std::string(to_string(model)), outside,
                        fixtures));
  }
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyConfig& config) {
  Sampler rng(config.seed);
  std::vector<CheckResult> results;
  similarity_checks(rng, results);
  linear_checks(rng, config, results);
  multinomial_checks(rng, config, results);
  simulation_checks(rng, config, results);
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) {
    return r.informational || r.passed;
  });
}

void print_table(const std::vector<CheckResult>& results, std::ostream& out) {
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    const char* status = r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL");
    out << status << "  " << std::left << std::setw(static_cast<int>(width))
        << r.name << "  " << r.detail << '\n';
  }
  out << (all_passed(results) ? "all checks passed" : "verification FAILED")
      << '\n';
}

}  // namespace profitrec
