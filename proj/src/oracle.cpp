#include "profitrec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "profitrec/error.hpp"
#include "profitrec/similarity.hpp"
#include "profitrec/solver_linear.hpp"
#include "profitrec/solver_multinomial.hpp"

namespace profitrec {
namespace {

// Unit directions covering S^{n-1} for n <= 3 with roughly `count` points.
std::vector<std::vector<double>> directions(std::size_t n, std::size_t count) {
  std::vector<std::vector<double>> out;
  if (n == 1) {
    out = {{-1.0}, {1.0}};
  } else if (n == 2) {
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(count);
      out.push_back({std::cos(a), std::sin(a)});
    }
  } else {
    const auto polar = std::max<std::size_t>(
        3, static_cast<std::size_t>(std::sqrt(static_cast<double>(count) / 2)));
    const std::size_t azimuth = 2 * polar;
    out.reserve(polar * azimuth);
    for (std::size_t j = 0; j < polar; ++j) {
      const double t = std::numbers::pi * static_cast<double>(j) /
                       static_cast<double>(polar - 1);
      for (std::size_t l = 0; l < azimuth; ++l) {
        const double ph = 2.0 * std::numbers::pi * static_cast<double>(l) /
                          static_cast<double>(azimuth);
        out.push_back({std::sin(t) * std::cos(ph), std::sin(t) * std::sin(ph),
                       std::cos(t)});
        if (j == 0 || j + 1 == polar) break;  // poles need one azimuth
      }
    }
  }
  return out;
}

class GridScan {
 public:
  GridScan(const RatingVector& c, const ProfitVector& p, double tau,
           PurchaseModel model, bool cap)
      : c_(c), p_(p), tau_(tau), model_(model), cap_(cap) {}

  void offer(std::span<const double> r) {
    if (!feasible(r)) return;
    ++feasible_points_;
    const double profit = model_ == PurchaseModel::kLinear
                              ? dot(p_.values(), r) / c_.max_rating()
                              : dot(p_.values(), r) / sum(r);
    const bool better =
        best_.empty() || profit > best_profit_ ||
        (profit == best_profit_ &&
         std::lexicographical_compare(r.begin(), r.end(), best_.begin(),
                                      best_.end()));
    if (better) {
      best_.assign(r.begin(), r.end());
      best_profit_ = profit;
    }
  }

  GridMaximum result() const {
    if (best_.empty()) {
      throw Error(ErrorCode::kNoFeasibleWitness,
                  "grid scan found no feasible point");
    }
    return GridMaximum{RatingVector(best_, c_.max_rating(), Bounds::kRelaxed),
                       best_profit_, feasible_points_};
  }

 private:
  bool feasible(std::span<const double> r) const {
    for (double v : r) {
      if (v < 0.0) return false;
      if (cap_ && v > c_.max_rating()) return false;
    }
    if (model_ == PurchaseModel::kMultinomial && !(sum(r) > 0.0)) return false;
    return dice(c_.values(), r) >= tau_ - kThresholdTolerance;
  }

  const RatingVector& c_;
  const ProfitVector& p_;
  double tau_;
  PurchaseModel model_;
  bool cap_;
  std::vector<double> best_;
  double best_profit_ = 0.0;
  std::size_t feasible_points_ = 0;
};

double unit_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string_view to_string(PurchaseModel model) {
  return model == PurchaseModel::kLinear ? "linear" : "multinomial";
}

std::optional<PurchaseModel> parse_model(std::string_view name) {
  if (name == "linear") return PurchaseModel::kLinear;
  if (name == "multinomial") return PurchaseModel::kMultinomial;
  return std::nullopt;
}

double expected_profit(PurchaseModel model, const ProfitVector& p,
                       const RatingVector& r) {
  return model == PurchaseModel::kLinear ? expected_profit_linear(p, r)
                                         : expected_profit_multinomial(p, r);
}

GridMaximum grid_max_on_sphere(const RatingVector& c, const ProfitVector& p,
                               double tau, PurchaseModel model,
                               const GridOptions& options) {
  require_same_length(c.size(), p.size());
  const std::size_t n = c.size();
  if (n > 3) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "grid oracle supports n <= 3, got " + std::to_string(n));
  }
  if (options.resolution < 1000) {
    throw Error(ErrorCode::kInvalidConfig, "grid resolution must be >= 1000");
  }
  const SphereRegion ball = dice_sphere(c, tau);
  GridScan scan(c, p, tau, model,
                options.cap_at_max_rating && model == PurchaseModel::kLinear);

  if (!(ball.radius_squared > 0.0)) {
    scan.offer(c.values());
    return scan.result();
  }

  const double radius = ball.radius();
  std::vector<double> point(n);
  std::vector<double> projected(n);
  const auto visit = [&](const std::vector<std::vector<double>>& dirs,
                         double scale) {
    for (const auto& u : dirs) {
      bool negative = false;
      for (std::size_t i = 0; i < n; ++i) {
        point[i] = ball.center[i] + scale * u[i];
        projected[i] = std::max(0.0, point[i]);
        negative = negative || point[i] < 0.0;
      }
      scan.offer(point);
      if (negative) scan.offer(projected);
    }
  };

  visit(directions(n, options.resolution), radius);
  const auto coarse = directions(n, std::max<std::size_t>(
                                        100, options.resolution / 100));
  for (double shell : options.interior_shells) {
    visit(coarse, shell * radius);
  }
  return scan.result();
}

std::vector<double> finite_diff_gradient(const ScalarField& f,
                                         std::span<const double> r, double h) {
  if (!(h > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "step h must be positive");
  }
  std::vector<double> x(r.begin(), r.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double up = f(x);
    x[i] = saved - h;
    const double down = f(x);
    x[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

SimEstimate simulate_profit(const ProfitVector& p, const RatingVector& r,
                            PurchaseModel model, std::uint64_t trials,
                            std::uint64_t seed) {
  require_same_length(p.size(), r.size());
  if (trials == 0) {
    throw Error(ErrorCode::kInvalidConfig, "trials must be >= 1");
  }
  const std::size_t n = r.size();
  const double m = r.max_rating();
  double total = 0.0;
  if (model == PurchaseModel::kLinear) {
    for (std::size_t i = 0; i < n; ++i) {
      if (r[i] < 0.0 || r[i] > m) {
        throw Error(ErrorCode::kInvalidProbability,
                    "rating " + std::to_string(i) +
                        " gives purchase probability outside [0, 1]");
      }
    }
  } else {
    total = sum(r.values());
    if (!(total > 0.0)) {
      throw Error(ErrorCode::kZeroRecommendation,
                  "purchase distribution undefined: ratings sum to zero");
    }
  }

  std::mt19937_64 engine(seed);
  // Welford keeps the mean exact when every trial has the same profit.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t t = 1; t <= trials; ++t) {
    double profit = 0.0;
    if (model == PurchaseModel::kLinear) {
      for (std::size_t i = 0; i < n; ++i) {
        if (unit_uniform(engine) < r[i] / m) profit += p[i];
      }
    } else {
      const double target = unit_uniform(engine) * total;
      double cumulative = 0.0;
      std::size_t chosen = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (r[i] <= 0.0) continue;
        chosen = i;
        cumulative += r[i];
        if (target < cumulative) break;
      }
      profit = p[chosen];
    }
    const double delta = profit - mean;
    mean += delta / static_cast<double>(t);
    m2 += delta * (profit - mean);
  }
  const double variance =
      trials > 1 ? m2 / static_cast<double>(trials - 1) : 0.0;
  return SimEstimate{
      .mean_profit = mean,
      .std_error = std::sqrt(variance / static_cast<double>(trials)),
      .trials = trials,
      .seed = seed,
  };
}

}  // namespace profitrec
