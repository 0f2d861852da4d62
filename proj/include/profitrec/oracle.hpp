#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "profitrec/vectors.hpp"

namespace profitrec {

// Purchase behaviour phi(r):
//   kLinear       item i bought independently with probability r_i / m
//   kMultinomial  exactly one item bought, i with probability r_i / sum r
enum class PurchaseModel { kLinear, kMultinomial };

std::string_view to_string(PurchaseModel model);
std::optional<PurchaseModel> parse_model(std::string_view name);

/// p . phi(r) under the given model.
double expected_profit(PurchaseModel model, const ProfitVector& p,
                       const RatingVector& r);

struct GridOptions {
  std::size_t resolution = 1'000'000;  // surface points; at least 1000
  // Reject points with entries above m (Linear only).
  bool cap_at_max_rating = false;
  // Shells at these fractions of the radius are scanned with a coarse
  // subsample of the surface directions.
  std::vector<double> interior_shells = {0.0, 0.25, 0.5, 0.75};
};

struct GridMaximum {
  RatingVector point;
  double profit;
  std::size_t feasible_points;
};

/// Brute-force maximum of expected profit over the feasible Dice region for
/// n <= 3. The sphere surface is scanned by angle (n = 2) or by polar and
/// azimuthal angle (n = 3); every scanned point is also projected onto the
/// nonnegative orthant so faces of the feasible set are covered. A point is
/// kept only if it is nonnegative, has dice(c, r) >= tau - 1e-9 evaluated
/// directly, and meets the optional cap. Ties go to the lexicographically
/// smallest point. Throws kDimensionTooLarge for n > 3.
GridMaximum grid_max_on_sphere(const RatingVector& c, const ProfitVector& p,
                               double tau, PurchaseModel model,
                               const GridOptions& options = {});

using ScalarField = std::function<double(std::span<const double>)>;

/// Central differences, one coordinate at a time. O(h^2) error.
std::vector<double> finite_diff_gradient(const ScalarField& f,
                                         std::span<const double> r, double h);

inline constexpr std::string_view kSimulationGenerator = "mt19937_64";

struct SimEstimate {
  double mean_profit;
  double std_error;  // sample standard deviation / sqrt(trials)
  std::uint64_t trials;
  std::uint64_t seed;
  std::string generator{kSimulationGenerator};
};

/// Monte Carlo estimate of p . phi(r). Bit-reproducible for a given seed.
/// kLinear requires 0 <= r_i <= m (kInvalidProbability otherwise);
/// kMultinomial requires sum r > 0.
SimEstimate simulate_profit(const ProfitVector& p, const RatingVector& r,
                            PurchaseModel model, std::uint64_t trials,
                            std::uint64_t seed);

}  // namespace profitrec
