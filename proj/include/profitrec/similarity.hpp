#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "profitrec/vectors.hpp"

namespace profitrec {

// Absolute slack used whenever a computed similarity is compared against a
// threshold. Boundary solutions sit on the sphere analytically, not bitwise.
inline constexpr double kThresholdTolerance = 1e-9;

enum class SimilarityMeasure { kDice, kJaccard, kCosine, kOneMinusMse };

std::string_view to_string(SimilarityMeasure measure);
std::optional<SimilarityMeasure> parse_measure(std::string_view name);

// The span overloads are the workhorses; the RatingVector overloads exist so
// call sites read naturally. All throw kLengthMismatch on unequal lengths and
// kDegenerateCustomer when the customer vector c is all zero.

/// 2 c.r / (|c|^2 + |r|^2)
double dice(std::span<const double> c, std::span<const double> r);
double dice(const RatingVector& c, const RatingVector& r);

/// c.r / (|c|^2 + |r|^2 - c.r)
double jaccard(std::span<const double> c, std::span<const double> r);
double jaccard(const RatingVector& c, const RatingVector& r);

/// Cosine of the angle between c and r. Also throws kZeroRecommendation when
/// r is all zero, since the angle is undefined.
double cosine(std::span<const double> c, std::span<const double> r);
double cosine(const RatingVector& c, const RatingVector& r);

/// 1 - mean(((c_i - r_i) / m)^2). Defined for an all-zero c.
double one_minus_mse(std::span<const double> c, std::span<const double> r,
                     double max_rating);
double one_minus_mse(const RatingVector& c, const RatingVector& r);

double similarity(SimilarityMeasure measure, const RatingVector& c,
                  const RatingVector& r);

/// Throws kInvalidTau unless 0 < tau <= 1.
void validate_tau(double tau);

class TrustConstraint {
 public:
  TrustConstraint(SimilarityMeasure measure, double tau);

  SimilarityMeasure measure() const noexcept { return measure_; }
  double tau() const noexcept { return tau_; }

  bool satisfied_by(const RatingVector& c, const RatingVector& r) const;

 private:
  SimilarityMeasure measure_;
  double tau_;
};

/// Closed Euclidean ball {r : |r - center|^2 <= radius_squared}.
struct SphereRegion {
  std::vector<double> center;
  double radius_squared = 0.0;

  double radius() const;
  double squared_distance(std::span<const double> r) const;
  bool contains(std::span<const double> r, double slack = 0.0) const;
};

/// Ball equivalent to dice(c, r) >= tau: center c/tau, radius^2
/// (1/tau^2 - 1)|c|^2.
SphereRegion dice_sphere(const RatingVector& c, double tau);

/// Ball equivalent to jaccard(c, r) >= tau, obtained by completing the square
/// on (1 + tau) c.r >= tau (|c|^2 + |r|^2): center c (1 + tau) / (2 tau),
/// radius^2 ((1 + tau)^2 / (4 tau^2) - 1)|c|^2.
SphereRegion jaccard_sphere(const RatingVector& c, double tau);

/// Jaccard = D / (2 - D) is increasing in Dice D, so a Jaccard threshold tau
/// is the Dice threshold 2 tau / (1 + tau). Dice maps to itself. Cosine and
/// 1-MSE have no such ball and raise kInvalidConfig.
double equivalent_dice_threshold(SimilarityMeasure measure, double tau);

}  // namespace profitrec
