#include "profitrec/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "profitrec/error.hpp"

namespace profitrec {
namespace {

void require_customer(double c_norm2) {
  if (!(c_norm2 > 0.0)) {
    throw Error(ErrorCode::kDegenerateCustomer,
                "customer rating vector is all zero");
  }
}

struct Moments {
  double cr;
  double cc;
  double rr;
};

Moments moments(std::span<const double> c, std::span<const double> r) {
  require_same_length(c.size(), r.size());
  Moments m{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < c.size(); ++i) {
    m.cr += c[i] * r[i];
    m.cc += c[i] * c[i];
    m.rr += r[i] * r[i];
  }
  require_customer(m.cc);
  return m;
}

SphereRegion scaled_ball(const RatingVector& c, double center_scale) {
  const double cc = squared_norm(c.values());
  require_customer(cc);
  SphereRegion ball;
  ball.center.reserve(c.size());
  for (double v : c.values()) ball.center.push_back(v * center_scale);
  // center_scale >= 1 for both measures; clamp tiny negative rounding at tau=1
  ball.radius_squared = std::max(0.0, (center_scale * center_scale - 1.0) * cc);
  return ball;
}

}  // namespace

std::string_view to_string(SimilarityMeasure measure) {
  switch (measure) {
    case SimilarityMeasure::kDice: return "dice";
    case SimilarityMeasure::kJaccard: return "jaccard";
    case SimilarityMeasure::kCosine: return "cosine";
    case SimilarityMeasure::kOneMinusMse: return "one_minus_mse";
  }
  return "unknown";
}

std::optional<SimilarityMeasure> parse_measure(std::string_view name) {
  if (name == "dice") return SimilarityMeasure::kDice;
  if (name == "jaccard") return SimilarityMeasure::kJaccard;
  if (name == "cosine") return SimilarityMeasure::kCosine;
  if (name == "one_minus_mse" || name == "mse") {
    return SimilarityMeasure::kOneMinusMse;
  }
  return std::nullopt;
}

double dice(std::span<const double> c, std::span<const double> r) {
  const auto m = moments(c, r);
  return 2.0 * m.cr / (m.cc + m.rr);
}

double dice(const RatingVector& c, const RatingVector& r) {
  return dice(c.values(), r.values());
}

double jaccard(std::span<const double> c, std::span<const double> r) {
  const auto m = moments(c, r);
  return m.cr / (m.cc + m.rr - m.cr);
}

double jaccard(const RatingVector& c, const RatingVector& r) {
  return jaccard(c.values(), r.values());
}

double cosine(std::span<const double> c, std::span<const double> r) {
  const auto m = moments(c, r);
  if (!(m.rr > 0.0)) {
    throw Error(ErrorCode::kZeroRecommendation,
                "cosine is undefined for an all-zero recommendation");
  }
  return m.cr / std::sqrt(m.cc * m.rr);
}

double cosine(const RatingVector& c, const RatingVector& r) {
  return cosine(c.values(), r.values());
}

double one_minus_mse(std::span<const double> c, std::span<const double> r,
                     double max_rating) {
  require_same_length(c.size(), r.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double d = (c[i] - r[i]) / max_rating;
    acc += d * d;
  }
  return 1.0 - acc / static_cast<double>(c.size());
}

double one_minus_mse(const RatingVector& c, const RatingVector& r) {
  return one_minus_mse(c.values(), r.values(), c.max_rating());
}

double similarity(SimilarityMeasure measure, const RatingVector& c,
                  const RatingVector& r) {
  switch (measure) {
    case SimilarityMeasure::kDice: return dice(c, r);
    case SimilarityMeasure::kJaccard: return jaccard(c, r);
    case SimilarityMeasure::kCosine: return cosine(c, r);
    case SimilarityMeasure::kOneMinusMse: return one_minus_mse(c, r);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown similarity measure");
}

void validate_tau(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kInvalidTau,
                "tau = " + std::to_string(tau) + " is outside (0, 1]");
  }
}

TrustConstraint::TrustConstraint(SimilarityMeasure measure, double tau)
    : measure_(measure), tau_(tau) {
  validate_tau(tau);
}

bool TrustConstraint::satisfied_by(const RatingVector& c,
                                   const RatingVector& r) const {
  return similarity(measure_, c, r) >= tau_ - kThresholdTolerance;
}

double SphereRegion::radius() const { return std::sqrt(radius_squared); }

double SphereRegion::squared_distance(std::span<const double> r) const {
  require_same_length(center.size(), r.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double d = r[i] - center[i];
    acc += d * d;
  }
  return acc;
}

bool SphereRegion::contains(std::span<const double> r, double slack) const {
  return squared_distance(r) <= radius_squared + slack;
}

SphereRegion dice_sphere(const RatingVector& c, double tau) {
  validate_tau(tau);
  return scaled_ball(c, 1.0 / tau);
}

SphereRegion jaccard_sphere(const RatingVector& c, double tau) {
  validate_tau(tau);
  return scaled_ball(c, (1.0 + tau) / (2.0 * tau));
}

double equivalent_dice_threshold(SimilarityMeasure measure, double tau) {
  validate_tau(tau);
  switch (measure) {
    case SimilarityMeasure::kDice: return tau;
    case SimilarityMeasure::kJaccard: return 2.0 * tau / (1.0 + tau);
    default:
      throw Error(ErrorCode::kInvalidConfig,
                  std::string(to_string(measure)) +
                      " has no equivalent ball constraint");
  }
}

}  // namespace profitrec
