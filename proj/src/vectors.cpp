#include "profitrec/vectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "profitrec/error.hpp"

namespace profitrec {

RatingVector::RatingVector(std::vector<double> values, double max_rating,
                           Bounds bounds)
    : values_(std::move(values)), max_rating_(max_rating) {
  if (!(max_rating_ > 0.0) || !std::isfinite(max_rating_)) {
    throw Error(ErrorCode::kInvalidRating,
                "max rating must be a positive finite number");
  }
  if (values_.empty()) {
    throw Error(ErrorCode::kInvalidRating, "rating vector must be non-empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidRating,
                  "rating " + std::to_string(i) + " is not finite");
    }
    if (bounds == Bounds::kEnforce && (v < 0.0 || v > max_rating_)) {
      throw Error(ErrorCode::kInvalidRating,
                  "rating " + std::to_string(i) + " = " + std::to_string(v) +
                      " outside [0, " + std::to_string(max_rating_) + "]");
    }
  }
}

bool RatingVector::within_scale() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [&](double v) {
    return v >= 0.0 && v <= max_rating_;
  });
}

std::vector<std::size_t> RatingVector::cap_violations() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > max_rating_) out.push_back(i);
  }
  return out;
}

RatingVector RatingVector::clamped() const {
  std::vector<double> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(),
                 [&](double x) { return std::clamp(x, 0.0, max_rating_); });
  return RatingVector(std::move(v), max_rating_);
}

ProfitVector::ProfitVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::kNonPositiveProfit,
                "profit vector must be non-empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw Error(ErrorCode::kNonPositiveProfit,
                  "profit " + std::to_string(i) + " must be positive");
    }
  }
}

double ProfitVector::max_profit() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double squared_norm(std::span<const double> a) { return dot(a, a); }

double sum(std::span<const double> a) {
  return std::accumulate(a.begin(), a.end(), 0.0);
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch,
                "lengths " + std::to_string(a) + " and " + std::to_string(b) +
                    " differ");
  }
}

}  // namespace profitrec
