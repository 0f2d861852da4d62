#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace profitrec {

// Whether a RatingVector enforces 0 <= v <= m. Customer input is always
// checked; solver outputs may legitimately exceed m before clamping.
enum class Bounds { kEnforce, kRelaxed };

/// Ratings for n items on the scale [0, m]. Holds either a customer's true
/// ratings or a recommendation presented to them.
class RatingVector {
 public:
  RatingVector(std::vector<double> values, double max_rating,
               Bounds bounds = Bounds::kEnforce);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  double max_rating() const noexcept { return max_rating_; }

  bool within_scale() const noexcept;
  // Indices with entries above max_rating.
  std::vector<std::size_t> cap_violations() const;
  // Componentwise projection onto [0, m].
  RatingVector clamped() const;

  friend bool operator==(const RatingVector&, const RatingVector&) = default;

 private:
  std::vector<double> values_;
  double max_rating_;
};

/// Per-item profit; every entry strictly positive.
class ProfitVector {
 public:
  explicit ProfitVector(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  // Largest single-item profit; the upper end of the multinomial search.
  double max_profit() const noexcept;

 private:
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);
double sum(std::span<const double> a);

void require_same_length(std::size_t a, std::size_t b);

}  // namespace profitrec
