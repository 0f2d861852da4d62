#include <cmath>
#include <vector>

#include "doctest.h"
#include "profitrec/error.hpp"
#include "profitrec/oracle.hpp"
#include "profitrec/similarity.hpp"
#include "profitrec/solver_linear.hpp"
#include "profitrec/solver_multinomial.hpp"

using namespace profitrec;

namespace {

const RatingVector kCustomer({4, 2}, 5.0);
const ProfitVector kProfit({1, 3});

}  // namespace

TEST_CASE("grid oracle at tau = 1 is the customer vector") {
  for (auto model : {PurchaseModel::kLinear, PurchaseModel::kMultinomial}) {
    const auto g = grid_max_on_sphere(kCustomer, kProfit, 1.0, model, {.resolution = 1000});
    CHECK(g.point == RatingVector({4, 2}, 5, Bounds::kRelaxed));
    CHECK(g.profit == doctest::Approx(expected_profit(model, kProfit, kCustomer)));
  }
}

TEST_CASE("grid oracle reproduces the closed form on the reference circle") {
  const auto g = grid_max_on_sphere(kCustomer, kProfit, 0.9, PurchaseModel::kLinear);
  CHECK(g.point[0] == doctest::Approx(5.12937933366322).epsilon(1e-3));
  CHECK(g.point[1] == doctest::Approx(4.277026889878547).epsilon(1e-3));
  CHECK(g.profit == doctest::Approx(3.592092000658785).epsilon(1e-9));
}

TEST_CASE("grid oracle bounds the multinomial search") {
  const auto g = grid_max_on_sphere(kCustomer, kProfit, 0.9, PurchaseModel::kMultinomial);
  const auto solved = solve_multinomial(kCustomer, kProfit, 0.9, {.epsilon = 1e-6});
  CHECK(g.profit == doctest::Approx(2.1300012745333055).epsilon(1e-9));
  CHECK(g.profit >= solved.expected_profit - 1e-6 - 1e-3 * g.profit);
  CHECK(solved.expected_profit >= g.profit - 1e-6 - 1e-3 * g.profit);
}

TEST_CASE("grid oracle respects the rating cap on request") {
  const auto g = grid_max_on_sphere(kCustomer, kProfit, 0.9, PurchaseModel::kLinear,
                                    {.resolution = 20'000, .cap_at_max_rating = true});
  CHECK(g.point.within_scale());
  CHECK(g.profit < solve_linear(kCustomer, kProfit, 0.9).expected_profit);
}

TEST_CASE("grid oracle handles one and three dimensions") {
  const RatingVector one({3}, 5);
  const auto g1 = grid_max_on_sphere(one, ProfitVector({2}), 0.8, PurchaseModel::kLinear,
                                     {.resolution = 1000});
  CHECK(g1.point[0] == doctest::Approx(solve_linear(one, ProfitVector({2}), 0.8).recommendation[0]));

  const RatingVector three({1, 2, 3}, 5);
  const ProfitVector p3({3, 1, 2});
  const auto g3 = grid_max_on_sphere(three, p3, 0.9, PurchaseModel::kLinear,
                                     {.resolution = 200'000});
  const auto closed = solve_linear(three, p3, 0.9);
  CHECK(std::abs(g3.profit - closed.expected_profit) / closed.expected_profit < 1e-3);
}

TEST_CASE("grid oracle errors") {
  const RatingVector four({1, 2, 3, 4}, 5);
  CHECK_THROWS_WITH_AS(
      grid_max_on_sphere(four, ProfitVector({1, 1, 1, 1}), 0.9, PurchaseModel::kLinear),
      doctest::Contains("DimensionTooLarge"), Error);
  CHECK_THROWS_AS(grid_max_on_sphere(kCustomer, kProfit, 0.9, PurchaseModel::kLinear,
                                     {.resolution = 10}),
                  Error);
}

TEST_CASE("finite differences") {
  const std::vector<double> r{1.5, 2.5};
  const auto g = finite_diff_gradient(
      [](std::span<const double> x) { return dot(kProfit.values(), x) / 5.0; }, r, 1e-5);
  CHECK(g[0] == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(0.6).epsilon(1e-6));

  const auto at_c = finite_diff_gradient(
      [](std::span<const double> x) { return dice(kCustomer.values(), x); },
      kCustomer.values(), 1e-5);
  CHECK(std::abs(at_c[0]) < 1e-8);
  CHECK(std::abs(at_c[1]) < 1e-8);

  // gradient of sum p r / sum r at r = (1, 1): (p_i S - p.r) / S^2 = (-0.5, 0.5)
  const std::vector<double> even{1.0, 1.0};
  const auto gm = finite_diff_gradient(
      [](std::span<const double> x) { return expected_profit_multinomial(kProfit.values(), x); },
      even, 1e-5);
  CHECK(gm[0] == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(gm[1] == doctest::Approx(0.5).epsilon(1e-8));

  CHECK_THROWS_AS(finite_diff_gradient([](std::span<const double>) { return 0.0; }, r, 0.0),
                  Error);
}

TEST_CASE("simulate_profit known cases") {
  const ProfitVector p({1.1, 2.3, 0.7});
  const auto certain = simulate_profit(p, RatingVector({5, 5, 5}, 5), PurchaseModel::kLinear,
                                       10'000, 1);
  CHECK(certain.mean_profit == 1.1 + 2.3 + 0.7);
  CHECK(certain.std_error == 0.0);
  CHECK(certain.generator == "mt19937_64");

  const auto uniform = simulate_profit(kProfit, RatingVector({2, 2}, 5),
                                       PurchaseModel::kMultinomial, 1'000'000, 7);
  CHECK(std::abs(uniform.mean_profit - 2.0) <= 3.0 * uniform.std_error);

  const auto lin = simulate_profit(kProfit, kCustomer, PurchaseModel::kLinear, 1'000'000, 9);
  CHECK(std::abs(lin.mean_profit - 2.0) <= 3.0 * lin.std_error);
}

TEST_CASE("simulate_profit is reproducible and seed-sensitive") {
  const auto a = simulate_profit(kProfit, kCustomer, PurchaseModel::kMultinomial, 5'000, 42);
  const auto b = simulate_profit(kProfit, kCustomer, PurchaseModel::kMultinomial, 5'000, 42);
  const auto c = simulate_profit(kProfit, kCustomer, PurchaseModel::kMultinomial, 5'000, 43);
  CHECK(a.mean_profit == b.mean_profit);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean_profit != c.mean_profit);
}

TEST_CASE("simulate_profit consistency across seeds") {
  const RatingVector r({3.5, 1.0, 4.2}, 5);
  const ProfitVector p({2.0, 7.0, 1.5});
  for (auto model : {PurchaseModel::kLinear, PurchaseModel::kMultinomial}) {
    const double analytic = expected_profit(model, p, r);
    int outside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto est = simulate_profit(p, r, model, 20'000, 1000 + seed);
      if (std::abs(est.mean_profit - analytic) >
          3.0 * est.std_error + 1e-12 * std::abs(analytic)) {
        ++outside;
      }
    }
    CHECK(outside <= 1);
  }
}

TEST_CASE("simulate_profit errors") {
  const auto raw = solve_linear(kCustomer, kProfit, 0.9).recommendation;
  CHECK_THROWS_WITH_AS(simulate_profit(kProfit, raw, PurchaseModel::kLinear, 10, 1),
                       doctest::Contains("InvalidProbability"), Error);
  CHECK_THROWS_AS(simulate_profit(kProfit, RatingVector({0, 0}, 5),
                                  PurchaseModel::kMultinomial, 10, 1),
                  Error);
  CHECK_THROWS_AS(simulate_profit(kProfit, kCustomer, PurchaseModel::kLinear, 0, 1), Error);
}

TEST_CASE("model names") {
  CHECK(parse_model("linear") == PurchaseModel::kLinear);
  CHECK(parse_model("multinomial") == PurchaseModel::kMultinomial);
  CHECK_FALSE(parse_model("poisson"));
}
