#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sepsparse/exact_dp.hpp"

using namespace sepsparse;

TEST_CASE("dp_solve examples") {
  auto r = dp_solve(Weights{1, 1, 1}, 2, 2);
  CHECK(r.values == std::vector<double>{0, 1, 2});
  CHECK(r.solutions[2] == Support{1, 3});
  CHECK(r.solutions[1] == Support{1});

  r = dp_solve(Weights{0, 0, 0, 0}, 3, 1);
  CHECK(r.values == std::vector<double>{0, 0, 0, 0});
  CHECK(r.solutions[3].empty());  // ties prefer skipping

  r = dp_solve(Weights{3, 2, 3, 2}, 2, 3);
  CHECK(r.values == std::vector<double>{0, 3, 5});
  CHECK(r.solutions[2] == Support{1, 4});
}

TEST_CASE("dp_solve with k beyond what fits") {
  const auto r = dp_solve(Weights{1, 2, 3}, 5, 3);
  CHECK(r.values.size() == 6);
  for (std::size_t l = 1; l <= 5; ++l) CHECK(r.values[l] == 3.0);
  CHECK(r.solutions[5] == Support{3});
}

TEST_CASE("dp_solve_unrestricted examples") {
  auto r = dp_solve_unrestricted(Weights{1, 1, 1}, 2);
  CHECK(r.value == 2.0);
  CHECK(r.support == Support{1, 3});
  r = dp_solve_unrestricted(Weights{7}, 5);
  CHECK(r.value == 7.0);
  CHECK(r.support == Support{1});
  r = dp_solve_unrestricted(Weights{1, 2, 3, 4}, 1);
  CHECK(r.value == 10.0);
  CHECK(r.support == Support{1, 2, 3, 4});
}

TEST_CASE("dp_solve_2spike examples") {
  auto r = dp_solve_2spike(Weights{2, 3, 4}, 3, 2);
  CHECK(r.values == std::vector<double>{0, 4, 7, 9});
  CHECK(r.solutions[3] == Support{1, 2, 3});

  // Windows of length Δ = 4 cover all of [4], so at most two indices fit.
  r = dp_solve_2spike(Weights{1, 1, 1, 1}, 3, 4);
  CHECK(r.values == std::vector<double>{0, 1, 2, 2});
  CHECK(r.solutions[2].size() == 2);

  r = dp_solve_2spike(Weights{5}, 1, 3);
  CHECK(r.values == std::vector<double>{0, 5});
  CHECK(r.solutions[1] == Support{1});
}

TEST_CASE("2-spike DP with Δ = 1 takes everything") {
  const auto r = dp_solve_2spike(Weights{1, 2, 3, 4}, 4, 1);
  CHECK(r.values[4] == 10.0);
  CHECK(r.solutions[4] == Support{1, 2, 3, 4});
}

TEST_CASE("exact solver factory") {
  const Weights x{1, 0, 2, 5, 1};
  auto t1 = dp_exact_solver(1)(x, 2, 2);
  CHECK(t1->values()[2] == 6.0);
  CHECK(t1->solution(2) == Support{1, 4});
  auto t2 = dp_exact_solver(2)(x, 3, 3);
  CHECK(t2->values()[3] == brute_force_solve({x, 3, 3, 2}).value);
  CHECK_THROWS_AS(dp_exact_solver(3), InfeasibleError);
  CHECK_THROWS_AS(t1->solution(3), std::out_of_range);
  TwoSpikeDp values_only(x, 2, 2, false);
  CHECK_THROWS_AS(values_only.solution(1), std::logic_error);
  CHECK_THROWS_AS(SeparatedDp(x, 2, 0), std::invalid_argument);
}

TEST_CASE("DpTable1 invariants") {
  Rng rng(21, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 30);
    const std::size_t k = oracle::uniform_int(rng, 1, 8);
    const std::size_t delta = oracle::uniform_int(rng, 1, 6);
    const auto x = oracle::random_weights(rng, n);
    const auto table = dp_full_table(x, k, delta);
    const auto rolled = dp_solve(x, k, delta);
    for (std::size_t l = 0; l <= k; ++l) {
      CHECK(table.at(0, l) == 0.0);
      CHECK(table.at(n, l) == rolled.values[l]);
    }
    for (std::size_t i = 0; i <= n; ++i) CHECK(table.at(i, 0) == 0.0);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t l = 1; l <= k; ++l) {
        CHECK(table.at(i, l) >= table.at(i - 1, l));
        CHECK(table.at(i, l) >= table.at(i, l - 1));
        // A take flag means the take branch was strictly better.
        if (table.took(i, l)) CHECK(table.at(i, l) > table.at(i - 1, l));
      }
  }
}

TEST_CASE("property: DPs match the oracle, reconstruct exactly, and have concave marginals") {
  Rng rng(22, 0);
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 13);
    const std::size_t k = oracle::uniform_int(rng, 1, n);
    const std::size_t delta = oracle::uniform_int(rng, 1, 5);
    const std::size_t p = oracle::uniform_int(rng, 1, 2);
    const auto x = oracle::random_weights(rng, n);
    const auto r = p == 1 ? dp_solve(x, k, delta) : dp_solve_2spike(x, k, delta);
    REQUIRE(r.values.size() == k + 1);
    for (std::size_t l = 1; l <= k; ++l) {
      CHECK(r.values[l] == doctest::Approx(oracle::full_optimum(x, l, delta, p)).epsilon(1e-12));
      CHECK(oracle::window_feasible(r.solutions[l].indices(), n, l, delta, p));
      CHECK(objective(x, r.solutions[l]) == r.values[l]);
      CHECK(r.values[l] >= r.values[l - 1]);
      if (l >= 2) CHECK(r.values[l] - r.values[l - 1] <= r.values[l - 1] - r.values[l - 2] + 1e-9);
    }
  }
}

TEST_CASE("property: unrestricted DP agrees with dp_solve at k = ceil(n/Δ)") {
  Rng rng(23, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 60);
    const std::size_t delta = oracle::uniform_int(rng, 1, 8);
    const auto x = oracle::random_weights(rng, n);
    const std::size_t k = (n + delta - 1) / delta;
    const auto u = dp_solve_unrestricted(x, delta);
    CHECK(u.value == doctest::Approx(dp_solve(x, k, delta).values[k]).epsilon(1e-12));
    CHECK(oracle::pairwise_feasible(u.support.indices(), n, delta));
    CHECK(objective(x, u.support) == doctest::Approx(u.value).epsilon(1e-12));
  }
}

TEST_CASE("property: 2-spike optimum dominates the 1-spike optimum on larger instances") {
  Rng rng(24, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 20, 200);
    const std::size_t k = oracle::uniform_int(rng, 1, 20);
    const std::size_t delta = oracle::uniform_int(rng, 1, 12);
    const auto x = oracle::random_weights(rng, n);
    const auto one = dp_solve(x, k, delta);
    const auto two = dp_solve_2spike(x, k, delta);
    for (std::size_t l = 1; l <= k; ++l) {
      CHECK(two.values[l] >= one.values[l] - 1e-9);
      CHECK(objective(x, two.solutions[l]) == two.values[l]);
      CHECK(is_feasible(two.solutions[l], n, l, delta, 2));
    }
  }
}
