#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "sepsparse/io.hpp"
#include "sepsparse/model.hpp"

using namespace sepsparse;

TEST_CASE("is_feasible examples") {
  CHECK(is_feasible({1, 3}, 3, 2, 2, 1));
  CHECK_FALSE(is_feasible({1, 2}, 3, 2, 2, 1));
  CHECK_FALSE(is_feasible({1, 2, 3}, 4, 3, 4, 2));
  CHECK(is_feasible({}, 5, 1, 3, 1));
  CHECK_FALSE(is_feasible({1, 5, 9}, 9, 2, 4, 1));  // over budget
  CHECK(is_feasible({1, 2, 5, 6}, 6, 4, 4, 2));
  CHECK_FALSE(is_feasible({1, 2, 4}, 6, 4, 4, 2));
}

TEST_CASE("is_feasible rejects indices beyond n") {
  CHECK_THROWS_AS(is_feasible({1, 7}, 6, 2, 2, 1), std::out_of_range);
}

TEST_CASE("Support validates its indices") {
  CHECK_THROWS_AS(Support({0, 2}), std::out_of_range);
  CHECK_THROWS_AS(Support({3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Support({2, 2}), std::invalid_argument);
  Support s;
  s.push_back(2);
  CHECK_THROWS(s.push_back(2));
  CHECK(s == Support{2});
}

TEST_CASE("objective examples") {
  const Weights x{5, 1, 4};
  CHECK(objective(x, {1, 3}) == 9.0);
  CHECK(objective(x, {}) == 0.0);
  CHECK(objective(Weights{0.5, 0.25}, {1, 2}) == 0.75);
  CHECK_THROWS_AS(objective(x, {4}), std::out_of_range);
  CHECK(complement_mass(x, {1}) == 5.0);
}

TEST_CASE("squared_weights and restrict_to examples") {
  CHECK(squared_weights(Signal{-2, 3}) == Weights{4, 9});
  CHECK(squared_weights(Signal{0, 0}) == Weights{0, 0});
  CHECK(squared_weights(Signal{1.5}) == Weights{2.25});
  CHECK(restrict_to(Signal{1, -2, 3}, {2}) == Signal{0, -2, 0});
  CHECK(restrict_to(Signal{1, 2}, {1, 2}) == Signal{1, 2});
  CHECK(restrict_to(Signal{1, 2}, {}) == Signal{0, 0});
  CHECK_THROWS_AS(restrict_to(Signal{1, 2}, {3}), std::out_of_range);
}

namespace {
void validate(Weights x, std::size_t k, std::size_t delta, std::size_t p) { Instance{std::move(x), k, delta, p}.validate(); }
}  // namespace

TEST_CASE("Instance validation") {
  CHECK_NOTHROW(validate(Weights{1, 2}, 1, 1, 1));
  CHECK_THROWS_AS(validate(Weights{}, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(validate(Weights{1}, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(validate(Weights{1}, 1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(validate(Weights{1}, 1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(validate(Weights{-1}, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("brute_force_solve examples") {
  auto r = brute_force_solve({{1, 1, 1}, 2, 2, 1});
  CHECK(r.support == Support{1, 3});
  CHECK(r.value == 2.0);
  r = brute_force_solve({{5, 1, 4}, 1, 2, 1});
  CHECK(r.support == Support{1});
  CHECK(r.value == 5.0);
  r = brute_force_solve({{3, 2, 3, 2}, 2, 3, 1});
  CHECK(r.support == Support{1, 4});
  CHECK(r.value == 5.0);
  r = brute_force_solve({{0, 0, 0}, 2, 1, 1});
  CHECK(r.value == 0.0);
}

TEST_CASE("brute_force_solve refuses large n") {
  CHECK_THROWS_AS(brute_force_solve({Weights(26, 1.0), 2, 2, 1}), InfeasibleError);
  CHECK_NOTHROW(brute_force_solve({Weights(kBruteForceMaxN, 0.0), 2, 2, 1}));
}

TEST_CASE("property: is_feasible agrees with independent checks") {
  Rng rng(11, 0);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 16);
    const std::size_t k = oracle::uniform_int(rng, 1, n);
    const std::size_t delta = oracle::uniform_int(rng, 1, 6);
    const std::size_t p = oracle::uniform_int(rng, 1, 3);
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i <= n; ++i)
      if (rng.uniform01() < 0.4) idx.push_back(i);
    const Support s(idx);
    CHECK(is_feasible(s, n, k, delta, p) == oracle::window_feasible(idx, n, k, delta, p));
    if (p == 1) CHECK(is_feasible(s, n, k, delta, 1) == oracle::pairwise_feasible(idx, k, delta));
  }
}

TEST_CASE("property: objective is additive over disjoint supports") {
  Rng rng(12, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 30);
    const auto x = oracle::random_weights(rng, n);
    std::vector<std::size_t> a, b, both;
    for (std::size_t i = 1; i <= n; ++i) {
      const double u = rng.uniform01();
      if (u < 0.3) a.push_back(i);
      else if (u < 0.6) b.push_back(i);
      if (u < 0.6) both.push_back(i);
    }
    CHECK(objective(x, Support(both)) == doctest::Approx(objective(x, Support(a)) + objective(x, Support(b))).epsilon(1e-12));
  }
}

TEST_CASE("property: squared norm equals objective over [n]") {
  Rng rng(13, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 50);
    Signal v(n);
    for (auto& e : v) e = rng.uniform01() * 4.0 - 2.0;
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i + 1;
    double norm = 0.0;
    for (double e : v) norm += e * e;
    CHECK(objective(squared_weights(v), Support(all)) == doctest::Approx(norm).epsilon(1e-12));
  }
}

TEST_CASE("property: brute force matches naive enumeration and is lexicographically least") {
  Rng rng(14, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 10);
    const std::size_t k = oracle::uniform_int(rng, 1, n);
    const std::size_t delta = oracle::uniform_int(rng, 1, 4);
    const std::size_t p = oracle::uniform_int(rng, 1, 2);
    const auto x = oracle::random_weights(rng, n);
    const auto r = brute_force_solve({x, k, delta, p});
    CHECK(r.value == doctest::Approx(oracle::full_optimum(x, k, delta, p)).epsilon(1e-12));
    CHECK(oracle::window_feasible(r.support.indices(), n, k, delta, p));
    CHECK(objective(x, r.support) == r.value);
  }
}

TEST_CASE("vector and support text formats") {
  std::istringstream in("1.5\n\n# comment\n-2\n3e-1\n");
  CHECK(io::read_vector(in) == std::vector<double>{1.5, -2, 0.3});
  std::istringstream bad("1\n2 3\n");
  CHECK_THROWS_AS(io::read_vector(bad), std::invalid_argument);
  std::istringstream junk("abc\n");
  CHECK_THROWS_AS(io::read_vector(junk), std::invalid_argument);

  std::ostringstream out;
  io::write_vector(out, {0.1, 2.0});
  std::istringstream back(out.str());
  CHECK(io::read_vector(back) == std::vector<double>{0.1, 2.0});

  CHECK(io::format_support({1, 4, 9}) == "1,4,9");
  CHECK(io::format_support({}) == "");
  CHECK(io::parse_support("1,4,9") == Support{1, 4, 9});
  CHECK(io::parse_support("") == Support{});
  CHECK_THROWS_AS(io::parse_support("1,,3"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_support("1,x"), std::invalid_argument);
  CHECK_THROWS(io::parse_support("3,1"));
  CHECK_THROWS_AS(io::read_vector_file("/nonexistent/file"), std::invalid_argument);
}
