#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "sepsparse/recovery.hpp"

using namespace sepsparse;

namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

double relative_error(const Signal& truth, const Signal& estimate) {
  std::vector<double> d(truth.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = truth[i] - estimate[i];
  return norm(d) / norm(truth);
}

}  // namespace

TEST_CASE("DenseMatrix products") {
  const DenseMatrix a(2, 3, {1, 2, 3, 4, 5, 6});
  CHECK(a.apply(std::vector<double>{1, 0, -1}) == std::vector<double>{-2, -2});
  CHECK(a.apply_transpose(std::vector<double>{1, 1}) == std::vector<double>{5, 7, 9});
  CHECK_THROWS_AS(a.apply(std::vector<double>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(a.apply_transpose(std::vector<double>{1}), std::invalid_argument);
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
  CHECK(DenseMatrix::identity(3).apply(std::vector<double>{1, 2, 3}) == std::vector<double>{1, 2, 3});
}

TEST_CASE("gen_sensing") {
  const auto a = gen_sensing(2, 3, 7);
  const auto b = gen_sensing(2, 3, 7);
  CHECK(a.m() == 2);
  CHECK(a.n() == 3);
  CHECK(std::equal(a.a.data().begin(), a.a.data().end(), b.a.data().begin()));
  CHECK(a.entry_scale == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(gen_sensing(0, 3, 1), std::invalid_argument);

  const auto big = gen_sensing(60, 80, 3);
  double mean = 0.0;
  for (double v : big.a.data()) mean += v;
  mean /= 4800.0;
  CHECK(std::abs(mean) <= 5.0 / std::sqrt(4800.0));

  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto col = gen_sensing(1000, 1, seed);
    const double e = std::pow(norm(col.a.apply(std::vector<double>{1.0})), 2);
    good += (e >= 0.8 && e <= 1.2);
  }
  CHECK(good >= 95);
}

TEST_CASE("default_measurements") {
  CHECK(default_measurements(5, 200) == 159);
  CHECK(default_measurements(50, 100) == 100);
  CHECK(default_measurements(1, 1) == 1);
}

TEST_CASE("measure") {
  const auto model = gen_sensing(40, 30, 2);
  auto m = measure(model, std::vector<double>(30, 0.0), 0.0, 1);
  CHECK(m.y == std::vector<double>(40, 0.0));
  std::vector<double> x(30, 0.0);
  x[3] = 1.5;
  x[17] = -0.5;
  m = measure(model, x, 0.0, 1);
  CHECK(m.y == model.a.apply(x));
  CHECK(m.noise == std::vector<double>(40, 0.0));
  CHECK(m.x_true == x);
  CHECK_THROWS_AS(measure(model, std::vector<double>(29, 0.0), 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(measure(model, x, -1.0, 1), std::invalid_argument);

  const auto wide = gen_sensing(100, 5, 3);
  int typical = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto noisy = measure(wide, std::vector<double>(5, 0.0), 0.1, seed);
    const double e = norm(noisy.noise);
    typical += (e >= 0.6 && e <= 1.4);
    for (std::size_t i = 0; i < 100; ++i) CHECK(noisy.y[i] == noisy.noise[i]);
  }
  CHECK(typical >= 95);
}

TEST_CASE("gen_separated_signal") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto x = gen_separated_signal(60, 4, 12, seed);
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0.0) support.push_back(i + 1);
    CHECK(support.size() == 4);
    CHECK(oracle::pairwise_feasible(support, 4, 12));
  }
  CHECK(gen_separated_signal(60, 4, 12, 5) == gen_separated_signal(60, 4, 12, 5));
  CHECK_THROWS_AS(gen_separated_signal(10, 3, 5, 1), InfeasibleError);
}

TEST_CASE("random_feasible_support") {
  Rng rng(51, 0);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 40);
    const std::size_t delta = oracle::uniform_int(rng, 1, 8);
    const std::size_t p = oracle::uniform_int(rng, 1, 3);
    const std::size_t cap = std::min(p, delta) * (n / delta) + std::min(p, n % delta);
    const std::size_t k = oracle::uniform_int(rng, 1, std::max<std::size_t>(cap, 1));
    if (k > cap) continue;
    const auto s = random_feasible_support(n, k, delta, p, trial);
    CHECK(s.size() == k);
    CHECK(oracle::window_feasible(s.indices(), n, k, delta, p));
  }
  CHECK_THROWS_AS(random_feasible_support(10, 3, 5, 1, 1), InfeasibleError);
  CHECK_THROWS_AS(random_feasible_support(10, 5, 5, 2, 1), InfeasibleError);
  CHECK(random_feasible_support(10, 4, 5, 2, 1).size() == 4);
  CHECK(random_feasible_support(6, 6, 1, 2, 1).size() == 6);
  CHECK_THROWS_AS(random_feasible_support(6, 7, 1, 2, 1), InfeasibleError);
}

TEST_CASE("empirical_rip") {
  const auto identity = sensing_from_matrix(DenseMatrix::identity(30));
  CHECK(empirical_rip(identity, 3, 5, 1, 50, 1) <= 1e-12);
  CHECK(empirical_rip(identity, 4, 5, 2, 50, 1) <= 1e-12);

  const auto model = gen_sensing(50, 50, 8);
  double worst_column = 0.0;
  for (std::size_t c = 0; c < 50; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < 50; ++r) s += model.a(r, c) * model.a(r, c);
    worst_column = std::max(worst_column, std::abs(s - 1.0));
  }
  CHECK(empirical_rip(model, 1, 1, 1, 5000, 2) == doctest::Approx(worst_column).epsilon(1e-12));

  CHECK_THROWS_AS(empirical_rip(model, 30, 5, 1, 10, 1), InfeasibleError);
  CHECK_THROWS_AS(empirical_rip(model, 1, 1, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("empirical_rip shrinks as m grows") {
  std::vector<double> medians;
  for (std::size_t m : {100, 400, 1600}) {
    std::vector<double> d;
    for (std::uint64_t seed = 0; seed < 20; ++seed) d.push_back(empirical_rip(gen_sensing(m, 200, seed), 5, 10, 1, 40, seed));
    std::nth_element(d.begin(), d.begin() + 10, d.end());
    medians.push_back(d[10]);
  }
  CHECK(medians[0] > medians[1]);
  CHECK(medians[1] > medians[2]);
}

TEST_CASE("am_iht with zero measurements stays at zero") {
  const auto model = gen_sensing(30, 40, 1);
  AmIhtOptions opt;
  opt.k = 2;
  opt.delta = 5;
  opt.iterations = 6;
  opt.early_stop = false;
  const auto r = am_iht(std::vector<double>(30, 0.0), model, opt);
  CHECK(r.estimate == std::vector<double>(40, 0.0));
  CHECK(r.trace.steps.size() == 7);
  CHECK(r.trace.iterations() == 6);
  for (const auto& s : r.trace.steps) {
    CHECK(s.proxy == 0.0);
    CHECK(std::isnan(s.residual));
  }
  CHECK_THROWS_AS(am_iht(std::vector<double>(29, 0.0), model, opt), std::invalid_argument);
}

TEST_CASE("am_iht is deterministic") {
  const auto x = gen_separated_signal(100, 3, 10, 4);
  const auto model = gen_sensing(60, 100, 4);
  const auto meas = measure(model, x, 0.01, 4);
  AmIhtOptions opt;
  opt.k = 3;
  opt.delta = 10;
  opt.iterations = 8;
  const auto a = am_iht(meas.y, model, opt, std::span<const double>(x));
  const auto b = am_iht(meas.y, model, opt, std::span<const double>(x));
  CHECK(a.estimate == b.estimate);
  REQUIRE(a.trace.steps.size() == b.trace.steps.size());
  for (std::size_t i = 0; i < a.trace.steps.size(); ++i) {
    CHECK(a.trace.steps[i].residual == b.trace.steps[i].residual);
    CHECK(a.trace.steps[i].proxy == b.trace.steps[i].proxy);
    CHECK(a.trace.steps[i].support == b.trace.steps[i].support);
  }
}

TEST_CASE("am_iht recovers 1-sparse signals") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x = gen_separated_signal(20, 1, 5, seed);
    const auto model = gen_sensing(50, 20, seed);
    const auto meas = measure(model, x, 0.0, seed);
    AmIhtOptions opt;
    opt.k = 1;
    opt.delta = 5;
    opt.iterations = 20;
    const auto r = am_iht(meas.y, model, opt, std::span<const double>(x));
    ok += relative_error(x, r.estimate) <= 1e-3;
    for (const auto& s : r.trace.steps) CHECK(is_feasible(s.support, 20, 1, 5, 1));
  }
  CHECK(ok >= 90);
}

TEST_CASE("am_iht residuals are non-increasing when well conditioned") {
  int monotone = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto x = gen_separated_signal(100, 3, 10, seed);
    const auto model = gen_sensing(100, 100, seed);
    const auto meas = measure(model, x, 0.0, seed);
    AmIhtOptions opt;
    opt.k = 3;
    opt.delta = 10;
    opt.iterations = 15;
    const auto r = am_iht(meas.y, model, opt, std::span<const double>(x));
    bool ok = true;
    for (std::size_t i = 2; i < r.trace.steps.size(); ++i)
      ok &= r.trace.steps[i].residual <= r.trace.steps[i - 1].residual * (1.0 + 1e-9) + 1e-12;
    monotone += ok;
  }
  CHECK(monotone >= 45);
}

TEST_CASE("convergence bound constants at eps = delta = 0.01") {
  const auto b = am_iht_bound(1.01, 0.99, 0.01);
  CHECK(b.rho < 0.35);
  CHECK(b.rho > 0.34);
  CHECK(b.asymptotic_noise() < 16.5);
  CHECK(b.asymptotic_noise() > 15.5);
  CHECK(std::isinf(am_iht_bound(2.0, 0.5, 0.5).asymptotic_noise()));
}
