#include "sepsparse/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "sepsparse/head.hpp"
#include "sepsparse/rng.hpp"
#include "sepsparse/tail.hpp"

namespace sepsparse {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

std::vector<double> difference(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::size_t max_feasible_size(std::size_t n, std::size_t delta, std::size_t spikes) {
  return std::min(spikes, delta) * (n / delta) + std::min(spikes, n % delta);
}

// Uniform k-subset of 1..n with consecutive gaps ≥ Δ: pick k of the
// n − (k−1)(Δ−1) compressed slots and spread them back out.
std::vector<std::size_t> uniform_separated(std::size_t n, std::size_t k, std::size_t delta, Rng& rng) {
  if (k == 0) return {};
  const std::size_t spread = (k - 1) * (delta - 1);
  if (spread >= n || n - spread < k) throw InfeasibleError("no Δ-separated support of this size fits");
  const std::size_t slots = n - spread;
  std::vector<std::size_t> picks;
  picks.reserve(k);
  // Selection sampling keeps the draw order fixed.
  std::size_t needed = k;
  for (std::size_t s = 1; s <= slots && needed > 0; ++s) {
    const std::size_t left = slots - s + 1;
    if (rng.uniform01() * static_cast<double>(left) < static_cast<double>(needed)) {
      picks.push_back(s);
      --needed;
    }
  }
  for (std::size_t j = 0; j < picks.size(); ++j) picks[j] += j * (delta - 1);
  return picks;
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size does not match its shape");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
  return DenseMatrix(n, n, std::move(data));
}

std::vector<double> DenseMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw std::invalid_argument("apply: vector length does not match matrix columns");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = data_.data() + r * cols_;
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += row[c] * x[c];
    out[r] = s;
  }
  return out;
}

std::vector<double> DenseMatrix::apply_transpose(std::span<const double> y) const {
  if (y.size() != rows_) throw std::invalid_argument("apply_transpose: vector length does not match matrix rows");
  std::vector<double> out(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = data_.data() + r * cols_;
    const double yr = y[r];
    for (std::size_t c = 0; c < cols_; ++c) out[c] += row[c] * yr;
  }
  return out;
}

SensingModel gen_sensing(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("sensing matrix needs m, n >= 1");
  Rng rng(seed, Stream::kSensing);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> data(m * n);
  for (double& v : data) v = normal(rng);
  return {DenseMatrix(m, n, std::move(data)), seed, scale};
}

SensingModel sensing_from_matrix(DenseMatrix a) { return {std::move(a), 0, 0.0}; }

std::size_t default_measurements(std::size_t k, std::size_t n) {
  const double m = std::ceil(6.0 * static_cast<double>(k) * std::log(static_cast<double>(n)));
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(m, 1.0)), 1, n);
}

Measurement measure(const SensingModel& model, std::span<const double> x, double noise_sigma, std::uint64_t seed) {
  if (x.size() != model.n()) throw std::invalid_argument("measure: signal length does not match sensing matrix");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise sigma must be >= 0");
  Measurement out;
  out.x_true.assign(x.begin(), x.end());
  out.y = model.a.apply(x);
  out.noise.assign(model.m(), 0.0);
  if (noise_sigma > 0.0) {
    Rng rng(seed, Stream::kNoise);
    std::normal_distribution<double> normal(0.0, noise_sigma);
    for (std::size_t i = 0; i < out.noise.size(); ++i) {
      out.noise[i] = normal(rng);
      out.y[i] += out.noise[i];
    }
  }
  return out;
}

Signal gen_separated_signal(std::size_t n, std::size_t k, std::size_t delta, std::uint64_t seed) {
  Rng support_rng(seed, Stream::kSignalSupport);
  Rng value_rng(seed, Stream::kSignalValues);
  std::normal_distribution<double> normal(0.0, 1.0);
  Signal x(n, 0.0);
  for (std::size_t i : uniform_separated(n, k, delta, support_rng)) x[i - 1] = normal(value_rng);
  return x;
}

Support random_feasible_support(std::size_t n, std::size_t k, std::size_t delta, std::size_t spikes,
                                std::uint64_t seed) {
  if (delta < 1 || spikes < 1) throw std::invalid_argument("delta and spikes must be >= 1");
  if (k > max_feasible_size(n, delta, spikes))
    throw InfeasibleError("no " + std::to_string(spikes) + "-spike " + std::to_string(delta) +
                          "-separated support of size " + std::to_string(k) + " exists for n=" + std::to_string(n));
  Rng rng(seed, Stream::kRipSupport);
  if (spikes == 1) return Support(uniform_separated(n, k, delta, rng));

  constexpr int kRejectionTries = 1000;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{1});
  for (int attempt = 0; attempt < kRejectionTries; ++attempt) {
    std::vector<std::size_t> pick;
    std::sample(all.begin(), all.end(), std::back_inserter(pick), static_cast<std::ptrdiff_t>(k), rng);
    Support candidate(std::move(pick));
    if (is_feasible(candidate, n, k, delta, spikes)) return candidate;
  }
  // Dense regime: any subset of the pattern {i : (i−1) mod Δ < p} is
  // feasible, and the pattern has the maximum feasible size.
  std::vector<std::size_t> pattern;
  for (std::size_t i = 1; i <= n; ++i)
    if ((i - 1) % delta < spikes) pattern.push_back(i);
  std::vector<std::size_t> pick;
  std::sample(pattern.begin(), pattern.end(), std::back_inserter(pick), static_cast<std::ptrdiff_t>(k), rng);
  return Support(std::move(pick));
}

double empirical_rip(const SensingModel& model, std::size_t k, std::size_t delta, std::size_t spikes,
                     std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const std::size_t n = model.n();
  if (k > max_feasible_size(n, delta, spikes))
    throw InfeasibleError("no feasible support of size " + std::to_string(k) + " exists");
  Rng values(seed, Stream::kRipValues);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  std::vector<double> ax(model.m());
  for (std::size_t s = 0; s < samples; ++s) {
    const Support support = random_feasible_support(n, k, delta, spikes, derive_seed(seed, s));
    std::vector<double> coeff(support.size());
    double norm = 0.0;
    for (double& c : coeff) {
      c = normal(values);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    std::fill(ax.begin(), ax.end(), 0.0);
    std::size_t j = 0;
    for (std::size_t idx : support) {
      const double c = coeff[j++] / norm;
      for (std::size_t r = 0; r < model.m(); ++r) ax[r] += model.a(r, idx - 1) * c;
    }
    double energy = 0.0;
    for (double v : ax) energy += v * v;
    worst = std::max(worst, std::abs(energy - 1.0));
  }
  return worst;
}

RecoveryResult am_iht(std::span<const double> y, const SensingModel& model, const AmIhtOptions& options,
                      std::optional<std::span<const double>> x_true) {
  const std::size_t n = model.n();
  if (y.size() != model.m()) throw std::invalid_argument("am_iht: measurement length does not match sensing matrix");
  if (x_true && x_true->size() != n) throw std::invalid_argument("am_iht: reference signal has the wrong length");
  const std::size_t head_budget = options.head_budget == 0 ? 2 * options.k : options.head_budget;

  RecoveryResult result;
  result.estimate.assign(n, 0.0);
  auto record = [&](const Support& support, std::span<const double> estimate) {
    const auto residual_vec = difference(y, model.a.apply(estimate));
    TraceStep step;
    step.support = support;
    step.proxy = norm2(residual_vec);
    step.residual = x_true ? norm2(difference(*x_true, estimate)) : std::numeric_limits<double>::quiet_NaN();
    result.trace.steps.push_back(std::move(step));
    return residual_vec;
  };

  auto residual = record(Support{}, result.estimate);
  for (std::size_t it = 0; it < options.iterations; ++it) {
    const auto gradient = model.a.apply_transpose(residual);
    const auto head = head_project(squared_weights(gradient), head_budget, options.delta, options.head_spikes,
                                   options.eps_head);
    if (options.check_contracts && !is_feasible(head.support, n, head_budget, options.delta, options.head_spikes))
      throw std::logic_error("head projection returned an infeasible support");

    std::vector<double> proxy = result.estimate;
    for (std::size_t i : head.support) proxy[i - 1] += gradient[i - 1];

    const auto tail = tail_project(squared_weights(proxy), options.k, options.delta, options.eps_tail);
    if (options.check_contracts && !is_feasible(tail.support, n, options.k, options.delta, 1))
      throw std::logic_error("tail projection returned an infeasible support");

    result.estimate = restrict_to(proxy, tail.support);
    const double previous_proxy = result.trace.steps.back().proxy;
    residual = record(tail.support, result.estimate);
    if (options.early_stop && std::abs(result.trace.steps.back().proxy - previous_proxy) < 1e-12) break;
  }
  return result;
}

double ConvergenceBound::asymptotic_noise() const {
  return rho < 1.0 ? noise / (1.0 - rho) : std::numeric_limits<double>::infinity();
}

ConvergenceBound am_iht_bound(double tail_guarantee, double head_guarantee, double rip_delta) {
  const double c_t = tail_guarantee;
  const double c_h = head_guarantee;
  const double slack = std::sqrt(1.0 - c_h * c_h);
  ConvergenceBound bound;
  bound.rho = (1.0 + c_t) * ((slack * (1.0 + rip_delta) + rip_delta) / c_h + 2.0 * rip_delta);
  bound.noise = (1.0 + c_t) * std::sqrt(1.0 + rip_delta) * ((slack + 1.0) / c_h + 4.0);
  return bound;
}

}  // namespace sepsparse
