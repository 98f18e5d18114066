#include "sepsparse/tail.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sepsparse/exact_dp.hpp"

namespace sepsparse {

std::vector<double> tail_vector(std::span<const double> x, std::size_t delta) {
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");
  const std::size_t n = x.size();
  std::vector<double> t(n, 0.0);
  if (n == 0) return t;
  auto at = [&](std::ptrdiff_t i) -> double {  // 1-based, zero outside [n]
    return i >= 1 && i <= static_cast<std::ptrdiff_t>(n) ? x[static_cast<std::size_t>(i - 1)] : 0.0;
  };
  const auto d = static_cast<std::ptrdiff_t>(delta);

  double window = 0.0;  // Σ_{j=1−Δ+1}^{1+Δ−1} x_j
  for (std::ptrdiff_t j = 1; j <= d && j <= static_cast<std::ptrdiff_t>(n); ++j) window += at(j);
  t[0] = window - at(1);
  for (std::ptrdiff_t i = 2; i <= static_cast<std::ptrdiff_t>(n); ++i) {
    // t_i = t_{i−1} + x_{i−1} − x_i + x_{i+Δ−1} − x_{i−Δ}
    const double next = t[static_cast<std::size_t>(i - 2)] + at(i - 1) - at(i) + at(i + d - 1) - at(i - d);
    // Non-negative by definition; clamp rounding drift so a zero neighbourhood
    // never reads as negative.
    t[static_cast<std::size_t>(i - 1)] = std::max(next, 0.0);
  }
  return t;
}

TailProfile strong_and_reduced(std::span<const double> x, std::size_t delta) {
  const std::size_t n = x.size();
  TailProfile profile;
  profile.tail = tail_vector(x, delta);
  profile.is_strong.assign(n, false);

  // The rolling update can drift by a few ulps of the window mass. Where the
  // comparison is that close, redo the window as a plain ascending sum of
  // non-negatives, which never rounds below any of its terms; this keeps
  // strong indices at least Δ apart.
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, v);
  const double tie_band = 1e-9 * peak * static_cast<double>(std::min(2 * delta - 1, std::max<std::size_t>(n, 1)));
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(x[i] - profile.tail[i]) > tie_band) continue;
    const std::size_t lo = i + 1 >= delta ? i + 1 - delta : 0;
    const std::size_t hi = std::min(n - 1, i + delta - 1);
    double s = 0.0;
    for (std::size_t j = lo; j <= hi; ++j)
      if (j != i) s += x[j];
    profile.tail[i] = s;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > profile.tail[i]) {
      profile.is_strong[i] = true;
      profile.strong.push_back(i + 1);
    } else {
      profile.weak.push_back(i + 1);
    }
  }

  // Distance from each position to the nearest strong index, via two sweeps.
  profile.reduced.assign(x.begin(), x.end());
  std::size_t last = 0;  // 1-based, 0 = none seen
  std::vector<bool> near(n, false);
  for (std::size_t i = 1; i <= n; ++i) {
    if (profile.is_strong[i - 1]) last = i;
    if (last != 0 && i - last < delta) near[i - 1] = true;
  }
  last = 0;
  for (std::size_t i = n; i >= 1; --i) {
    if (profile.is_strong[i - 1]) last = i;
    if (last != 0 && last - i < delta) near[i - 1] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (near[i] && !profile.is_strong[i]) profile.reduced[i] = 0.0;
  }
  return profile;
}

Support topk_tail_project(std::span<const double> x, std::size_t k, std::size_t delta) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (k < n) {
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] != x[b] ? x[a] > x[b] : a < b; });
    order.resize(k);
  }
  std::vector<double> largest(n, 0.0);
  for (std::size_t i : order) largest[i] = x[i];
  // |L| ≤ k, so the budget-free DP on x_L already respects the budget.
  return dp_solve_unrestricted(largest, delta).support;
}

TailResult tail_project_lambda(std::span<const double> x, std::size_t k, std::size_t delta, std::size_t lambda) {
  const TailProfile profile = strong_and_reduced(x, delta);
  const WindowFamily windows(x.size(), delta, lambda);
  auto member = [&](std::size_t nu, std::size_t i) { return profile.is_strong[i - 1] || windows.contains(nu, i); };
  HeadResult best = detail::best_slice(profile.reduced, k, delta, 1, windows, member, dp_exact_solver(1));

  TailResult result;
  result.reduced_value = best.value;
  result.value = objective(x, best.support);
  result.support = std::move(best.support);
  result.lambda = lambda;
  result.strong_count = profile.strong.size();
  return result;
}

TailResult tail_project(std::span<const double> x, std::size_t k, std::size_t delta, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  return tail_project_lambda(x, k, delta, lambda_for_epsilon(epsilon / 2.0));
}

double lemma_am_bound(double alpha, double mu) {
  const double denom = 1.0 - mu * alpha;
  if (denom <= 0.0) throw std::domain_error("1 - mu*alpha must be positive");
  const double outer = 1.0 - (1.0 - alpha) / denom;
  if (outer <= 0.0) throw std::domain_error("coefficient denominator must be positive");
  return alpha / outer;
}

}  // namespace sepsparse
