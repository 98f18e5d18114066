#include "sepsparse/exact_dp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sepsparse {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

void require_delta(std::size_t delta) {
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");
}

}  // namespace

// ---------------------------------------------------------------- 1-spike

SeparatedDp::SeparatedDp(std::span<const double> x, std::size_t k, std::size_t delta)
    : n_(x.size()), delta_(delta) {
  require_delta(delta);
  levels_ = std::min(k, ceil_div(n_, delta));
  values_.assign(k + 1, 0.0);
  take_.assign(levels_ * n_, false);

  std::vector<double> prev(n_ + 1, 0.0);  // OPT([i], ℓ−1)
  std::vector<double> cur(n_ + 1, 0.0);   // OPT([i], ℓ)
  for (std::size_t level = 1; level <= levels_; ++level) {
    cur[0] = 0.0;
    const std::size_t row = (level - 1) * n_;
    for (std::size_t i = 1; i <= n_; ++i) {
      const double with = x[i - 1] + (i > delta ? prev[i - delta] : 0.0);
      if (with > cur[i - 1]) {
        cur[i] = with;
        take_[row + i - 1] = true;
      } else {
        cur[i] = cur[i - 1];
      }
    }
    values_[level] = cur[n_];
    std::swap(prev, cur);
  }
  for (std::size_t level = levels_ + 1; level <= k; ++level) values_[level] = values_[levels_];
}

Support SeparatedDp::solution(std::size_t budget) const {
  if (budget >= values_.size()) throw std::out_of_range("budget exceeds tabulated range");
  std::size_t level = std::min(budget, levels_);
  std::vector<std::size_t> picked;
  std::size_t i = n_;
  while (i >= 1 && level >= 1) {
    if (take_[(level - 1) * n_ + i - 1]) {
      picked.push_back(i);
      i = i > delta_ ? i - delta_ : 0;
      --level;
    } else {
      --i;
    }
  }
  std::reverse(picked.begin(), picked.end());
  return Support(std::move(picked));
}

DpTable1 dp_full_table(std::span<const double> x, std::size_t k, std::size_t delta) {
  require_delta(delta);
  DpTable1 table;
  table.n = x.size();
  table.k = k;
  table.values.assign((table.n + 1) * (k + 1), 0.0);
  table.take.assign((table.n + 1) * (k + 1), false);
  const std::size_t stride = k + 1;
  for (std::size_t i = 1; i <= table.n; ++i) {
    for (std::size_t level = 1; level <= k; ++level) {
      const double with = x[i - 1] + (i > delta ? table.values[(i - delta) * stride + level - 1] : 0.0);
      const double without = table.values[(i - 1) * stride + level];
      if (with > without) {
        table.values[i * stride + level] = with;
        table.take[i * stride + level] = true;
      } else {
        table.values[i * stride + level] = without;
      }
    }
  }
  return table;
}

DpResult dp_solve(std::span<const double> x, std::size_t k, std::size_t delta) {
  SeparatedDp dp(x, k, delta);
  DpResult result{dp.values(), {}};
  result.solutions.reserve(k + 1);
  for (std::size_t level = 0; level <= k; ++level) result.solutions.push_back(dp.solution(level));
  return result;
}

OracleResult dp_solve_unrestricted(std::span<const double> x, std::size_t delta) {
  require_delta(delta);
  const std::size_t n = x.size();
  std::vector<double> opt(n + 1, 0.0);
  std::vector<bool> take(n + 1, false);
  for (std::size_t i = 1; i <= n; ++i) {
    const double with = x[i - 1] + (i > delta ? opt[i - delta] : 0.0);
    if (with > opt[i - 1]) {
      opt[i] = with;
      take[i] = true;
    } else {
      opt[i] = opt[i - 1];
    }
  }
  std::vector<std::size_t> picked;
  for (std::size_t i = n; i >= 1;) {
    if (take[i]) {
      picked.push_back(i);
      i = i > delta ? i - delta : 0;
    } else {
      --i;
    }
  }
  std::reverse(picked.begin(), picked.end());
  return {Support(std::move(picked)), opt[n]};
}

// ---------------------------------------------------------------- 2-spike

TwoSpikeDp::TwoSpikeDp(std::span<const double> x, std::size_t k, std::size_t delta, bool with_solutions)
    : n_(x.size()), delta_(delta), width_(std::max<std::size_t>(delta, 2)) {
  require_delta(delta);
  levels_ = std::min({k, 2 * ceil_div(n_, delta), n_});
  values_.assign(k + 1, 0.0);
  if (with_solutions) take_.assign(n_ * width_ * levels_, false);

  // ring[r mod ring_size] holds the row OPT²([r], ·, ·) laid out as i·(levels+1) + ℓ.
  const std::size_t ring_size = width_;
  const std::size_t row_len = width_ * (levels_ + 1);
  std::vector<double> ring(ring_size * row_len, 0.0);
  auto cell = [&](std::size_t r, std::size_t i, std::size_t level) -> double& {
    return ring[(r % ring_size) * row_len + i * (levels_ + 1) + level];
  };

  for (std::size_t r = 1; r <= n_; ++r) {
    const double xr = x[r - 1];
    for (std::size_t i = 1; i < width_; ++i) {
      const std::size_t back_state = delta_ - i;  // 0 only when Δ = 1
      cell(r, i, 0) = 0.0;
      for (std::size_t level = 1; level <= levels_; ++level) {
        const double with = xr + (r > i ? cell(r - i, back_state, level - 1) : 0.0);
        const double without = r > 1 ? cell(r - 1, i - 1, level) : 0.0;
        if (with > without) {
          cell(r, i, level) = with;
          if (with_solutions) take_[flag_index(r, i, level)] = true;
        } else {
          cell(r, i, level) = without;
        }
      }
    }
    for (std::size_t level = 0; level <= levels_; ++level) cell(r, 0, level) = cell(r, 1, level);
  }
  if (n_ > 0) {
    for (std::size_t level = 1; level <= levels_; ++level) values_[level] = cell(n_, 0, level);
  }
  for (std::size_t level = levels_ + 1; level <= k; ++level) values_[level] = values_[levels_];
}

std::size_t TwoSpikeDp::flag_index(std::size_t r, std::size_t i, std::size_t level) const {
  return ((r - 1) * width_ + i) * levels_ + (level - 1);
}

Support TwoSpikeDp::solution(std::size_t budget) const {
  if (budget >= values_.size()) throw std::out_of_range("budget exceeds tabulated range");
  if (take_.empty() && levels_ > 0 && n_ > 0)
    throw std::logic_error("2-spike table was built without solutions");
  std::size_t level = std::min(budget, levels_);
  std::size_t r = n_;
  std::size_t i = 0;
  std::vector<std::size_t> picked;
  while (r >= 1 && level >= 1) {
    const std::size_t state = i == 0 ? 1 : i;
    if (take_[flag_index(r, state, level)]) {
      picked.push_back(r);
      r = r > state ? r - state : 0;
      i = delta_ - state;
      --level;
    } else {
      --r;
      i = state - 1;
    }
  }
  std::reverse(picked.begin(), picked.end());
  return Support(std::move(picked));
}

DpResult dp_solve_2spike(std::span<const double> x, std::size_t k, std::size_t delta) {
  TwoSpikeDp dp(x, k, delta);
  DpResult result{dp.values(), {}};
  result.solutions.reserve(k + 1);
  for (std::size_t level = 0; level <= k; ++level) result.solutions.push_back(dp.solution(level));
  return result;
}

ExactSolver dp_exact_solver(std::size_t spikes) {
  switch (spikes) {
    case 1:
      return [](std::span<const double> x, std::size_t budget, std::size_t delta) -> std::unique_ptr<ExactTable> {
        return std::make_unique<SeparatedDp>(x, budget, delta);
      };
    case 2:
      return [](std::span<const double> x, std::size_t budget, std::size_t delta) -> std::unique_ptr<ExactTable> {
        return std::make_unique<TwoSpikeDp>(x, budget, delta);
      };
    default:
      throw InfeasibleError("no built-in exact solver for p=" + std::to_string(spikes) +
                            " spikes; supply an ExactSolver");
  }
}

}  // namespace sepsparse
