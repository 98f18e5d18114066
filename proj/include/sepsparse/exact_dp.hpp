#pragma once

// Exact dynamic programs for SPRS on an index range.
//
//   1-spike:  OPT([i], ℓ) = max(x_i + OPT([i−Δ], ℓ−1), OPT([i−1], ℓ))
//   2-spike:  OPT²([r], i, ℓ) = max(x_r + OPT²([r−i], Δ−i, ℓ−1), OPT²([r−1], i−1, ℓ))
//             where state i bounds the solution to one member in (r−i, r].
//
// Both recurrences break ties toward skipping the current index, so zero
// weights are never selected and reconstruction is deterministic.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sepsparse/model.hpp"

namespace sepsparse {

/// Optimal values OPT(ℓ) for every budget 0..max_budget() together with a way
/// to rebuild a matching solution. Solutions are 1-based within the vector the
/// table was built on.
class ExactTable {
 public:
  virtual ~ExactTable() = default;
  /// values()[ℓ] = OPT(ℓ); values()[0] == 0.
  virtual const std::vector<double>& values() const = 0;
  virtual Support solution(std::size_t budget) const = 0;
  std::size_t max_budget() const { return values().size() - 1; }
};

/// Pluggable exact solver: builds a table for budgets 0..max_budget on `x`.
using ExactSolver =
    std::function<std::unique_ptr<ExactTable>(std::span<const double> x, std::size_t max_budget, std::size_t delta)>;

/// DP-backed solver for p = 1 or p = 2. Throws InfeasibleError for p ≥ 3,
/// where callers must supply their own ExactSolver.
ExactSolver dp_exact_solver(std::size_t spikes);

/// 1-spike DP. Values are computed budget-by-budget with two rolling columns;
/// reconstruction uses one take-flag bit per (ℓ, i).
class SeparatedDp final : public ExactTable {
 public:
  SeparatedDp(std::span<const double> x, std::size_t k, std::size_t delta);
  const std::vector<double>& values() const override { return values_; }
  Support solution(std::size_t budget) const override;

 private:
  std::size_t n_;
  std::size_t delta_;
  std::size_t levels_;  // budgets actually tabulated; larger ones repeat the last value
  std::vector<double> values_;
  std::vector<bool> take_;  // take_[(ℓ−1)·n + (i−1)]
};

/// 2-spike DP over states (r, i, ℓ). Keeps a ring of Δ rows; the take flags
/// need n·Δ·k bits and are skipped when `with_solutions` is false.
class TwoSpikeDp final : public ExactTable {
 public:
  TwoSpikeDp(std::span<const double> x, std::size_t k, std::size_t delta, bool with_solutions = true);
  const std::vector<double>& values() const override { return values_; }
  /// Throws std::logic_error when built without solutions.
  Support solution(std::size_t budget) const override;

 private:
  std::size_t flag_index(std::size_t r, std::size_t i, std::size_t level) const;

  std::size_t n_;
  std::size_t delta_;
  std::size_t width_;   // number of i-states, max(Δ, 2)
  std::size_t levels_;
  std::vector<double> values_;
  std::vector<bool> take_;
};

/// Full (n+1)×(k+1) table of OPT([i], ℓ) with take flags.
struct DpTable1 {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> values;  // values[i·(k+1) + ℓ]
  std::vector<bool> take;      // same layout; row/column 0 are false

  double at(std::size_t i, std::size_t level) const { return values[i * (k + 1) + level]; }
  bool took(std::size_t i, std::size_t level) const { return take[i * (k + 1) + level]; }
};

DpTable1 dp_full_table(std::span<const double> x, std::size_t k, std::size_t delta);

struct DpResult {
  std::vector<double> values;      // index ℓ = 0..k
  std::vector<Support> solutions;  // index ℓ = 0..k
};

/// All OPT([n], ℓ) and solutions for ℓ ≤ k under the 1-spike model.
DpResult dp_solve(std::span<const double> x, std::size_t k, std::size_t delta);

/// Same for the 2-spike model.
DpResult dp_solve_2spike(std::span<const double> x, std::size_t k, std::size_t delta);

/// Budget-free 1-spike DP, linear in n.
OracleResult dp_solve_unrestricted(std::span<const double> x, std::size_t delta);

}  // namespace sepsparse
