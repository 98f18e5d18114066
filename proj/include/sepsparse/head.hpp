#pragma once

// (1−ε)-head approximation.
//
// The ground set is cut by λ+1 periodic window families S_0..S_λ (period
// b = (λ+1)Δ, family ν drops positions νΔ+1..νΔ+Δ of every period). Each
// S_ν splits into blocks of at most λΔ consecutive positions that sit ≥ Δ
// apart, so SPRS(S_ν, k) decomposes into small exact solves whose marginal
// gains are merged by a k-largest selection.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sepsparse/exact_dp.hpp"
#include "sepsparse/model.hpp"

namespace sepsparse {

/// λ = ⌈1/ε⌉ (ε ≥ 1 gives λ = 1). Throws std::invalid_argument for ε ≤ 0.
std::size_t lambda_for_epsilon(double epsilon);

class WindowFamily {
 public:
  WindowFamily(std::size_t n, std::size_t delta, std::size_t lambda);

  std::size_t n() const { return n_; }
  std::size_t delta() const { return delta_; }
  std::size_t lambda() const { return lambda_; }
  std::size_t period() const { return period_; }

  /// O(1) membership of the 1-based index i in S_ν.
  bool contains(std::size_t nu, std::size_t i) const {
    const std::size_t offset = (i - 1) % period_;
    return offset < nu * delta_ || offset >= (nu + 1) * delta_;
  }

  /// S_ν ∩ [n] equals [n] once the first dropped run starts past n.
  bool covers_everything(std::size_t nu) const { return nu * delta_ >= n_; }

 private:
  std::size_t n_;
  std::size_t delta_;
  std::size_t lambda_;
  std::size_t period_;
};

/// Membership predicate over 1-based indices.
using IndexSet = std::function<bool(std::size_t)>;

/// The view i ↦ (i ∈ S_ν). Throws std::out_of_range when ν > λ.
IndexSet make_window(const WindowFamily& windows, std::size_t nu);

struct WindowChoice {
  std::size_t nu = 0;
  double mass = 0.0;
};

/// ν maximizing z(S_ν) (smallest ν on ties).
WindowChoice coverage_best_window(std::span<const double> z, const WindowFamily& windows);

struct Block {
  std::size_t first = 0;  // 1-based, inclusive
  std::size_t last = 0;
  std::size_t budget = 0;
  std::size_t length() const { return last - first + 1; }
};

struct BlockDecomposition {
  std::vector<Block> blocks;
};

/// Chains of nonzero-weight members of S whose consecutive elements are < Δ
/// apart, each widened to its spanning interval. Budgets are p·⌈|B|/Δ⌉.
BlockDecomposition block_decompose(const IndexSet& in_set, std::span<const double> x, std::size_t delta,
                                   std::size_t spikes = 1);

struct MarginalGain {
  std::size_t block = 0;
  std::size_t level = 0;  // 1-based
  double gain = 0.0;
};

struct SliceResult {
  Support support;
  double value = 0.0;
  BlockDecomposition decomposition;
  std::vector<std::vector<double>> gains;  // gains[t][ℓ−1] = OPT(B_t, ℓ) − OPT(B_t, ℓ−1)
  std::vector<std::size_t> picked;         // j_t per block
};

/// Exact SPRS^p(S, k) via per-block solves and k-largest gain selection.
/// `exact` defaults to the DP for p ∈ {1, 2}.
SliceResult slice_solve(const IndexSet& in_set, std::span<const double> x, std::size_t k, std::size_t delta,
                        std::size_t spikes = 1, const ExactSolver& exact = {});

struct HeadResult {
  Support support;
  double value = 0.0;
  std::size_t lambda = 0;
  std::size_t best_nu = 0;
};

/// Best slice solution over ν = 0..λ; a (1−ε)-head approximation.
HeadResult head_project(std::span<const double> x, std::size_t k, std::size_t delta, std::size_t spikes,
                        double epsilon, const ExactSolver& exact = {});

/// Same loop with an explicit λ.
HeadResult head_project_lambda(std::span<const double> x, std::size_t k, std::size_t delta, std::size_t spikes,
                               std::size_t lambda, const ExactSolver& exact = {});

namespace detail {

/// Runs the window loop over a caller-supplied slice membership (used by the
/// tail algorithm, which augments each window with the strong indices).
HeadResult best_slice(std::span<const double> x, std::size_t k, std::size_t delta, std::size_t spikes,
                      const WindowFamily& windows, const std::function<bool(std::size_t nu, std::size_t i)>& member,
                      const ExactSolver& exact);

}  // namespace detail

}  // namespace sepsparse
