#pragma once

// Compressed-sensing recovery of k-sparse Δ-separated signals with
// approximate-model iterative hard thresholding:
//
//   x⁰ = 0,   x^{j+1} = T(x^j + H(Aᵀ(y − A x^j)))
//
// H is the 2-spike head approximation, T the 1-spike tail approximation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sepsparse/model.hpp"

namespace sepsparse {

/// Row-major dense matrix. Products use a fixed summation order (increasing
/// column index per row), so results are bit-reproducible.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> data() const { return data_; }

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_transpose(std::span<const double> y) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SensingModel {
  DenseMatrix a;
  std::uint64_t seed = 0;
  double entry_scale = 0.0;  // standard deviation of the entries

  std::size_t m() const { return a.rows(); }
  std::size_t n() const { return a.cols(); }
};

/// i.i.d. N(0, 1/m) entries drawn in row-major order.
SensingModel gen_sensing(std::size_t m, std::size_t n, std::uint64_t seed);

/// Wraps a given matrix (used for diagnostics such as A = I).
SensingModel sensing_from_matrix(DenseMatrix a);

/// ⌈6·k·ln n⌉ clamped to [1, n].
std::size_t default_measurements(std::size_t k, std::size_t n);

struct Measurement {
  std::vector<double> y;
  std::vector<double> noise;
  Signal x_true;
};

/// y = A·x + e with e ~ N(0, σ²) i.i.d. Throws std::invalid_argument on a
/// dimension mismatch or σ < 0.
Measurement measure(const SensingModel& model, std::span<const double> x, double noise_sigma, std::uint64_t seed);

/// Random k-sparse Δ-separated signal: support uniform over all feasible
/// supports of size k, standard Gaussian coefficients.
Signal gen_separated_signal(std::size_t n, std::size_t k, std::size_t delta, std::uint64_t seed);

struct AmIhtOptions {
  std::size_t k = 1;
  std::size_t delta = 1;
  std::size_t iterations = 10;
  double eps_head = 0.01;
  double eps_tail = 0.01;
  std::size_t head_budget = 0;  // 0 → 2k
  std::size_t head_spikes = 2;
  bool early_stop = true;       // stop once the proxy norm changes by < 1e-12
  bool check_contracts = true;  // assert H/T feasibility every iteration
};

struct TraceStep {
  Support support;
  double residual = 0.0;  // ‖x_true − x^j‖₂, NaN without a reference signal
  double proxy = 0.0;     // ‖y − A x^j‖₂
};

struct RecoveryTrace {
  std::vector<TraceStep> steps;  // steps[0] is x⁰ = 0
  std::size_t iterations() const { return steps.empty() ? 0 : steps.size() - 1; }
};

struct RecoveryResult {
  Signal estimate;
  RecoveryTrace trace;
};

RecoveryResult am_iht(std::span<const double> y, const SensingModel& model, const AmIhtOptions& options,
                      std::optional<std::span<const double>> x_true = std::nullopt);

/// max over `samples` random unit k-sparse p-spike Δ-separated vectors of
/// |‖Ax‖² − 1|. Throws InfeasibleError when no feasible support of size k exists.
double empirical_rip(const SensingModel& model, std::size_t k, std::size_t delta, std::size_t spikes,
                     std::size_t samples, std::uint64_t seed);

/// Random feasible support of exactly k indices (1-based). Uniform for p = 1;
/// for p ≥ 2 uniform by rejection, falling back to a subset of the densest
/// periodic pattern when rejection keeps failing.
Support random_feasible_support(std::size_t n, std::size_t k, std::size_t delta, std::size_t spikes,
                                std::uint64_t seed);

/// Per-iteration contraction and noise coefficients of the AM-IHT error bound
/// ‖r^{i+1}‖ ≤ rho·‖r^i‖ + noise·‖e‖ for tail guarantee c_T, head guarantee
/// c_H and RIP constant δ.
struct ConvergenceBound {
  double rho = 0.0;
  double noise = 0.0;
  /// Coefficient of ‖e‖ after unrolling: noise / (1 − rho); infinite if rho ≥ 1.
  double asymptotic_noise() const;
};

ConvergenceBound am_iht_bound(double tail_guarantee, double head_guarantee, double rip_delta);

}  // namespace sepsparse
