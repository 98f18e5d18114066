#pragma once

// Core domain types for the Δ-separated sparsity projection problem.
//
// Conventions used throughout the library:
//  * weight vectors are 0-based std::vector<double> (x[0] holds x_1)
//  * supports carry 1-based indices, strictly increasing
//  * a set is p-spike Δ-separated when every run of Δ consecutive positions
//    holds at most p of its members (p = 1 is plain pairwise distance ≥ Δ)

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sepsparse {

using Weights = std::vector<double>;
using Signal = std::vector<double>;

/// Raised when a parameter combination admits no valid answer
/// (e.g. an oracle call on a too-large instance, a tail projection with p > 1).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sorted set of 1-based indices.
class Support {
 public:
  Support() = default;
  Support(std::initializer_list<std::size_t> indices);
  explicit Support(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  /// Appends an index larger than every current member.
  void push_back(std::size_t index);

  friend bool operator==(const Support&, const Support&) = default;

 private:
  std::vector<std::size_t> indices_;
};

struct Instance {
  Weights x;
  std::size_t k = 1;
  std::size_t delta = 1;
  std::size_t spikes = 1;

  std::size_t n() const { return x.size(); }
  /// Throws std::invalid_argument when a field violates the model.
  void validate() const;
};

/// True iff |I| ≤ k and every window of `delta` consecutive positions
/// contains at most `spikes` members. Throws std::out_of_range for indices
/// outside [1, n].
bool is_feasible(const Support& support, std::size_t n, std::size_t k, std::size_t delta,
                 std::size_t spikes = 1);

/// Σ_{i∈I} x_i, summed in increasing index order.
double objective(std::span<const double> x, const Support& support);

/// Complement mass x([n] ∖ I).
double complement_mass(std::span<const double> x, const Support& support);

Weights squared_weights(std::span<const double> v);

/// Keeps v_i for i in the support, zero elsewhere.
Signal restrict_to(std::span<const double> v, const Support& support);

struct OracleResult {
  Support support;
  double value = 0.0;
};

inline constexpr std::size_t kBruteForceMaxN = 25;

/// Exhaustive search over subsets of the nonzero positions. Returns the
/// lexicographically smallest maximizer. Refuses instances with n > 25.
OracleResult brute_force_solve(const Instance& inst);

}  // namespace sepsparse
