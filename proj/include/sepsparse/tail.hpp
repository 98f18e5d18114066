#pragma once

// Tail approximations for the 1-spike model.

#include <cstddef>
#include <span>
#include <vector>

#include "sepsparse/head.hpp"
#include "sepsparse/model.hpp"

namespace sepsparse {

/// t_i = Σ_{|j−i|<Δ, j≠i} x_j, computed with a rolling window in O(n).
std::vector<double> tail_vector(std::span<const double> x, std::size_t delta);

struct TailProfile {
  std::vector<double> tail;
  std::vector<std::size_t> strong;  // 1-based, x_i > t_i
  std::vector<std::size_t> weak;
  std::vector<double> reduced;      // weak entries within distance < Δ of a strong index zeroed
  std::vector<bool> is_strong;      // 0-based mask
};

TailProfile strong_and_reduced(std::span<const double> x, std::size_t delta);

/// Best feasible subset of the k largest entries (ties to the lower index).
/// Tail guarantee 2.
Support topk_tail_project(std::span<const double> x, std::size_t k, std::size_t delta);

struct TailResult {
  Support support;
  double value = 0.0;          // under x
  double reduced_value = 0.0;  // under the reduced vector
  std::size_t lambda = 0;
  std::size_t strong_count = 0;
};

/// (1+ε)-tail approximation: the window loop at precision ε/2 on the reduced
/// vector, with every window augmented by the strong indices.
TailResult tail_project(std::span<const double> x, std::size_t k, std::size_t delta, double epsilon);

/// Same with the window count λ given directly.
TailResult tail_project_lambda(std::span<const double> x, std::size_t k, std::size_t delta, std::size_t lambda);

/// α / (1 − (1−α)/(1−μα)), the weak-index tail coefficient; 1+ε at α = 1−ε/2, μ = 2/3.
double lemma_am_bound(double alpha, double mu);

}  // namespace sepsparse
