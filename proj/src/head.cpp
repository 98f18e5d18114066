#include "sepsparse/head.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace sepsparse {

std::size_t lambda_for_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be > 0");
  const double inv = 1.0 / epsilon;
  auto lambda = static_cast<std::size_t>(std::ceil(inv));
  // 1/ε can land a hair above an integer (e.g. 1/0.01); snap it back.
  if (lambda > 1 && std::abs(inv - static_cast<double>(lambda - 1)) < 1e-9) --lambda;
  return std::max<std::size_t>(lambda, 1);
}

WindowFamily::WindowFamily(std::size_t n, std::size_t delta, std::size_t lambda)
    : n_(n), delta_(delta), lambda_(lambda), period_((lambda + 1) * delta) {
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");
  if (lambda < 1) throw std::invalid_argument("lambda must be >= 1");
}

IndexSet make_window(const WindowFamily& windows, std::size_t nu) {
  if (nu > windows.lambda())
    throw std::out_of_range("window index " + std::to_string(nu) + " exceeds lambda=" +
                            std::to_string(windows.lambda()));
  return [windows, nu](std::size_t i) { return windows.contains(nu, i); };
}

WindowChoice coverage_best_window(std::span<const double> z, const WindowFamily& windows) {
  // Each position misses exactly one family: z(S_ν) = z([n]) − z(dropped_ν).
  std::vector<double> dropped(windows.lambda() + 1, 0.0);
  double total = 0.0;
  for (std::size_t i = 1; i <= z.size(); ++i) {
    total += z[i - 1];
    dropped[((i - 1) % windows.period()) / windows.delta()] += z[i - 1];
  }
  WindowChoice best{0, -1.0};
  for (std::size_t nu = 0; nu <= windows.lambda(); ++nu) {
    const double mass = total - dropped[nu];
    if (mass > best.mass) best = {nu, mass};
  }
  return best;
}

BlockDecomposition block_decompose(const IndexSet& in_set, std::span<const double> x, std::size_t delta,
                                   std::size_t spikes) {
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");
  BlockDecomposition out;
  std::optional<Block> open;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    if (x[i - 1] == 0.0 || !in_set(i)) continue;
    if (open && i - open->last < delta) {
      open->last = i;
    } else {
      if (open) out.blocks.push_back(*open);
      open = Block{i, i, 0};
    }
  }
  if (open) out.blocks.push_back(*open);
  for (auto& block : out.blocks) block.budget = spikes * ((block.length() + delta - 1) / delta);
  return out;
}

SliceResult slice_solve(const IndexSet& in_set, std::span<const double> x, std::size_t k, std::size_t delta,
                        std::size_t spikes, const ExactSolver& exact) {
  const ExactSolver& solver = exact ? exact : dp_exact_solver(spikes);

  SliceResult result;
  result.decomposition = block_decompose(in_set, x, delta, spikes);
  const auto& blocks = result.decomposition.blocks;

  std::vector<std::unique_ptr<ExactTable>> tables;
  tables.reserve(blocks.size());
  std::vector<MarginalGain> pool;
  std::vector<double> local;
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    const Block& block = blocks[t];
    local.assign(block.length(), 0.0);
    for (std::size_t i = block.first; i <= block.last; ++i) {
      if (in_set(i)) local[i - block.first] = x[i - 1];
    }
    // No block can contribute more than k members.
    const std::size_t budget = std::min(block.budget, k);
    tables.push_back(solver(local, budget, delta));
    const auto& values = tables.back()->values();
    if (values.size() < budget + 1) throw std::logic_error("exact solver returned too few budgets");
    auto& gains = result.gains.emplace_back();
    for (std::size_t level = 1; level <= budget; ++level) {
      gains.push_back(values[level] - values[level - 1]);
      pool.push_back({t, level, gains.back()});
    }
  }

  auto larger = [](const MarginalGain& a, const MarginalGain& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    if (a.block != b.block) return a.block < b.block;
    return a.level < b.level;
  };
  if (pool.size() > k) {
    std::nth_element(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), pool.end(), larger);
    pool.resize(k);
  }

  result.picked.assign(blocks.size(), 0);
  for (const auto& g : pool) {
    if (g.gain > 0.0) ++result.picked[g.block];
  }

  std::vector<std::size_t> members;
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    if (result.picked[t] == 0) continue;
    for (std::size_t local_index : tables[t]->solution(result.picked[t])) {
      members.push_back(blocks[t].first + local_index - 1);
    }
  }
  result.support = Support(std::move(members));
  result.value = objective(x, result.support);
  return result;
}

namespace detail {

HeadResult best_slice(std::span<const double> x, std::size_t k, std::size_t delta, std::size_t spikes,
                      const WindowFamily& windows, const std::function<bool(std::size_t, std::size_t)>& member,
                      const ExactSolver& exact) {
  const ExactSolver& solver = exact ? exact : dp_exact_solver(spikes);
  HeadResult best;
  best.lambda = windows.lambda();
  bool have_best = false;
  bool solved_full = false;
  for (std::size_t nu = 0; nu <= windows.lambda(); ++nu) {
    if (windows.covers_everything(nu)) {
      // Every later family is the whole ground set too; one solve covers them.
      if (solved_full) continue;
      solved_full = true;
    }
    auto slice = slice_solve([&](std::size_t i) { return member(nu, i); }, x, k, delta, spikes, solver);
    if (!have_best || slice.value > best.value) {
      best.support = std::move(slice.support);
      best.value = slice.value;
      best.best_nu = nu;
      have_best = true;
    }
  }
  return best;
}

}  // namespace detail

HeadResult head_project_lambda(std::span<const double> x, std::size_t k, std::size_t delta, std::size_t spikes,
                               std::size_t lambda, const ExactSolver& exact) {
  const WindowFamily windows(x.size(), delta, lambda);
  return detail::best_slice(
      x, k, delta, spikes, windows, [&](std::size_t nu, std::size_t i) { return windows.contains(nu, i); }, exact);
}

HeadResult head_project(std::span<const double> x, std::size_t k, std::size_t delta, std::size_t spikes,
                        double epsilon, const ExactSolver& exact) {
  return head_project_lambda(x, k, delta, spikes, lambda_for_epsilon(epsilon), exact);
}

}  // namespace sepsparse
