#include "sepsparse/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace sepsparse {

Support::Support(std::initializer_list<std::size_t> indices) : Support(std::vector<std::size_t>(indices)) {}

Support::Support(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] == 0) throw std::out_of_range("support indices are 1-based");
    if (i > 0 && indices_[i] <= indices_[i - 1])
      throw std::invalid_argument("support indices must be strictly increasing");
  }
}

void Support::push_back(std::size_t index) {
  if (index == 0) throw std::out_of_range("support indices are 1-based");
  if (!indices_.empty() && index <= indices_.back())
    throw std::invalid_argument("support indices must be strictly increasing");
  indices_.push_back(index);
}

void Instance::validate() const {
  if (x.empty()) throw std::invalid_argument("instance must have n >= 1");
  if (k < 1 || delta < 1 || spikes < 1) throw std::invalid_argument("k, delta and spikes must be >= 1");
  for (double v : x) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("weights must be finite and non-negative");
  }
}

namespace {

void check_range(const Support& support, std::size_t n) {
  if (!support.empty() && support.indices().back() > n)
    throw std::out_of_range("support index " + std::to_string(support.indices().back()) + " exceeds n=" +
                            std::to_string(n));
}

}  // namespace

bool is_feasible(const Support& support, std::size_t n, std::size_t k, std::size_t delta, std::size_t spikes) {
  check_range(support, n);
  if (support.size() > k) return false;
  const auto& idx = support.indices();
  // Sorted input: the window condition fails iff some member and the member
  // `spikes` positions later are fewer than `delta` apart.
  for (std::size_t a = 0; a + spikes < idx.size(); ++a) {
    if (idx[a + spikes] - idx[a] < delta) return false;
  }
  return true;
}

double objective(std::span<const double> x, const Support& support) {
  check_range(support, x.size());
  double sum = 0.0;
  for (std::size_t i : support) sum += x[i - 1];
  return sum;
}

double complement_mass(std::span<const double> x, const Support& support) {
  check_range(support, x.size());
  double sum = 0.0;
  auto it = support.begin();
  for (std::size_t i = 1; i <= x.size(); ++i) {
    if (it != support.end() && *it == i) {
      ++it;
      continue;
    }
    sum += x[i - 1];
  }
  return sum;
}

Weights squared_weights(std::span<const double> v) {
  Weights out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double a) { return a * a; });
  return out;
}

Signal restrict_to(std::span<const double> v, const Support& support) {
  check_range(support, v.size());
  Signal out(v.size(), 0.0);
  for (std::size_t i : support) out[i - 1] = v[i - 1];
  return out;
}

OracleResult brute_force_solve(const Instance& inst) {
  inst.validate();
  const std::size_t n = inst.n();
  if (n > kBruteForceMaxN)
    throw InfeasibleError("brute force oracle refuses n=" + std::to_string(n) + " > " +
                          std::to_string(kBruteForceMaxN));

  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.x[i] != 0.0) nonzero.push_back(i + 1);
  }

  OracleResult best;
  const std::uint64_t subsets = std::uint64_t{1} << nonzero.size();
  std::vector<std::size_t> members;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > inst.k) continue;
    members.clear();
    for (std::size_t b = 0; b < nonzero.size(); ++b) {
      if (mask >> b & 1U) members.push_back(nonzero[b]);
    }
    Support candidate(members);
    if (!is_feasible(candidate, n, inst.k, inst.delta, inst.spikes)) continue;
    const double value = objective(inst.x, candidate);
    if (value > best.value ||
        (value == best.value && std::lexicographical_compare(candidate.begin(), candidate.end(),
                                                             best.support.begin(), best.support.end()))) {
      best.value = value;
      best.support = std::move(candidate);
    }
  }

  if (!is_feasible(best.support, n, inst.k, inst.delta, inst.spikes))
    throw std::logic_error("brute force produced an infeasible support");
  return best;
}

}  // namespace sepsparse
