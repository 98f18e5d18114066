#include "sepsparse/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sepsparse/rng.hpp"

namespace sepsparse {

InstanceKind parse_instance_kind(const std::string& name) {
  if (name == "uniform") return InstanceKind::kUniform;
  if (name == "poisson") return InstanceKind::kPoisson;
  throw std::invalid_argument("unknown instance kind '" + name + "' (expected uniform|poisson)");
}

std::string to_string(InstanceKind kind) { return kind == InstanceKind::kUniform ? "uniform" : "poisson"; }

Weights gen_uniform(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Rng rng(seed, Stream::kUniform);
  Weights x(n);
  for (double& v : x) v = rng.uniform01();
  return x;
}

PoissonInstance gen_poisson(std::size_t n, double expected_gap, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(expected_gap >= 1.0)) throw std::invalid_argument("expected_gap must be >= 1");
  Rng gaps(seed, Stream::kPoissonGaps);
  Rng values(seed, Stream::kPoissonValues);
  std::exponential_distribution<double> arrival(1.0 / expected_gap);

  PoissonInstance out;
  out.x.assign(n, 0.0);
  std::size_t position = 0;
  while (true) {
    const double gap = std::max(1.0, std::round(arrival(gaps)));
    if (gap > static_cast<double>(n - position)) break;
    position += static_cast<std::size_t>(gap);
    out.x[position - 1] = values.uniform01();
    out.spikes.push_back(position);
  }
  return out;
}

Weights generate(const GenSpec& spec) {
  return spec.kind == InstanceKind::kUniform ? gen_uniform(spec.n, spec.seed)
                                             : gen_poisson(spec.n, spec.expected_gap, spec.seed).x;
}

}  // namespace sepsparse
