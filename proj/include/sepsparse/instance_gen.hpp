#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "sepsparse/model.hpp"

namespace sepsparse {

enum class InstanceKind { kUniform, kPoisson };

InstanceKind parse_instance_kind(const std::string& name);
std::string to_string(InstanceKind kind);

struct GenSpec {
  InstanceKind kind = InstanceKind::kUniform;
  std::size_t n = 1;
  double expected_gap = 1.0;  // Poisson only
  std::uint64_t seed = 0;
};

/// n i.i.d. Uniform[0,1) weights.
Weights gen_uniform(std::size_t n, std::uint64_t seed);

struct PoissonInstance {
  Weights x;
  Support spikes;
};

/// Spike train with inter-arrival gaps max(1, round(Exp(mean = expected_gap)));
/// spike weights Uniform[0,1), zero elsewhere.
PoissonInstance gen_poisson(std::size_t n, double expected_gap, std::uint64_t seed);

Weights generate(const GenSpec& spec);

}  // namespace sepsparse
