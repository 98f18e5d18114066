#pragma once

// Benchmark sweeps: running-time comparisons against the exact DP and
// head/tail quality ratios, averaged over seeded repeats.
//
// CSV schema (one row per sweep point × instance kind × algorithm):
//   preset,instance,algo,p,n,k,delta,lambda,repeats,mean_runtime_ms,
//   mean_head_pct,mean_tail_pct,min_head_pct,max_tail_pct,tail_samples
// Ratios are percentages against the exact optimum computed in the same
// run. Tail columns hold "NA" when undefined (2-spike rows, or every repeat
// had an optimal complement of 0).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sepsparse/instance_gen.hpp"

namespace sepsparse::bench {

enum class Algo { kDp, kDp2, kHead, kTail };

std::string to_string(Algo algo);
Algo parse_algo(const std::string& name);

struct AlgoSpec {
  Algo algo = Algo::kDp;
  std::size_t lambda = 0;  // head/tail only
  std::string label() const;
};

struct SweepPoint {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t delta = 0;
};

enum class SweepKind { kRuntime, kQuality };

struct SweepConfig {
  std::string name = "custom";
  SweepKind kind = SweepKind::kQuality;
  std::size_t spikes = 1;
  std::vector<InstanceKind> instances{InstanceKind::kUniform};
  double gap_factor = 1.0;  // Poisson expected gap = max(1, gap_factor·Δ)
  std::vector<SweepPoint> points;
  std::vector<AlgoSpec> algos;
  std::size_t repeats = 100;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::string preset;
  std::string instance;
  std::string algo;
  std::size_t spikes = 1;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t delta = 0;
  std::size_t lambda = 0;  // 0 for exact rows
  std::size_t repeats = 0;
  double mean_runtime_ms = 0.0;
  std::optional<double> mean_head_pct;
  std::optional<double> mean_tail_pct;
  std::optional<double> min_head_pct;
  std::optional<double> max_tail_pct;
  std::size_t tail_samples = 0;
};

/// Δ = k = ⌊½√n⌋ (at least 1).
SweepPoint sqrt_rule(std::size_t n);
/// Δ = 40, k = ⌊log₂ n⌋.
SweepPoint log_rule(std::size_t n);

/// Named presets: fig2-left, fig2-right, fig3, fig4, fig5, fig5-right, fig6.
/// Throws std::invalid_argument for unknown names.
SweepConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Parses a JSON sweep description. Accepted keys: name, kind
/// ("runtime"|"quality"), spikes, instances, gap_factor, repeats, seed,
/// algorithms ([{"algo": "head", "lambda": 2}, ...]) and one of
///   "points": [{"n":..,"k":..,"delta":..}, ...]
///   "n": [..] with "rule": "sqrt" | "log2"
///   "n": <int>, "delta": <int>, "k": [..]
/// Missing algorithms default per kind and spike count.
/// Throws std::invalid_argument on malformed input.
SweepConfig parse_sweep_config(const std::string& json_text);

std::vector<BenchRow> run_sweep(const SweepConfig& config);
/// run_sweep restricted to runtime sweeps.
std::vector<BenchRow> bench_runtime(const SweepConfig& config);
/// run_sweep restricted to quality sweeps.
std::vector<BenchRow> bench_quality(const SweepConfig& config);

/// Proven per-repeat bounds: head rows keep ≥ 100·λ/(λ+1) percent, tail
/// rows leave ≤ 100·(1 + 2/λ) percent. Returns a description per violation.
std::vector<std::string> guarantee_violations(const std::vector<BenchRow>& rows, double tolerance = 1e-9);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_json(std::ostream& out, const std::vector<BenchRow>& rows);
/// Two-column "x y" files, one per (instance, algo, metric); x is n for
/// runtime sweeps and k for quality sweeps. Returns the written paths.
std::vector<std::string> write_tikz_dat(const std::string& stem, const SweepConfig& config,
                                        const std::vector<BenchRow>& rows);

}  // namespace sepsparse::bench
