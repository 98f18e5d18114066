// sepsparse: projection, recovery, instance generation and benchmarks for the
// Δ-separated sparsity model.
//
// Exit codes: 0 success, 2 configuration error, 3 infeasible parameters.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepsparse/bench.hpp"
#include "sepsparse/exact_dp.hpp"
#include "sepsparse/head.hpp"
#include "sepsparse/instance_gen.hpp"
#include "sepsparse/io.hpp"
#include "sepsparse/model.hpp"
#include "sepsparse/recovery.hpp"
#include "sepsparse/tail.hpp"

namespace {

using json = nlohmann::json;
using namespace sepsparse;

constexpr int kConfigError = 2;
constexpr int kInfeasible = 3;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
};

/// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json support_json(const Support& s) { return json(s.indices()); }

// ------------------------------------------------------------------ project

struct ProjectArgs {
  std::string in;
  std::size_t k = 1;
  std::size_t delta = 1;
  std::optional<std::size_t> spikes;
  std::string algo = "head";
  double epsilon = 0.5;
};

int run_project(const ProjectArgs& args, const Globals& g) {
  const Weights x = io::read_vector_file(args.in);
  Instance inst{x, args.k, args.delta, args.spikes.value_or(args.algo == "dp2" ? 2 : 1)};
  inst.validate();
  const std::size_t p = inst.spikes;

  auto require_spikes = [&](bool ok, const std::string& what) {
    if (!ok) throw InfeasibleError(args.algo + " " + what + " (got p=" + std::to_string(p) + ")");
  };

  Support support;
  const auto start = std::chrono::steady_clock::now();
  if (args.algo == "dp") {
    require_spikes(p == 1, "requires p=1");
    support = SeparatedDp(x, inst.k, inst.delta).solution(inst.k);
  } else if (args.algo == "dp2") {
    require_spikes(p == 2, "requires p=2");
    support = TwoSpikeDp(x, inst.k, inst.delta).solution(inst.k);
  } else if (args.algo == "head") {
    require_spikes(p <= 2, "has no built-in exact block solver for p>2");
    support = head_project(x, inst.k, inst.delta, p, args.epsilon).support;
  } else if (args.algo == "tail") {
    require_spikes(p == 1, "is defined for p=1 only");
    support = tail_project(x, inst.k, inst.delta, args.epsilon).support;
  } else if (args.algo == "topk") {
    require_spikes(p == 1, "is defined for p=1 only");
    support = topk_tail_project(x, inst.k, inst.delta);
  } else if (args.algo == "oracle") {
    support = brute_force_solve(inst).support;
  } else {
    throw std::invalid_argument("unknown algorithm '" + args.algo + "'");
  }
  const double runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const double value = objective(x, support);

  // Optimum for ratio reporting when an exact solver is cheap enough.
  std::optional<double> opt;
  const double work = static_cast<double>(x.size()) * static_cast<double>(inst.k);
  if (p == 1 && work <= 5e8) opt = SeparatedDp(x, inst.k, inst.delta).values()[inst.k];
  else if (p == 2 && work * static_cast<double>(inst.delta) <= 5e8) opt = TwoSpikeDp(x, inst.k, inst.delta, false).values()[inst.k];
  else if (x.size() <= kBruteForceMaxN) opt = brute_force_solve(inst).value;

  Output out(g.out);
  if (g.format == "csv") {
    out.stream() << "algo,value,runtime_ms,opt,support\n"
                 << args.algo << ',' << std::setprecision(17) << value << ',' << std::setprecision(6) << runtime_ms
                 << ',' << (opt ? std::to_string(*opt) : "NA") << ",\"" << io::format_support(support) << "\"\n";
    return 0;
  }
  json doc{{"algo", args.algo},     {"n", x.size()},         {"k", inst.k},
           {"delta", inst.delta},   {"spikes", p},           {"support", support_json(support)},
           {"value", value},        {"runtime_ms", runtime_ms}};
  if (opt) {
    double total = 0.0;
    for (double v : x) total += v;
    doc["opt"] = *opt;
    doc["head_ratio"] = *opt > 0.0 ? value / *opt : 1.0;
    if (total - *opt > 0.0) doc["tail_ratio"] = (total - value) / (total - *opt);
  }
  out.stream() << doc.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------------ recover

struct RecoverArgs {
  std::size_t n = 200;
  std::size_t k = 5;
  std::size_t delta = 20;
  std::size_t m = 0;
  double sigma = 0.0;
  std::size_t iters = 30;
  double eps = 0.01;
  std::optional<double> eps_head;
  std::optional<double> eps_tail;
};

int run_recover(const RecoverArgs& args, const Globals& g) {
  if (args.n < 1 || args.k < 1 || args.delta < 1) throw std::invalid_argument("n, k, delta must be >= 1");
  const std::size_t m = args.m > 0 ? args.m : default_measurements(args.k, args.n);
  const Signal truth = gen_separated_signal(args.n, args.k, args.delta, g.seed);
  const SensingModel model = gen_sensing(m, args.n, g.seed);
  const Measurement meas = measure(model, truth, args.sigma, g.seed);

  AmIhtOptions options;
  options.k = args.k;
  options.delta = args.delta;
  options.iterations = args.iters;
  options.eps_head = args.eps_head.value_or(args.eps);
  options.eps_tail = args.eps_tail.value_or(args.eps);
  const RecoveryResult result = am_iht(meas.y, model, options, std::span<const double>(meas.x_true));

  double truth_norm = 0.0;
  for (double v : truth) truth_norm += v * v;
  truth_norm = std::sqrt(truth_norm);
  const auto& last = result.trace.steps.back();

  Output out(g.out);
  if (g.format == "json") {
    json steps = json::array();
    for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
      const auto& s = result.trace.steps[i];
      steps.push_back({{"iteration", i}, {"residual", s.residual}, {"proxy", s.proxy}});
    }
    double noise = 0.0;
    for (double e : meas.noise) noise += e * e;
    json doc{{"n", args.n},
             {"k", args.k},
             {"delta", args.delta},
             {"m", m},
             {"sigma", args.sigma},
             {"trace", steps},
             {"final_support", support_json(last.support)},
             {"true_support", support_json(Support([&] {
                std::vector<std::size_t> s;
                for (std::size_t i = 0; i < truth.size(); ++i)
                  if (truth[i] != 0.0) s.push_back(i + 1);
                return s;
              }()))},
             {"relative_error", truth_norm > 0.0 ? last.residual / truth_norm : last.residual},
             {"noise_norm", std::sqrt(noise)}};
    out.stream() << doc.dump(2) << '\n';
    return 0;
  }
  auto& os = out.stream();
  os << "iteration,residual,proxy\n" << std::setprecision(12);
  for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
    const auto& s = result.trace.steps[i];
    os << i << ',' << s.residual << ',' << s.proxy << '\n';
  }
  os << "# m=" << m << '\n';
  os << "# relative_error=" << (truth_norm > 0.0 ? last.residual / truth_norm : last.residual) << '\n';
  os << "# final_support=" << io::format_support(last.support) << '\n';
  return 0;
}

// ------------------------------------------------------------------ gen

struct GenArgs {
  std::string kind = "uniform";
  std::size_t n = 1000;
  double gap = 20.0;
  std::string spikes_out;
};

int run_gen(const GenArgs& args, const Globals& g) {
  const InstanceKind kind = parse_instance_kind(args.kind);
  Weights x;
  if (kind == InstanceKind::kUniform) {
    x = gen_uniform(args.n, g.seed);
  } else {
    auto inst = gen_poisson(args.n, args.gap, g.seed);
    x = std::move(inst.x);
    if (!args.spikes_out.empty()) {
      std::ofstream f(args.spikes_out);
      if (!f) throw std::invalid_argument("cannot open '" + args.spikes_out + "'");
      f << io::format_support(inst.spikes) << '\n';
    }
  }
  Output out(g.out);
  io::write_vector(out.stream(), x);
  return 0;
}

// ------------------------------------------------------------------ bench

struct BenchArgs {
  std::string preset;
  std::string config;
  std::optional<std::size_t> repeats;
  bool tikz_dat = false;
  bool check = false;
};

int run_bench(const BenchArgs& args, const Globals& g, bool seed_given) {
  if (args.preset.empty() == args.config.empty())
    throw std::invalid_argument("bench needs exactly one of --preset or --config");
  bench::SweepConfig config;
  if (!args.preset.empty()) {
    config = bench::preset(args.preset);
  } else {
    std::ifstream f(args.config);
    if (!f) throw std::invalid_argument("cannot open config '" + args.config + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    config = bench::parse_sweep_config(buf.str());
  }
  if (args.repeats) config.repeats = *args.repeats;
  if (seed_given) config.seed = g.seed;

  const auto rows = bench::run_sweep(config);
  const std::string format = g.format.empty() ? "csv" : g.format;
  if (format == "dat" || args.tikz_dat) {
    std::string stem = g.out.empty() ? config.name : g.out;
    if (stem.size() > 4 && stem.ends_with(".csv")) stem.resize(stem.size() - 4);
    for (const auto& path : bench::write_tikz_dat(stem, config, rows)) std::cerr << "wrote " << path << '\n';
  }
  if (format != "dat") {
    Output out(g.out);
    if (format == "json") bench::write_json(out.stream(), rows);
    else bench::write_csv(out.stream(), rows);
  }
  if (args.check) {
    const auto violations = bench::guarantee_violations(rows);
    for (const auto& v : violations) std::cerr << "violation: " << v << '\n';
    if (!violations.empty()) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection and recovery for the Δ-separated sparsity model"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  auto* seed_opt = app.add_option("--seed", globals.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--out", globals.out, "Output file (stdout when omitted)");
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"csv", "dat", "json"}));

  ProjectArgs project;
  auto* project_cmd = app.add_subcommand("project", "Project a weight vector onto the model");
  project_cmd->add_option("--in", project.in, "Vector file, one number per line")->required();
  project_cmd->add_option("--k", project.k, "Sparsity budget")->required();
  project_cmd->add_option("--delta", project.delta, "Separation")->required();
  project_cmd->add_option("--spikes", project.spikes, "Spikes per window (p)");
  project_cmd->add_option("--algo", project.algo, "Algorithm")
      ->check(CLI::IsMember({"dp", "dp2", "head", "tail", "topk", "oracle"}))
      ->capture_default_str();
  project_cmd->add_option("--epsilon", project.epsilon, "Approximation precision")->capture_default_str();

  RecoverArgs recover;
  auto* recover_cmd = app.add_subcommand("recover", "Run AM-IHT on a simulated measurement");
  recover_cmd->add_option("--n", recover.n)->capture_default_str();
  recover_cmd->add_option("--k", recover.k)->capture_default_str();
  recover_cmd->add_option("--delta", recover.delta)->capture_default_str();
  recover_cmd->add_option("--m", recover.m, "Measurements (default ceil(6 k ln n))");
  recover_cmd->add_option("--sigma", recover.sigma, "Noise standard deviation")->capture_default_str();
  recover_cmd->add_option("--iters", recover.iters)->capture_default_str();
  recover_cmd->add_option("--eps", recover.eps, "Head and tail precision")->capture_default_str();
  recover_cmd->add_option("--eps-head", recover.eps_head);
  recover_cmd->add_option("--eps-tail", recover.eps_tail);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance vector");
  gen_cmd->add_option("--kind", gen.kind)->check(CLI::IsMember({"uniform", "poisson"}))->capture_default_str();
  gen_cmd->add_option("--n", gen.n)->capture_default_str();
  gen_cmd->add_option("--gap", gen.gap, "Expected spike gap (poisson)")->capture_default_str();
  gen_cmd->add_option("--spikes-out", gen.spikes_out, "Write the spike support here (poisson)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep");
  bench_cmd->add_option("--preset", bench_args.preset)
      ->check(CLI::IsMember(sepsparse::bench::preset_names()));
  bench_cmd->add_option("--config", bench_args.config, "JSON sweep description");
  bench_cmd->add_option("--repeats", bench_args.repeats, "Override the repeat count");
  bench_cmd->add_flag("--tikz-dat", bench_args.tikz_dat, "Also write two-column .dat series");
  bench_cmd->add_flag("--check", bench_args.check, "Exit 1 if a row breaks its proven guarantee");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*project_cmd) return run_project(project, globals);
    if (*recover_cmd) return run_recover(recover, globals);
    if (*gen_cmd) return run_gen(gen, globals);
    if (*bench_cmd) return run_bench(bench_args, globals, seed_opt->count() > 0);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
