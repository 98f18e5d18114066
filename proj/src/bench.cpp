#include "sepsparse/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sepsparse/exact_dp.hpp"
#include "sepsparse/head.hpp"
#include "sepsparse/rng.hpp"
#include "sepsparse/tail.hpp"

namespace sepsparse::bench {

using json = nlohmann::json;

std::string to_string(Algo algo) {
  switch (algo) {
    case Algo::kDp: return "dp";
    case Algo::kDp2: return "dp2";
    case Algo::kHead: return "head";
    case Algo::kTail: return "tail";
  }
  return "?";
}

Algo parse_algo(const std::string& name) {
  if (name == "dp") return Algo::kDp;
  if (name == "dp2") return Algo::kDp2;
  if (name == "head") return Algo::kHead;
  if (name == "tail") return Algo::kTail;
  throw std::invalid_argument("unknown benchmark algorithm '" + name + "'");
}

std::string AlgoSpec::label() const {
  if (algo == Algo::kHead || algo == Algo::kTail) return to_string(algo) + "-l" + std::to_string(lambda);
  return to_string(algo);
}

SweepPoint sqrt_rule(std::size_t n) {
  const auto v = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(0.5 * std::sqrt(static_cast<double>(n)))));
  return {n, v, v};
}

SweepPoint log_rule(std::size_t n) {
  const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n)))));
  return {n, k, 40};
}

namespace {

std::vector<AlgoSpec> default_algos(SweepKind kind, std::size_t spikes) {
  if (kind == SweepKind::kRuntime) {
    if (spikes == 2) return {{Algo::kDp2, 0}, {Algo::kHead, 2}, {Algo::kHead, 3}};
    return {{Algo::kDp, 0}, {Algo::kHead, 2}, {Algo::kHead, 3}, {Algo::kTail, 2}, {Algo::kTail, 3}};
  }
  if (spikes == 2) return {{Algo::kHead, 1}, {Algo::kHead, 2}, {Algo::kHead, 3}};
  return {{Algo::kHead, 1}, {Algo::kHead, 2}, {Algo::kHead, 3},
          {Algo::kTail, 1}, {Algo::kTail, 2}, {Algo::kTail, 3}};
}

std::vector<SweepPoint> by_rule(const std::vector<std::size_t>& ns, SweepPoint (*rule)(std::size_t)) {
  std::vector<SweepPoint> points;
  for (auto n : ns) points.push_back(rule(n));
  return points;
}

std::vector<SweepPoint> k_sweep(std::size_t n, std::size_t delta, const std::vector<std::size_t>& ks) {
  std::vector<SweepPoint> points;
  for (auto k : ks) points.push_back({n, k, delta});
  return points;
}

void validate(const SweepConfig& config) {
  if (config.spikes != 1 && config.spikes != 2) throw std::invalid_argument("benchmarks support p = 1 or 2");
  if (config.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (config.points.empty()) throw std::invalid_argument("sweep has no points");
  if (config.instances.empty()) throw std::invalid_argument("sweep has no instance kinds");
  for (const auto& p : config.points) {
    if (p.n < 1 || p.k < 1 || p.delta < 1) throw std::invalid_argument("sweep points need n, k, delta >= 1");
  }
  for (const auto& a : config.algos) {
    if (a.algo == Algo::kDp && config.spikes != 1) throw std::invalid_argument("dp rows require p = 1");
    if (a.algo == Algo::kDp2 && config.spikes != 2) throw std::invalid_argument("dp2 rows require p = 2");
    if (a.algo == Algo::kTail && config.spikes != 1) throw std::invalid_argument("tail rows require p = 1");
    if ((a.algo == Algo::kHead || a.algo == Algo::kTail) && a.lambda < 1)
      throw std::invalid_argument("head/tail rows need lambda >= 1");
  }
}

struct Accumulator {
  double runtime_ms = 0.0;
  double head_sum = 0.0;
  double tail_sum = 0.0;
  double head_min = std::numeric_limits<double>::infinity();
  double tail_max = -std::numeric_limits<double>::infinity();
  std::size_t tail_samples = 0;
};

struct Run {
  Support support;
  double elapsed_ms = 0.0;
};

template <class F>
Run timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  Support support = f();
  const auto stop = std::chrono::steady_clock::now();
  return {std::move(support), std::chrono::duration<double, std::milli>(stop - start).count()};
}

Run run_algo(const AlgoSpec& spec, const Weights& x, const SweepPoint& p, std::size_t spikes) {
  switch (spec.algo) {
    case Algo::kDp:
      return timed([&] { return SeparatedDp(x, p.k, p.delta).solution(p.k); });
    case Algo::kDp2: {
      // Flags cost n·Δ·k bits; past ~125 MB only the values are timed.
      const bool with_solutions = static_cast<double>(p.n) * std::max<std::size_t>(p.delta, 2) * p.k < 1.0e9;
      return timed([&] {
        TwoSpikeDp dp(x, p.k, p.delta, with_solutions);
        return with_solutions ? dp.solution(p.k) : Support{};
      });
    }
    case Algo::kHead:
      return timed([&] { return head_project_lambda(x, p.k, p.delta, spikes, spec.lambda).support; });
    case Algo::kTail:
      return timed([&] { return tail_project_lambda(x, p.k, p.delta, spec.lambda).support; });
  }
  throw std::logic_error("unreachable");
}

double optimum(const Weights& x, const SweepPoint& p, std::size_t spikes) {
  if (spikes == 1) return SeparatedDp(x, p.k, p.delta).values()[p.k];
  return TwoSpikeDp(x, p.k, p.delta, false).values()[p.k];
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string opt_field(const std::optional<double>& v, int digits) { return v ? fixed(*v, digits) : "NA"; }

}  // namespace

SweepConfig preset(const std::string& name) {
  SweepConfig c;
  c.name = name;
  const std::vector<std::size_t> runtime_ns{1000, 2000, 5000, 10000, 20000, 50000};
  const std::vector<std::size_t> runtime_ns_2spike{500, 1000, 2000, 5000, 10000};
  const std::vector<std::size_t> ks{1, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  const std::vector<std::size_t> ks_2spike{2, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  if (name == "fig2-left") {
    c.kind = SweepKind::kRuntime;
    c.points = by_rule(runtime_ns, sqrt_rule);
  } else if (name == "fig2-right") {
    c.kind = SweepKind::kRuntime;
    c.points = by_rule(runtime_ns, log_rule);
  } else if (name == "fig3") {
    c.points = k_sweep(1000, 20, ks);
  } else if (name == "fig4") {
    c.instances = {InstanceKind::kPoisson};
    c.points = k_sweep(1000, 20, ks);
  } else if (name == "fig5") {
    c.kind = SweepKind::kRuntime;
    c.spikes = 2;
    c.points = by_rule(runtime_ns_2spike, sqrt_rule);
  } else if (name == "fig5-right") {
    c.kind = SweepKind::kRuntime;
    c.spikes = 2;
    c.points = by_rule(runtime_ns_2spike, log_rule);
  } else if (name == "fig6") {
    c.spikes = 2;
    c.gap_factor = 0.5;
    c.instances = {InstanceKind::kUniform, InstanceKind::kPoisson};
    c.points = k_sweep(1000, 20, ks_2spike);
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  c.algos = default_algos(c.kind, c.spikes);
  return c;
}

std::vector<std::string> preset_names() {
  return {"fig2-left", "fig2-right", "fig3", "fig4", "fig5", "fig5-right", "fig6"};
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("sweep config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("sweep config must be a JSON object");

  try {
    SweepConfig c;
    c.name = doc.value("name", std::string("custom"));
    const auto kind = doc.value("kind", std::string("quality"));
    if (kind == "runtime") c.kind = SweepKind::kRuntime;
    else if (kind == "quality") c.kind = SweepKind::kQuality;
    else throw std::invalid_argument("kind must be runtime or quality");
    c.spikes = doc.value("spikes", std::size_t{1});
    c.gap_factor = doc.value("gap_factor", c.spikes == 2 ? 0.5 : 1.0);
    c.repeats = doc.value("repeats", std::size_t{100});
    c.seed = doc.value("seed", std::uint64_t{1});
    if (doc.contains("instances")) {
      c.instances.clear();
      for (const auto& s : doc.at("instances")) c.instances.push_back(parse_instance_kind(s.get<std::string>()));
    }

    if (doc.contains("points")) {
      for (const auto& p : doc.at("points"))
        c.points.push_back({p.at("n").get<std::size_t>(), p.at("k").get<std::size_t>(), p.at("delta").get<std::size_t>()});
    } else if (doc.contains("n") && doc.at("n").is_array()) {
      const auto rule = doc.value("rule", std::string("sqrt"));
      const auto ns = doc.at("n").get<std::vector<std::size_t>>();
      if (rule == "sqrt") c.points = by_rule(ns, sqrt_rule);
      else if (rule == "log2") c.points = by_rule(ns, log_rule);
      else throw std::invalid_argument("rule must be sqrt or log2");
    } else if (doc.contains("n")) {
      c.points = k_sweep(doc.at("n").get<std::size_t>(), doc.at("delta").get<std::size_t>(),
                         doc.at("k").get<std::vector<std::size_t>>());
    } else {
      throw std::invalid_argument("sweep config needs points or n");
    }

    if (doc.contains("algorithms")) {
      for (const auto& a : doc.at("algorithms"))
        c.algos.push_back({parse_algo(a.at("algo").get<std::string>()), a.value("lambda", std::size_t{0})});
    } else {
      c.algos = default_algos(c.kind, c.spikes);
    }
    validate(c);
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad sweep config: ") + e.what());
  }
}

std::vector<BenchRow> run_sweep(const SweepConfig& config) {
  validate(config);
  std::vector<BenchRow> rows;
  for (std::size_t pi = 0; pi < config.points.size(); ++pi) {
    const SweepPoint& point = config.points[pi];
    for (const InstanceKind kind : config.instances) {
      std::vector<Accumulator> acc(config.algos.size());
      for (std::size_t rep = 0; rep < config.repeats; ++rep) {
        const std::uint64_t seed = derive_seed(config.seed, pi, rep, static_cast<std::uint64_t>(kind));
        GenSpec spec{kind, point.n, std::max(1.0, config.gap_factor * static_cast<double>(point.delta)), seed};
        const Weights x = generate(spec);
        double total = 0.0;
        for (double v : x) total += v;

        std::vector<Run> runs;
        runs.reserve(config.algos.size());
        std::optional<double> opt;
        for (const auto& a : config.algos) {
          runs.push_back(run_algo(a, x, point, config.spikes));
          if ((a.algo == Algo::kDp || a.algo == Algo::kDp2) && !runs.back().support.empty())
            opt = objective(x, runs.back().support);
        }
        if (!opt) opt = optimum(x, point, config.spikes);
        const double opt_complement = total - *opt;

        for (std::size_t ai = 0; ai < config.algos.size(); ++ai) {
          auto& a = acc[ai];
          const double value = objective(x, runs[ai].support);
          const bool values_only = config.algos[ai].algo == Algo::kDp2 && runs[ai].support.empty() && *opt > 0.0;
          const double head = values_only ? 100.0 : (*opt > 0.0 ? 100.0 * value / *opt : 100.0);
          a.runtime_ms += runs[ai].elapsed_ms;
          a.head_sum += head;
          a.head_min = std::min(a.head_min, head);
          if (config.spikes == 1 && opt_complement > 1e-12 * std::max(1.0, total)) {
            const double tail = 100.0 * (total - value) / opt_complement;
            a.tail_sum += tail;
            a.tail_max = std::max(a.tail_max, tail);
            ++a.tail_samples;
          }
        }
      }

      for (std::size_t ai = 0; ai < config.algos.size(); ++ai) {
        const auto& a = acc[ai];
        const auto reps = static_cast<double>(config.repeats);
        BenchRow row;
        row.preset = config.name;
        row.instance = to_string(kind);
        row.algo = to_string(config.algos[ai].algo);
        row.spikes = config.spikes;
        row.n = point.n;
        row.k = point.k;
        row.delta = point.delta;
        row.lambda = config.algos[ai].lambda;
        row.repeats = config.repeats;
        row.mean_runtime_ms = a.runtime_ms / reps;
        row.mean_head_pct = a.head_sum / reps;
        row.min_head_pct = a.head_min;
        if (a.tail_samples > 0) {
          row.mean_tail_pct = a.tail_sum / static_cast<double>(a.tail_samples);
          row.max_tail_pct = a.tail_max;
        }
        row.tail_samples = a.tail_samples;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<BenchRow> bench_runtime(const SweepConfig& config) {
  if (config.kind != SweepKind::kRuntime) throw std::invalid_argument("not a runtime sweep");
  return run_sweep(config);
}

std::vector<BenchRow> bench_quality(const SweepConfig& config) {
  if (config.kind != SweepKind::kQuality) throw std::invalid_argument("not a quality sweep");
  return run_sweep(config);
}

std::vector<std::string> guarantee_violations(const std::vector<BenchRow>& rows, double tolerance) {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    const auto lambda = static_cast<double>(row.lambda);
    const std::string where = row.preset + "/" + row.instance + "/" + row.algo + " lambda=" +
                              std::to_string(row.lambda) + " k=" + std::to_string(row.k);
    if (row.algo == "head" && row.min_head_pct && *row.min_head_pct < 100.0 * lambda / (lambda + 1.0) - tolerance)
      out.push_back(where + ": head " + std::to_string(*row.min_head_pct) + "% below guarantee");
    if (row.algo == "tail" && row.max_tail_pct && *row.max_tail_pct > 100.0 * (1.0 + 2.0 / lambda) + tolerance)
      out.push_back(where + ": tail " + std::to_string(*row.max_tail_pct) + "% above guarantee");
    if ((row.algo == "dp" || row.algo == "dp2") && row.min_head_pct && *row.min_head_pct < 100.0 - tolerance)
      out.push_back(where + ": exact row below optimum");
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "preset,instance,algo,p,n,k,delta,lambda,repeats,mean_runtime_ms,mean_head_pct,mean_tail_pct,"
         "min_head_pct,max_tail_pct,tail_samples\n";
  for (const auto& r : rows) {
    out << r.preset << ',' << r.instance << ',' << r.algo << ',' << r.spikes << ',' << r.n << ',' << r.k << ','
        << r.delta << ',' << r.lambda << ',' << r.repeats << ',' << fixed(r.mean_runtime_ms, 3) << ','
        << opt_field(r.mean_head_pct, 4) << ',' << opt_field(r.mean_tail_pct, 4) << ','
        << opt_field(r.min_head_pct, 4) << ',' << opt_field(r.max_tail_pct, 4) << ',' << r.tail_samples << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<BenchRow>& rows) {
  json arr = json::array();
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : rows) {
    arr.push_back({{"preset", r.preset},
                   {"instance", r.instance},
                   {"algo", r.algo},
                   {"p", r.spikes},
                   {"n", r.n},
                   {"k", r.k},
                   {"delta", r.delta},
                   {"lambda", r.lambda},
                   {"repeats", r.repeats},
                   {"mean_runtime_ms", r.mean_runtime_ms},
                   {"mean_head_pct", opt(r.mean_head_pct)},
                   {"mean_tail_pct", opt(r.mean_tail_pct)},
                   {"min_head_pct", opt(r.min_head_pct)},
                   {"max_tail_pct", opt(r.max_tail_pct)},
                   {"tail_samples", r.tail_samples}});
  }
  out << arr.dump(2) << '\n';
}

std::vector<std::string> write_tikz_dat(const std::string& stem, const SweepConfig& config,
                                        const std::vector<BenchRow>& rows) {
  // (instance, label, metric) -> lines, in sweep order.
  std::map<std::string, std::string> files;
  std::vector<std::string> order;
  auto emit = [&](const std::string& path, std::size_t xval, double yval) {
    if (!files.contains(path)) order.push_back(path);
    files[path] += std::to_string(xval) + " " + fixed(yval, 4) + "\n";
  };
  for (const auto& r : rows) {
    const std::string label = r.lambda > 0 ? r.algo + "-l" + std::to_string(r.lambda) : r.algo;
    const std::string base = stem + "-" + r.instance + "-" + label;
    if (config.kind == SweepKind::kRuntime) {
      emit(base + "-runtime_ms.dat", r.n, r.mean_runtime_ms);
    } else {
      if (r.mean_head_pct) emit(base + "-head_pct.dat", r.k, *r.mean_head_pct);
      if (r.mean_tail_pct) emit(base + "-tail_pct.dat", r.k, *r.mean_tail_pct);
    }
  }
  for (const auto& path : order) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << files[path];
  }
  return order;
}

}  // namespace sepsparse::bench
