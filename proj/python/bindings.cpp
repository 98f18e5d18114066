#include <algorithm>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sepsparse/bench.hpp"
#include "sepsparse/exact_dp.hpp"
#include "sepsparse/head.hpp"
#include "sepsparse/instance_gen.hpp"
#include "sepsparse/model.hpp"
#include "sepsparse/recovery.hpp"
#include "sepsparse/tail.hpp"

namespace py = pybind11;
using namespace sepsparse;

namespace {

using Indices = std::vector<std::size_t>;

Support to_support(const Indices& idx) {
  Indices sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  return Support(std::move(sorted));
}

py::dict dp_dict(const DpResult& r) {
  py::list sols;
  for (const auto& s : r.solutions) sols.append(s.indices());
  py::dict d;
  d["values"] = r.values;
  d["solutions"] = sols;
  return d;
}

py::array_t<double> matrix_array(const DenseMatrix& a) {
  py::array_t<double> out({a.rows(), a.cols()});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) view(r, c) = a(r, c);
  return out;
}

DenseMatrix matrix_from(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("sensing matrix must be 2-dimensional");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return DenseMatrix(rows, cols, std::vector<double>(a.data(), a.data() + rows * cols));
}

py::dict recover(std::size_t n, std::size_t k, std::size_t delta, std::size_t m, double sigma, std::size_t iterations,
                 double eps_head, double eps_tail, std::uint64_t seed) {
  if (m == 0) m = default_measurements(k, n);
  const Signal x = gen_separated_signal(n, k, delta, seed);
  const SensingModel model = gen_sensing(m, n, seed);
  const Measurement meas = measure(model, x, sigma, seed);
  AmIhtOptions opt;
  opt.k = k;
  opt.delta = delta;
  opt.iterations = iterations;
  opt.eps_head = eps_head;
  opt.eps_tail = eps_tail;
  RecoveryResult r;
  {
    py::gil_scoped_release release;
    r = am_iht(meas.y, model, opt, std::span<const double>(meas.x_true));
  }
  std::vector<double> residual, proxy;
  py::list supports;
  for (const auto& s : r.trace.steps) {
    residual.push_back(s.residual);
    proxy.push_back(s.proxy);
    supports.append(s.support.indices());
  }
  py::dict d;
  d["x_true"] = x;
  d["estimate"] = r.estimate;
  d["noise"] = meas.noise;
  d["m"] = m;
  d["residual"] = residual;
  d["proxy"] = proxy;
  d["supports"] = supports;
  return d;
}

py::list bench_rows(const std::vector<bench::BenchRow>& rows) {
  py::list out;
  auto opt = [](const std::optional<double>& v) -> py::object { return v ? py::object(py::float_(*v)) : py::object(py::none()); };
  for (const auto& r : rows) {
    py::dict d;
    d["preset"] = r.preset;
    d["instance"] = r.instance;
    d["algo"] = r.algo;
    d["p"] = r.spikes;
    d["n"] = r.n;
    d["k"] = r.k;
    d["delta"] = r.delta;
    d["lambda"] = r.lambda;
    d["repeats"] = r.repeats;
    d["mean_runtime_ms"] = r.mean_runtime_ms;
    d["mean_head_pct"] = opt(r.mean_head_pct);
    d["mean_tail_pct"] = opt(r.mean_tail_pct);
    d["min_head_pct"] = opt(r.min_head_pct);
    d["max_tail_pct"] = opt(r.max_tail_pct);
    d["tail_samples"] = r.tail_samples;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_sepsparse, m) {
  m.doc() = "Projection and recovery for the separated sparsity model.";
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);

  m.def("is_feasible", [](const Indices& s, std::size_t n, std::size_t k, std::size_t delta, std::size_t p) {
    return is_feasible(to_support(s), n, k, delta, p);
  }, py::arg("support"), py::arg("n"), py::arg("k"), py::arg("delta"), py::arg("p") = 1);
  m.def("objective", [](const Weights& x, const Indices& s) { return objective(x, to_support(s)); },
        py::arg("x"), py::arg("support"));
  m.def("squared_weights", [](const Signal& v) { return squared_weights(v); }, py::arg("v"));
  m.def("brute_force_solve", [](const Weights& x, std::size_t k, std::size_t delta, std::size_t p) {
    const auto r = brute_force_solve({x, k, delta, p});
    return py::make_tuple(r.support.indices(), r.value);
  }, py::arg("x"), py::arg("k"), py::arg("delta"), py::arg("p") = 1);

  m.def("dp_solve", [](const Weights& x, std::size_t k, std::size_t delta) { return dp_dict(dp_solve(x, k, delta)); },
        py::arg("x"), py::arg("k"), py::arg("delta"));
  m.def("dp_solve_2spike", [](const Weights& x, std::size_t k, std::size_t delta) {
    return dp_dict(dp_solve_2spike(x, k, delta));
  }, py::arg("x"), py::arg("k"), py::arg("delta"));
  m.def("dp_solve_unrestricted", [](const Weights& x, std::size_t delta) {
    const auto r = dp_solve_unrestricted(x, delta);
    return py::make_tuple(r.value, r.support.indices());
  }, py::arg("x"), py::arg("delta"));

  m.def("head_project", [](const Weights& x, std::size_t k, std::size_t delta, std::size_t p, double epsilon) {
    const auto r = head_project(x, k, delta, p, epsilon);
    return py::make_tuple(r.support.indices(), r.value);
  }, py::arg("x"), py::arg("k"), py::arg("delta"), py::arg("p") = 1, py::arg("epsilon") = 0.5);
  m.def("tail_project", [](const Weights& x, std::size_t k, std::size_t delta, double epsilon) {
    const auto r = tail_project(x, k, delta, epsilon);
    return py::make_tuple(r.support.indices(), r.value);
  }, py::arg("x"), py::arg("k"), py::arg("delta"), py::arg("epsilon") = 0.5);
  m.def("topk_tail_project", [](const Weights& x, std::size_t k, std::size_t delta) {
    return topk_tail_project(x, k, delta).indices();
  }, py::arg("x"), py::arg("k"), py::arg("delta"));
  m.def("tail_vector", [](const Weights& x, std::size_t delta) { return tail_vector(x, delta); }, py::arg("x"),
        py::arg("delta"));
  m.def("strong_and_reduced", [](const Weights& x, std::size_t delta) {
    const auto p = strong_and_reduced(x, delta);
    return py::make_tuple(p.tail, p.strong, p.reduced);
  }, py::arg("x"), py::arg("delta"));

  m.def("gen_uniform", &gen_uniform, py::arg("n"), py::arg("seed"));
  m.def("gen_poisson", [](std::size_t n, double gap, std::uint64_t seed) {
    auto r = gen_poisson(n, gap, seed);
    return py::make_tuple(r.x, r.spikes.indices());
  }, py::arg("n"), py::arg("expected_gap"), py::arg("seed"));

  m.def("default_measurements", &default_measurements, py::arg("k"), py::arg("n"));
  m.def("gen_sensing", [](std::size_t rows, std::size_t n, std::uint64_t seed) {
    return matrix_array(gen_sensing(rows, n, seed).a);
  }, py::arg("m"), py::arg("n"), py::arg("seed"));
  m.def("empirical_rip", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a, std::size_t k,
                            std::size_t delta, std::size_t p, std::size_t samples, std::uint64_t seed) {
    return empirical_rip(sensing_from_matrix(matrix_from(a)), k, delta, p, samples, seed);
  }, py::arg("a"), py::arg("k"), py::arg("delta"), py::arg("p"), py::arg("samples"), py::arg("seed"));
  m.def("am_iht", [](const std::vector<double>& y, const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                     std::size_t k, std::size_t delta, std::size_t iterations, double eps_head, double eps_tail) {
    const auto model = sensing_from_matrix(matrix_from(a));
    AmIhtOptions opt;
    opt.k = k;
    opt.delta = delta;
    opt.iterations = iterations;
    opt.eps_head = eps_head;
    opt.eps_tail = eps_tail;
    RecoveryResult r;
    {
      py::gil_scoped_release release;
      r = am_iht(y, model, opt);
    }
    std::vector<double> proxy;
    for (const auto& s : r.trace.steps) proxy.push_back(s.proxy);
    return py::make_tuple(r.estimate, proxy);
  }, py::arg("y"), py::arg("a"), py::arg("k"), py::arg("delta"), py::arg("iterations") = 30,
     py::arg("eps_head") = 0.01, py::arg("eps_tail") = 0.01);
  m.def("recover", &recover, py::arg("n"), py::arg("k"), py::arg("delta"), py::arg("m") = 0, py::arg("sigma") = 0.0,
        py::arg("iterations") = 30, py::arg("eps_head") = 0.01, py::arg("eps_tail") = 0.01, py::arg("seed") = 1);

  m.def("bench_presets", &bench::preset_names);
  m.def("bench", [](const std::string& preset, std::size_t repeats, std::uint64_t seed) {
    auto c = bench::preset(preset);
    c.repeats = repeats;
    c.seed = seed;
    std::vector<bench::BenchRow> rows;
    {
      py::gil_scoped_release release;
      rows = bench::run_sweep(c);
    }
    return bench_rows(rows);
  }, py::arg("preset"), py::arg("repeats") = 100, py::arg("seed") = 1);
  m.def("bench_config", [](const std::string& json_text) {
    const auto c = bench::parse_sweep_config(json_text);
    std::vector<bench::BenchRow> rows;
    {
      py::gil_scoped_release release;
      rows = bench::run_sweep(c);
    }
    return bench_rows(rows);
  }, py::arg("json_text"));
}
