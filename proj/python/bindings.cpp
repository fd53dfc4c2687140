// Python module: the three pipeline commands plus a few primitives.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cutmap/benchmarks.hpp"
#include "cutmap/overheads.hpp"
#include "cutmap/pipeline.hpp"
#include "cutmap/qasm.hpp"
#include "cutmap/reconstruct.hpp"

namespace py = pybind11;
using namespace cutmap;

namespace {

RunConfig to_config(const py::dict &kw) {
    RunConfig cfg;
    for (const auto &[k, v] : kw) {
        const auto key = py::cast<std::string>(k);
        if (key == "bench") cfg.bench = py::cast<std::string>(v);
        else if (key == "qubits") cfg.qubits = py::cast<int>(v);
        else if (key == "bench_seed") cfg.bench_seed = py::cast<std::uint64_t>(v);
        else if (key == "qasm") cfg.qasm_path = py::cast<std::string>(v);
        else if (key == "topology") cfg.topology = py::cast<std::string>(v);
        else if (key == "reuse") {
            if (!v.is_none()) {
                cfg.reuse = true;
                cfg.reuse_count = py::cast<int>(v);
            }
        } else if (key == "restarts") cfg.restarts = py::cast<int>(v);
        else if (key == "shots") {
            if (!v.is_none()) cfg.shots = py::cast<int>(v);
        } else if (key == "seed") cfg.seed = py::cast<std::uint64_t>(v);
        else if (key == "budget") cfg.budget = py::cast<long>(v);
        else if (key == "cost_order") cfg.order = parse_cost_order(py::cast<std::string>(v));
        else if (key == "observable") cfg.observable = py::cast<std::string>(v);
        else if (key == "no_cut") cfg.no_cut = py::cast<bool>(v);
        else if (key == "threads") cfg.threads = py::cast<int>(v);
        else if (key == "max_sim_qubits") cfg.max_sim_qubits = py::cast<int>(v);
        else if (key == "manifest") cfg.manifest_path = py::cast<std::string>(v);
        else if (key == "dump_graph") cfg.graph_path = py::cast<std::string>(v);
        else if (key == "routes") cfg.include_routes = py::cast<bool>(v);
        else throw std::invalid_argument("unknown option '" + key + "'");
    }
    return cfg;
}

// (exit code, report as JSON text); parsed on the Python side
py::tuple wrap(CommandResult (*cmd)(const RunConfig &), const py::kwargs &kw) {
    const RunConfig cfg = to_config(kw);
    CommandResult r;
    {
        py::gil_scoped_release release;
        r = cmd(cfg);
    }
    return py::make_tuple(r.exit_code, r.report.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "circuit cutting, isomorph reuse, distributed mapping and reconstruction";
    m.def("cut", [](const py::kwargs &kw) { return wrap(cmd_cut, kw); });
    m.def("map", [](const py::kwargs &kw) { return wrap(cmd_map, kw); });
    m.def("run", [](const py::kwargs &kw) { return wrap(cmd_run, kw); });

    m.def("benchmark_qasm",
          [](const std::string &name, int n, std::optional<std::uint64_t> seed) {
              return to_qasm(bench::make_benchmark(name, n, seed));
          },
          py::arg("name"), py::arg("qubits"), py::arg("seed") = py::none());
    m.def("benchmark_names", &bench::names);
    m.def("ground_truth",
          [](const std::string &qasm, const std::string &observable) {
              return ground_truth(parse_qasm(qasm), observable);
          },
          py::arg("qasm"), py::arg("observable"));
    m.def("overheads",
          [](int k1, int k2) {
              return py::make_tuple(py::int_(py::str(postproc_overhead(k1, k2).str())),
                                    py::int_(py::str(sampling_overhead(k1, k2).str())));
          },
          py::arg("k1"), py::arg("k2"));
    m.def("variant_count", &variant_count, py::arg("wires_in"), py::arg("wires_out"));
}
