#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "plo/archivers.hpp"
#include "plo/bench.hpp"
#include "plo/hypervolume.hpp"
#include "plo/indicators.hpp"
#include "plo/landscape.hpp"
#include "plo/oracle.hpp"
#include "plo/pareto.hpp"
#include "plo/pls.hpp"

namespace py = pybind11;
using namespace plo;

namespace {

Solution to_solution(const py::object& obj, int n) {
    if (py::isinstance<Solution>(obj)) return obj.cast<Solution>();
    if (py::isinstance<py::str>(obj)) return Solution::from_string(obj.cast<std::string>());
    return Solution(obj.cast<std::uint32_t>(), n);
}

std::vector<Solution> to_solutions(const py::iterable& items, int n) {
    std::vector<Solution> out;
    for (auto item : items) out.push_back(to_solution(py::reinterpret_borrow<py::object>(item), n));
    return out;
}

py::list archive_entries(const Archive& archive) {
    py::list out;
    for (const auto& e : archive) out.append(py::make_tuple(e.solution, e.objectives, e.visited));
    return out;
}

std::string status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Ok: return "ok";
        case RunStatus::Capped: return "capped";
        case RunStatus::Failed: return "failed";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.attr("__version__") = "0.1.0";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    py::class_<Solution>(m, "Solution")
        .def(py::init<std::uint32_t, int>(), py::arg("bits"), py::arg("n"))
        .def_static("from_string", &Solution::from_string)
        .def_property_readonly("bits", &Solution::bits)
        .def("__len__", &Solution::size)
        .def("bit", &Solution::bit)
        .def("flipped", &Solution::flipped)
        .def("neighbors", [](const Solution& x) { return neighbors(x); })
        .def("__str__", &Solution::to_string)
        .def("__repr__", [](const Solution& x) { return "Solution('" + x.to_string() + "')"; })
        .def("__eq__", [](const Solution& a, const Solution& b) { return a == b; })
        .def("__hash__", [](const Solution& x) { return py::hash(py::make_tuple(x.bits(), x.size())); });

    py::class_<InstanceParams>(m, "InstanceParams")
        .def(py::init([](int n, int mm, int k, double rho, std::uint64_t seed) {
                 return InstanceParams{n, mm, k, rho, seed};
             }),
             py::arg("n"), py::arg("m"), py::arg("k"), py::arg("rho") = 0.0, py::arg("seed") = 0)
        .def_readwrite("n", &InstanceParams::n)
        .def_readwrite("m", &InstanceParams::m)
        .def_readwrite("k", &InstanceParams::k)
        .def_readwrite("rho", &InstanceParams::rho)
        .def_readwrite("seed", &InstanceParams::gen_seed)
        .def("validate", &InstanceParams::validate);

    py::class_<Instance>(m, "Instance")
        .def_property_readonly("params", &Instance::params)
        .def_property_readonly("n", &Instance::n)
        .def_property_readonly("m", &Instance::m)
        .def_property_readonly("k", &Instance::k)
        .def("links", [](const Instance& inst, int j) {
            if (j < 0 || j >= inst.n()) throw py::index_error("variable out of range");
            auto l = inst.links(j);
            return std::vector<int>(l.begin(), l.end());
        })
        .def("table", [](const Instance& inst, int i, int j) {
            if (i < 0 || i >= inst.m() || j < 0 || j >= inst.n()) throw py::index_error("table out of range");
            auto t = inst.table(i, j);
            return std::vector<double>(t.begin(), t.end());
        })
        .def("evaluate", [](const Instance& inst, const py::object& x) {
            return inst.evaluate(to_solution(x, inst.n()));
        })
        .def("save", [](const Instance& inst, const std::string& path) { save_instance(inst, path); })
        .def("dumps", [](const Instance& inst) {
            std::ostringstream out;
            write_instance(inst, out);
            return out.str();
        });

    m.def("generate_instance",
          [](int n, int mm, int k, double rho, std::uint64_t seed) {
              return generate_instance(InstanceParams{n, mm, k, rho, seed});
          },
          py::arg("n"), py::arg("m"), py::arg("k"), py::arg("rho") = 0.0, py::arg("seed") = 0);
    m.def("load_instance", &load_instance, py::arg("path"));
    m.def("loads_instance", [](const std::string& text) {
        std::istringstream in(text);
        return read_instance(in);
    });

    m.def("dominates", [](std::vector<double> a, std::vector<double> b) { return dominates(a, b); });
    m.def("weakly_dominates", [](std::vector<double> a, std::vector<double> b) { return weakly_dominates(a, b); });
    m.def("nondominated_filter",
          [](std::vector<ObjectiveVector> pts) { return nondominated_filter(std::move(pts)); });

    m.def("hypervolume", [](const std::vector<ObjectiveVector>& pts) { return hypervolume(pts); });
    m.def("hv_contribution", [](const std::vector<ObjectiveVector>& pts, std::size_t index) {
        if (index >= pts.size()) throw py::index_error("point index out of range");
        return hv_contribution(pts, index);
    });
    m.def("hvr", [](const std::vector<ObjectiveVector>& a, const std::vector<ObjectiveVector>& front) {
        return hvr(a, front);
    });
    m.def("mult_epsilon", [](const std::vector<ObjectiveVector>& a, const std::vector<ObjectiveVector>& front) {
        return mult_epsilon(a, front);
    });

    py::class_<EnumerationResult>(m, "Enumeration")
        .def_readonly("n", &EnumerationResult::n)
        .def_readonly("m", &EnumerationResult::m)
        .def_readonly("pareto_front", &EnumerationResult::pareto_front)
        .def_readonly("pareto_set_size", &EnumerationResult::pareto_set_size)
        .def("image", [](const EnumerationResult& r, std::uint32_t bits) {
            if (bits >= r.size()) throw py::index_error("solution out of range");
            auto v = r.image(bits);
            return ObjectiveVector(v.begin(), v.end());
        })
        .def("pareto_set", [](const EnumerationResult& r) { return pareto_set(r); })
        .def("plo_census", [](const EnumerationResult& r) { return census_plo_solutions(r); });

    m.def("enumerate", &enumerate, py::arg("instance"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("is_plo", [](const Instance& inst, const py::object& x) { return is_plo(inst, to_solution(x, inst.n())); });
    m.def("is_plo_set", [](const Instance& inst, const py::iterable& xs) {
        return is_plo_set(inst, to_solutions(xs, inst.n()));
    });
    m.def("is_maximal_plo_set", [](const Instance& inst, const py::iterable& xs) {
        return is_maximal_plo_set(inst, to_solutions(xs, inst.n()));
    });

    py::class_<RunStats>(m, "RunStats")
        .def_property_readonly("plo_set", [](const RunStats& r) { return archive_entries(r.plo_set); })
        .def_property_readonly("solutions", [](const RunStats& r) { return r.plo_set.solutions(); })
        .def_property_readonly("images", [](const RunStats& r) { return r.plo_set.images(); })
        .def_readonly("length", &RunStats::length)
        .def_readonly("evaluations", &RunStats::evaluations)
        .def_readonly("seed", &RunStats::seed)
        .def_readonly("capped", &RunStats::capped)
        .def_readonly("snapshots", &RunStats::snapshots);

    m.def("pls_run",
          [](const Instance& inst, const std::string& archiver, std::optional<std::size_t> mu, std::uint64_t seed,
             std::optional<std::uint64_t> max_iterations, std::uint64_t snapshot_every) {
              PlsConfig cfg;
              cfg.archiver = parse_archiver(archiver);
              cfg.mu = mu;
              cfg.search_seed = seed;
              cfg.max_iterations = max_iterations;
              cfg.snapshot_every = snapshot_every;
              py::gil_scoped_release release;
              return pls_run(inst, cfg);
          },
          py::arg("instance"), py::arg("archiver") = "unb", py::arg("mu") = py::none(), py::arg("seed") = 0,
          py::arg("max_iterations") = py::none(), py::arg("snapshot_every") = 0);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("rho", &RunRecord::rho)
        .def_readonly("m", &RunRecord::m)
        .def_readonly("n", &RunRecord::n)
        .def_readonly("k", &RunRecord::k)
        .def_property_readonly("archiver", [](const RunRecord& r) { return std::string(archiver_name(r.config.kind)); })
        .def_property_readonly("mu", [](const RunRecord& r) { return r.config.mu; })
        .def_readonly("seed", &RunRecord::seed)
        .def_readonly("plo_set_size", &RunRecord::plo_set_size)
        .def_readonly("length", &RunRecord::length)
        .def_readonly("evaluations", &RunRecord::evaluations)
        .def_readonly("hvr", &RunRecord::hvr)
        .def_readonly("epsilon", &RunRecord::epsilon)
        .def_readonly("wall_ms", &RunRecord::wall_ms)
        .def_property_readonly("status", [](const RunRecord& r) { return status_name(r.status); })
        .def_readonly("error", &RunRecord::error);

    m.def("run_matrix",
          [](std::vector<int> n, std::vector<int> k, std::vector<int> mm, std::vector<double> rho,
             std::vector<std::uint64_t> seeds, std::vector<std::string> archivers, std::vector<std::size_t> mu,
             unsigned workers, bool record_timing, std::optional<std::uint64_t> max_iterations) {
              ExperimentMatrix matrix;
              matrix.n_values = std::move(n);
              matrix.k_values = std::move(k);
              matrix.m_values = std::move(mm);
              matrix.rho_values = std::move(rho);
              matrix.seeds = std::move(seeds);
              for (const auto& name : archivers) {
                  const ArchiverKind kind = parse_archiver(name);
                  if (kind == ArchiverKind::Unbounded) {
                      matrix.configs.push_back({kind, std::nullopt});
                  } else {
                      for (auto v : mu) matrix.configs.push_back({kind, v});
                  }
              }
              RunOptions opts;
              opts.workers = workers;
              opts.record_timing = record_timing;
              opts.max_iterations = max_iterations;
              py::gil_scoped_release release;
              return run_matrix(matrix, opts);
          },
          py::arg("n"), py::arg("k"), py::arg("m"), py::arg("rho"), py::arg("seeds"),
          py::arg("archivers") = std::vector<std::string>{"unb", "hva", "mga"},
          py::arg("mu") = std::vector<std::size_t>{10, 20, 40, 80}, py::arg("workers") = 1,
          py::arg("record_timing") = true, py::arg("max_iterations") = py::none());

    m.def("records_to_csv", [](const std::vector<RunRecord>& records) {
        std::ostringstream out;
        write_csv(records, out);
        return out.str();
    });
    m.def("records_from_csv", [](const std::string& text) {
        std::istringstream in(text);
        return read_csv(in);
    });
}
