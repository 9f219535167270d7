#include "bdsg/baselines.hpp"
#include "bdsg/driver.hpp"
#include "bdsg/experiments.hpp"
#include "bdsg/parallel.hpp"
#include "bdsg/table_cache.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <complex>
#include <vector>

namespace py = pybind11;
using namespace bdsg;
using cplx = std::complex<double>;

namespace {

py::array_t<cplx> to_numpy(std::span<const cplx> values) {
    py::array_t<cplx> out({static_cast<py::ssize_t>(values.size())});
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

py::array_t<double> to_numpy(std::span<const double> values) {
    py::array_t<double> out({static_cast<py::ssize_t>(values.size())});
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

WaveField field_from_numpy(const GridPtr& grid, const py::array_t<cplx>& array) {
    const auto view = array.unchecked<1>();
    std::vector<cplx> values(static_cast<std::size_t>(view.shape(0)));
    for (py::ssize_t i = 0; i < view.shape(0); ++i)
        values[static_cast<std::size_t>(i)] = view(i);
    return WaveField(grid, std::move(values));
}

std::vector<double> doubles_from_numpy(const py::array_t<double>& array) {
    const auto view = array.unchecked<1>();
    std::vector<double> values(static_cast<std::size_t>(view.shape(0)));
    for (py::ssize_t i = 0; i < view.shape(0); ++i)
        values[static_cast<std::size_t>(i)] = view(i);
    return values;
}

// python callbacks may be invoked from worker threads; take the GIL per call
std::function<WaveField(double)> wrap_solver(const py::function& fn) {
    return [fn](double z) {
        py::gil_scoped_acquire gil;
        return fn(z).cast<WaveField>();
    };
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bloch-decomposition stochastic Galerkin solver (C++ core)";
    m.attr("__version__") = "0.1.0";

    m.def("set_max_threads", &set_max_threads, py::arg("n"));

    py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
        .def(py::init<double, int>(), py::arg("epsilon"), py::arg("points_per_cell"))
        .def_property_readonly("epsilon", &Grid::epsilon)
        .def_property_readonly("cells", &Grid::cells)
        .def_property_readonly("points_per_cell", &Grid::points_per_cell)
        .def_property_readonly("total_points", &Grid::total_points)
        .def_property_readonly("dx", &Grid::dx)
        .def_property_readonly("x", [](const Grid& g) { return to_numpy(g.x_nodes()); })
        .def_property_readonly("k", [](const Grid& g) { return to_numpy(g.k_nodes()); })
        .def_property_readonly("y", [](const Grid& g) { return to_numpy(g.y_nodes()); })
        .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; })
        .def("__repr__", [](const Grid& g) {
            return "Grid(epsilon=" + std::to_string(g.epsilon()) +
                   ", cells=" + std::to_string(g.cells()) +
                   ", points_per_cell=" + std::to_string(g.points_per_cell()) + ")";
        });
    m.def("make_grid", &make_grid, py::arg("epsilon"), py::arg("points_per_cell"));

    py::class_<PeriodicPotential>(m, "PeriodicPotential")
        .def_static("mathieu", &PeriodicPotential::mathieu)
        .def_static("kronig_penney", &PeriodicPotential::kronig_penney)
        .def_static("weak_mathieu", &PeriodicPotential::weak_mathieu)
        .def_static("custom",
                    [](const py::function& fn) {
                        return PeriodicPotential::custom([fn](double y) {
                            py::gil_scoped_acquire gil;
                            return fn(y).cast<double>();
                        });
                    })
        .def("__call__", &PeriodicPotential::operator())
        .def_property_readonly("name", [](const PeriodicPotential& p) {
            return std::string(p.name());
        });

    py::class_<RandomPotential>(m, "RandomPotential")
        .def_static("harmonic_noise", &RandomPotential::harmonic_noise)
        .def_static("step_decay", &RandomPotential::step_decay)
        .def_static("linear_force", &RandomPotential::linear_force)
        .def_static("anderson_cosine", &RandomPotential::anderson_cosine, py::arg("sigma"))
        .def_static("custom",
                    [](const py::function& fn) {
                        return RandomPotential::custom([fn](double x, double z) {
                            py::gil_scoped_acquire gil;
                            return fn(x, z).cast<double>();
                        });
                    })
        .def("__call__", &RandomPotential::operator())
        .def_property_readonly("sigma", &RandomPotential::sigma)
        .def_property_readonly("name",
                               [](const RandomPotential& p) { return std::string(p.name()); });

    py::class_<WaveField>(m, "WaveField")
        .def(py::init([](const GridPtr& grid, const py::array_t<cplx>& values) {
                 return field_from_numpy(grid, values);
             }),
             py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", &WaveField::grid_ptr)
        .def("to_numpy", [](const WaveField& f) { return to_numpy(f.values()); });

    m.def("initial_gaussian", &initial_gaussian, py::arg("grid"));
    m.def("discrete_norm", py::overload_cast<const WaveField&>(&discrete_norm), py::arg("field"));

    py::class_<LatticeTable>(m, "LatticeTable")
        .def_property_readonly("grid", &LatticeTable::grid_ptr)
        .def_property_readonly("bands", &LatticeTable::bands)
        .def_property_readonly("truncated", &LatticeTable::truncated)
        .def_property_readonly("energies",
                               [](const LatticeTable& t) { return Eigen::MatrixXd(t.energies()); })
        .def("chi_hat",
             [](const LatticeTable& t, int ell) { return Eigen::MatrixXcd(t.chi_hat(ell)); })
        .def("phi", [](const LatticeTable& t, int ell) { return Eigen::MatrixXcd(t.phi(ell)); })
        .def("save", [](const LatticeTable& t, const std::filesystem::path& path) {
            save_lattice_table(t, path);
        });

    m.def("load_lattice_table", &load_lattice_table, py::arg("path"));
    m.def("compute_lattice_table", &compute_lattice_table, py::arg("potential"), py::arg("grid"),
          py::arg("bands"), py::call_guard<py::gil_scoped_release>());

    m.def("cell_transform", &cell_transform, py::call_guard<py::gil_scoped_release>());
    m.def("inverse_cell_transform", &inverse_cell_transform,
          py::call_guard<py::gil_scoped_release>());
    m.def("bd_lattice_step", &bd_lattice_step, py::arg("field"), py::arg("table"), py::arg("dt"),
          py::arg("epsilon"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "potential_phase_step",
        [](const WaveField& field, const py::array_t<double>& potential, double dt, double eps) {
            const auto samples = doubles_from_numpy(potential);
            py::gil_scoped_release release;
            return potential_phase_step(field, samples, dt, eps);
        },
        py::arg("field"), py::arg("potential_on_grid"), py::arg("dt"), py::arg("epsilon"));
    m.def(
        "bd_step",
        [](const WaveField& field, const LatticeTable& table,
           const py::array_t<double>& potential, double dt, double eps) {
            const auto samples = doubles_from_numpy(potential);
            py::gil_scoped_release release;
            return bd_step(field, table, samples, dt, eps, Splitting::Strang);
        },
        py::arg("field"), py::arg("table"), py::arg("potential_on_grid"), py::arg("dt"),
        py::arg("epsilon"));

    py::class_<GpcBasis>(m, "GpcBasis")
        .def(py::init<int, int>(), py::arg("order"), py::arg("quad_nodes") = 0)
        .def_property_readonly("order", &GpcBasis::order)
        .def_property_readonly("size", &GpcBasis::size)
        .def_property_readonly("nodes", [](const GpcBasis& b) { return to_numpy(b.nodes()); })
        .def_property_readonly("weights", [](const GpcBasis& b) { return to_numpy(b.weights()); })
        .def("evaluate", &GpcBasis::evaluate, py::arg("p"), py::arg("z"));

    m.def("triple_products", [](const GpcBasis& basis) {
        const auto e = triple_products(basis);
        const int P = e.size();
        py::array_t<double> out({P, P, P});
        auto view = out.mutable_unchecked<3>();
        for (int j = 0; j < P; ++j)
            for (int q = 0; q < P; ++q)
                for (int p = 0; p < P; ++p) view(j, q, p) = e(j, q, p);
        return out;
    });

    py::class_<CouplingSet>(m, "CouplingSet")
        .def_property_readonly("size", [](const CouplingSet& c) { return c.size; })
        .def("matrix", [](const CouplingSet& c, int idx) {
            return Eigen::MatrixXd(c.matrices.at(static_cast<std::size_t>(idx)));
        });

    m.def(
        "project_potential",
        [](const RandomPotential& U, const GpcBasis& basis, const GridPtr& grid) {
            return Eigen::MatrixXd(project_potential(U, basis, *grid));
        },
        py::arg("potential"), py::arg("basis"), py::arg("grid"));
    m.def(
        "build_coupling",
        [](const Eigen::MatrixXd& coeffs, const GpcBasis& basis, const GridPtr& grid) {
            return build_coupling(coeffs, triple_products(basis), grid);
        },
        py::arg("potential_coeffs"), py::arg("basis"), py::arg("grid"));

    py::class_<GpcState>(m, "GpcState")
        .def_property_readonly("size", &GpcState::size)
        .def_property_readonly("grid", &GpcState::grid_ptr)
        .def("coefficient",
             [](const GpcState& s, int p) { return s.coeffs.at(static_cast<std::size_t>(p)); })
        .def("to_numpy", [](const GpcState& s) {
            const int P = s.size();
            const int n = s.grid().total_points();
            py::array_t<cplx> out({P, n});
            auto view = out.mutable_unchecked<2>();
            for (int p = 0; p < P; ++p) {
                auto v = s.coeffs[static_cast<std::size_t>(p)].values();
                for (int i = 0; i < n; ++i) view(p, i) = v[static_cast<std::size_t>(i)];
            }
            return out;
        });

    m.def("deterministic_state", &deterministic_state, py::arg("field"), py::arg("size"));
    m.def(
        "project_initial",
        [](const py::function& psi_in, const GpcBasis& basis, const GridPtr& grid) {
            return project_initial(
                [&psi_in](double x, double z) { return psi_in(x, z).cast<cplx>(); }, basis, grid);
        },
        py::arg("psi_in"), py::arg("basis"), py::arg("grid"));
    m.def("gauss_legendre_rule", &gauss_legendre_rule, py::arg("n"));
    m.def("random_potential_step", &random_potential_step, py::arg("state"), py::arg("coupling"),
          py::arg("dt"), py::arg("epsilon"), py::call_guard<py::gil_scoped_release>());
    m.def("mean_field", &mean_field);
    m.def("mean_density", [](const GpcState& s) {
        const auto d = mean_density(s);
        return to_numpy(std::span<const double>(d));
    });
    m.def("coefficient_norms", &coefficient_norms);
    m.def("total_mass", &total_mass);
    m.def("second_moment", &second_moment);
    m.def(
        "total_energy",
        [](const GpcState& state, const py::array_t<double>& lattice, const CouplingSet& coupling,
           double eps) {
            const auto samples = doubles_from_numpy(lattice);
            return total_energy(state, samples, coupling, eps);
        },
        py::arg("state"), py::arg("lattice_potential_on_grid"), py::arg("coupling"),
        py::arg("epsilon"));

    py::class_<SolutionStats>(m, "SolutionStats")
        .def_property_readonly("grid", [](const SolutionStats& s) { return s.grid; })
        .def_property_readonly("mean", [](const SolutionStats& s) { return s.mean; })
        .def_property_readonly("density", [](const SolutionStats& s) {
            return to_numpy(std::span<const double>(s.density));
        });
    m.def("stats_from", &stats_from, py::arg("state"));
    m.def(
        "error_metrics",
        [](const SolutionStats& candidate, const SolutionStats& reference) {
            const auto err = error_metrics(candidate, reference);
            return py::make_tuple(err.delta_mean, err.delta_den);
        },
        py::arg("candidate"), py::arg("reference"));

    py::class_<RunSpec>(m, "RunSpec")
        .def(py::init<>())
        .def_readwrite("grid", &RunSpec::grid)
        .def_readwrite("lattice_potential", &RunSpec::lattice_potential)
        .def_readwrite("random_potential", &RunSpec::random_potential)
        .def_readwrite("final_time", &RunSpec::final_time)
        .def_readwrite("dt", &RunSpec::dt)
        .def_readwrite("gpc_order", &RunSpec::gpc_order)
        .def_readwrite("bands", &RunSpec::bands)
        .def_readwrite("quad_nodes", &RunSpec::quad_nodes)
        .def_readwrite("snapshot_stride", &RunSpec::snapshot_stride);

    m.def(
        "run",
        [](const RunSpec& spec, const GpcState& initial, const py::object& observer) {
            RunObserver native;
            if (!observer.is_none()) {
                const py::function fn = observer.cast<py::function>();
                native = [fn](int step, double t, const GpcState& state) {
                    py::gil_scoped_acquire gil;
                    fn(step, t, state);
                };
            }
            py::gil_scoped_release release;
            return run(spec, initial, native);
        },
        py::arg("spec"), py::arg("initial"), py::arg("observer") = py::none());

    m.def(
        "ts_step",
        [](const WaveField& field, const py::array_t<double>& potential, double dt, double eps) {
            const auto samples = doubles_from_numpy(potential);
            py::gil_scoped_release release;
            return ts_step(field, samples, dt, eps);
        },
        py::arg("field"), py::arg("total_potential"), py::arg("dt"), py::arg("epsilon"));
    m.def(
        "ts_run",
        [](const WaveField& field, const py::array_t<double>& potential, double dt, int steps,
           double eps) {
            const auto samples = doubles_from_numpy(potential);
            py::gil_scoped_release release;
            return ts_run(field, samples, dt, steps, eps);
        },
        py::arg("initial"), py::arg("total_potential"), py::arg("dt"), py::arg("steps"),
        py::arg("epsilon"));
    m.def(
        "total_potential_samples",
        [](const GridPtr& grid, const PeriodicPotential& V, const RandomPotential& U, double z) {
            const auto samples = total_potential_samples(*grid, V, U, z);
            return to_numpy(std::span<const double>(samples));
        },
        py::arg("grid"), py::arg("lattice"), py::arg("random"), py::arg("z"));
    m.def("uniform_draw", &uniform_draw, py::arg("seed"), py::arg("index"));
    m.def(
        "monte_carlo",
        [](const py::function& solver, int realizations, std::uint64_t seed) {
            auto native = wrap_solver(solver);
            py::gil_scoped_release release;
            return monte_carlo(native, realizations, seed);
        },
        py::arg("solve_at"), py::arg("realizations"), py::arg("seed"));

    py::class_<CollocationResult>(m, "CollocationResult")
        .def_property_readonly("nodes",
                               [](const CollocationResult& r) {
                                   return to_numpy(std::span<const double>(r.nodes));
                               })
        .def_property_readonly("weights",
                               [](const CollocationResult& r) {
                                   return to_numpy(std::span<const double>(r.weights));
                               })
        .def("solution",
             [](const CollocationResult& r, int j) {
                 return r.solutions.at(static_cast<std::size_t>(j));
             })
        .def("stats", &CollocationResult::stats)
        .def("interpolate", &CollocationResult::interpolate, py::arg("z"));
    m.def(
        "stochastic_collocation",
        [](const py::function& solver, int n_nodes) {
            auto native = wrap_solver(solver);
            py::gil_scoped_release release;
            return stochastic_collocation(native, n_nodes);
        },
        py::arg("solve_at"), py::arg("n_nodes"));

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("lattice", &Scenario::lattice)
        .def_readwrite("random", &Scenario::random)
        .def_readwrite("sigma", &Scenario::sigma)
        .def_readwrite("epsilon", &Scenario::epsilon)
        .def_readwrite("dx_denominator", &Scenario::dx_denominator)
        .def_readwrite("final_time", &Scenario::final_time)
        .def_readwrite("dt", &Scenario::dt)
        .def_readwrite("snapshot_stride", &Scenario::snapshot_stride)
        .def_readwrite("gpc_order", &Scenario::gpc_order)
        .def_readwrite("quad_nodes", &Scenario::quad_nodes)
        .def_readwrite("bands", &Scenario::bands)
        .def_readwrite("methods", &Scenario::methods)
        .def_readwrite("mc_realizations", &Scenario::mc_realizations)
        .def_readwrite("mc_seed", &Scenario::mc_seed)
        .def_readwrite("sc_nodes", &Scenario::sc_nodes)
        .def_property_readonly("heavy", &Scenario::heavy)
        .def_property_readonly("points_per_cell", &Scenario::points_per_cell)
        .def("build_grid", [](const Scenario& sc) { return sc.build_grid(); })
        .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

    py::enum_<LatticeForm>(m, "LatticeForm")
        .value("Mathieu", LatticeForm::Mathieu)
        .value("KronigPenney", LatticeForm::KronigPenney)
        .value("WeakMathieu", LatticeForm::WeakMathieu)
        .value("Custom", LatticeForm::Custom);
    py::enum_<RandomForm>(m, "RandomForm")
        .value("HarmonicNoise", RandomForm::HarmonicNoise)
        .value("StepDecay", RandomForm::StepDecay)
        .value("LinearForce", RandomForm::LinearForce)
        .value("AndersonCosine", RandomForm::AndersonCosine)
        .value("Custom", RandomForm::Custom);

    m.def("builtin_scenarios", [] { return builtin_scenarios(); });
    m.def("builtin_scenario", [](const std::string& name) { return builtin_scenario(name); },
          py::arg("name"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("save_scenario", &save_scenario, py::arg("scenario"), py::arg("path"));

    m.def(
        "bdsg_stats",
        [](const Scenario& sc) {
            py::gil_scoped_release release;
            return bdsg_stats(sc);
        },
        py::arg("scenario"));
    m.def(
        "reference_stats",
        [](const Scenario& sc, double dt, int dx_denominator, const std::string& cache_dir) {
            py::gil_scoped_release release;
            return reference_stats(sc, dt, dx_denominator, cache_dir);
        },
        py::arg("scenario"), py::arg("candidate_dt"), py::arg("candidate_dx_denominator"),
        py::arg("cache_dir"));
    m.def(
        "run_sweep",
        [](const Scenario& sc, const std::string& axis, const std::string& cache_dir) {
            SweepResult result;
            {
                py::gil_scoped_release release;
                result = run_sweep(sc, sweep_axis_from_name(axis), cache_dir);
            }
            py::dict out;
            out["axis"] = std::string(to_name(result.axis));
            out["levels"] = result.levels;
            std::vector<double> mean, den;
            for (const auto& e : result.errors) {
                mean.push_back(e.delta_mean);
                den.push_back(e.delta_den);
            }
            out["delta_mean"] = mean;
            out["delta_den"] = den;
            out["order_mean"] = result.order_mean;
            out["order_den"] = result.order_den;
            return out;
        },
        py::arg("scenario"), py::arg("axis"), py::arg("cache_dir"));
    m.def(
        "compare_methods",
        [](const Scenario& sc, const std::string& cache_dir) {
            std::vector<CompareRow> rows;
            {
                py::gil_scoped_release release;
                rows = compare_methods(sc, cache_dir);
            }
            py::list out;
            for (const auto& row : rows) {
                py::dict d;
                d["method"] = row.method;
                d["delta_mean"] = row.error.delta_mean;
                d["delta_den"] = row.error.delta_den;
                d["wall_ms"] = row.wall_ms;
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("cache_dir"));
    m.def(
        "conservation_run",
        [](const Scenario& sc) {
            ConservationSeries series;
            {
                py::gil_scoped_release release;
                series = conservation_run(sc);
            }
            py::dict out;
            out["t"] = series.times;
            out["mass"] = series.mass;
            out["energy"] = series.energy;
            out["second_moment"] = series.second_moment;
            return out;
        },
        py::arg("scenario"));
    m.def(
        "localization",
        [](const Scenario& sc, const std::vector<double>& sigmas) {
            LocalizationResult result;
            {
                py::gil_scoped_release release;
                result = localization(sc, sigmas);
            }
            py::dict out;
            out["sigmas"] = result.sigmas;
            out["t"] = result.times;
            out["moments"] = result.moments;
            out["final_density"] = result.final_density;
            out["coefficient_norms"] = result.coefficient_norms;
            out["late_slopes"] = result.late_slopes;
            return out;
        },
        py::arg("scenario"), py::arg("sigmas"));
}
