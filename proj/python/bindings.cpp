#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swfem/diagnostics.hpp"
#include "swfem/driver.hpp"
#include "swfem/steady_state.hpp"
#include "swfem/version.hpp"

namespace py = pybind11;
using namespace swfem;

namespace {

py::array_t<double> as_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

Constraint constraint_from(const std::string& s) {
    if (s == "free") return Constraint::Free;
    if (s == "zero_left") return Constraint::ZeroLeft;
    if (s == "zero_right") return Constraint::ZeroRight;
    if (s == "zero_both") return Constraint::ZeroBoth;
    if (s == "periodic") return Constraint::Periodic;
    throw std::invalid_argument("unknown constraint '" + s + "'");
}

py::dict table_dict(const RateTable& t) {
    py::dict d;
    py::array_t<long> n(static_cast<py::ssize_t>(t.n_values.size()));
    auto nv = n.mutable_unchecked<1>();
    for (std::size_t i = 0; i < t.n_values.size(); ++i)
        nv(static_cast<py::ssize_t>(i)) = t.n_values[i];
    d["n"] = n;
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        std::vector<double> errs, rates;
        for (std::size_t i = 0; i < t.errors.size(); ++i) {
            errs.push_back(t.errors[i][j]);
            rates.push_back(t.rates[i][j]);
        }
        d[("err_" + t.columns[j]).c_str()] = as_array(errs);
        d[("rate_" + t.columns[j]).c_str()] = as_array(rates);
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Galerkin finite element methods for the 1D shallow water equations "
              "over variable bottom";
    m.attr("__version__") = std::string(kVersion);

    py::class_<Mesh>(m, "Mesh")
        .def_static("uniform", &Mesh::uniform, py::arg("n"), py::arg("left") = 0.0,
                    py::arg("right") = 1.0)
        .def_static("perturbed", &Mesh::perturbed, py::arg("n"), py::arg("left"), py::arg("right"),
                    py::arg("amplitude"), py::arg("seed"))
        .def_property_readonly("nodes", [](const Mesh& me) { return as_array(me.nodes()); })
        .def_property_readonly("h_max", &Mesh::h_max)
        .def_property_readonly("n_elements", &Mesh::n_elements);

    py::class_<FemSpace, std::shared_ptr<FemSpace>>(m, "FemSpace")
        .def(py::init([](const Mesh& mesh, int order, int continuity, const std::string& c) {
                 return std::make_shared<FemSpace>(mesh, order, continuity, constraint_from(c));
             }),
             py::arg("mesh"), py::arg("order"), py::arg("continuity"),
             py::arg("constraint") = "free")
        .def_property_readonly("dim", &FemSpace::dim)
        .def_property_readonly("order", &FemSpace::order)
        .def_property_readonly("continuity", &FemSpace::continuity)
        .def("greville_points", [](const FemSpace& s) { return as_array(s.greville_points()); })
        .def("eval",
             [](const FemSpace& s, const std::vector<double>& coef, py::array_t<double> x,
                int deriv) {
                 auto xs = x.unchecked<1>();
                 py::array_t<double> out(x.size());
                 auto o = out.mutable_unchecked<1>();
                 for (py::ssize_t i = 0; i < xs.shape(0); ++i) o(i) = s.eval(coef, xs(i), deriv);
                 return out;
             },
             py::arg("coef"), py::arg("x"), py::arg("deriv") = 0);

    m.def("gauss_rule", [](int s) {
        const QuadratureRule q = gauss_rule(s);
        return py::make_tuple(as_array(q.nodes), as_array(q.weights));
    }, py::arg("s"), "Gauss-Legendre nodes and weights on [-1, 1]");

    m.def("l2_project",
          [](std::shared_ptr<FemSpace> space, const std::function<double(double)>& f, int s) {
              auto cv = l2_project(space, f, gauss_rule(s));
              return as_array(cv.coef);
          },
          py::arg("space"), py::arg("f"), py::arg("s"),
          "coefficients of the L2 projection of f");

    m.def("interpolate",
          [](std::shared_ptr<FemSpace> space, const std::function<double(double)>& f) {
              return as_array(interpolate(space, f).coef);
          },
          py::arg("space"), py::arg("f"), "coefficients of the Greville interpolant of f");

    m.def("steady_profile",
          [](const std::string& config_json, int samples) {
              const ExperimentConfig cfg = parse_experiment(config_json);
              const FlowBranch branch = cfg.problem.formulation == Formulation::SupercriticalChar
                                            ? FlowBranch::Supercritical
                                            : FlowBranch::Subcritical;
              auto p = solve_steady(cfg.problem.bathymetry, cfg.problem.eta0, cfg.problem.u0,
                                    cfg.problem.g, branch);
              std::vector<double> x(static_cast<std::size_t>(samples)), eta(x.size()), u(x.size());
              for (int i = 0; i < samples; ++i) {
                  x[static_cast<std::size_t>(i)] =
                      cfg.problem.domain_left + (cfg.problem.domain_right - cfg.problem.domain_left) *
                                                    i / (samples - 1);
                  eta[static_cast<std::size_t>(i)] = p->eta(x[static_cast<std::size_t>(i)]);
                  u[static_cast<std::size_t>(i)] = p->u(x[static_cast<std::size_t>(i)]);
              }
              py::dict d;
              d["x"] = as_array(x);
              d["eta"] = as_array(eta);
              d["u"] = as_array(u);
              d["discharge"] = p->discharge();
              d["head"] = p->head();
              return d;
          },
          py::arg("config_json"), py::arg("samples") = 501,
          "analytic steady profile for the configured problem");

    m.def("run_simulation",
          [](const std::string& config_json) {
              const SimulationOutput out = run_simulation(parse_experiment(config_json));
              py::dict d;
              d["x"] = as_array(out.x);
              d["bathymetry"] = as_array(out.bathymetry);
              d["steady_time"] = out.steady_time;
              d["steps"] = out.steps;
              py::list snaps;
              for (const ProfileSeries& ps : out.snapshots) {
                  py::dict s;
                  s["t"] = ps.t;
                  s["eta"] = as_array(ps.eta);
                  s["u"] = as_array(ps.u);
                  snaps.append(s);
              }
              d["snapshots"] = snaps;
              return d;
          },
          py::arg("config_json"), "advance the configured experiment and sample the profiles");

    m.def("converge",
          [](const std::string& config_json) {
              return table_dict(converge_experiment(parse_experiment(config_json)));
          },
          py::arg("config_json"), "mesh-refinement error study");

    m.def("wellbalance",
          [](const std::string& config_json) {
              py::list rows;
              for (const WellBalanceRow& r : wellbalance_experiment(parse_experiment(config_json))) {
                  py::dict d;
                  d["source"] = r.source;
                  d["s"] = r.s;
                  d["l2_drift"] = r.l2_drift;
                  d["linf_drift"] = r.linf_drift;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("config_json"), "rest-state drift study for the balance-law form");

    m.def("steady_preservation",
          [](const std::string& config_json) {
              const SteadyDrift d = steady_experiment(parse_experiment(config_json));
              py::dict out;
              out["eta_l2"] = d.eta_l2;
              out["u_l2"] = d.u_l2;
              return out;
          },
          py::arg("config_json"), "drift from the projected analytic steady profile");
}
