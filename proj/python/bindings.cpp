#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curveflow/energy.hpp"
#include "curveflow/experiment.hpp"
#include "curveflow/flows.hpp"
#include "curveflow/init.hpp"

namespace py = pybind11;
using namespace curveflow;

namespace {

BcKind bc_from_name(const std::string& name) {
    if (name == "clamped-start") return BcKind::clamped_start;
    if (name == "both-ends-fixed") return BcKind::both_ends_fixed;
    if (name == "periodic") return BcKind::periodic;
    throw std::invalid_argument("unknown bc: " + name);
}

FlowKind flow_from_name(const std::string& name) {
    if (name == "bending") return FlowKind::bending;
    if (name == "geodesic") return FlowKind::geodesic;
    if (name == "indentation") return FlowKind::indentation;
    throw std::invalid_argument("unknown flow: " + name);
}

}  // namespace

PYBIND11_MODULE(_curveflow, m) {
    m.doc() = "C1 Hermite curve evolution kernels";

    py::class_<Partition>(m, "Partition")
        .def_readonly("L", &Partition::L)
        .def_readonly("periodic", &Partition::periodic)
        .def_readonly("nodes", &Partition::nodes)
        .def_property_readonly("element_count", &Partition::element_count)
        .def_property_readonly("node_count", &Partition::node_count)
        .def_property_readonly("dof_count", &Partition::dof_count)
        .def_property_readonly("mesh_size", &Partition::mesh_size);
    m.def("make_uniform_partition", &make_uniform_partition, py::arg("L"), py::arg("J"),
          py::arg("periodic"));
    m.def("dof_index", &dof_index, py::arg("node"), py::arg("slope"), py::arg("component"));

    py::class_<HermiteCurve>(m, "HermiteCurve")
        .def(py::init<Partition>())
        .def_readonly("partition", &HermiteCurve::partition)
        .def_property(
            "dofs", [](const HermiteCurve& u) { return u.dofs; },
            [](HermiteCurve& u, const Eigen::VectorXd& d) {
                if (d.size() != u.dofs.size()) throw std::invalid_argument("dof size mismatch");
                u.dofs = d;
            })
        .def("value", &HermiteCurve::value)
        .def("tangent", &HermiteCurve::tangent)
        .def("set_value", &HermiteCurve::set_value)
        .def("set_tangent", &HermiteCurve::set_tangent)
        .def("eval", &HermiteCurve::eval, py::arg("x"), py::arg("order") = 0);

    py::class_<LevelSetSurface>(m, "LevelSetSurface")
        .def_readonly("name", &LevelSetSurface::name)
        .def("phi", [](const LevelSetSurface& S, const Vec3& p) { return S.phi(p); })
        .def("grad", [](const LevelSetSurface& S, const Vec3& p) { return S.grad(p); })
        .def("normal", [](const LevelSetSurface& S, const Vec3& p) { return normal(S, p); })
        .def("project", [](const LevelSetSurface& S, const Vec3& p) { return project(S, p); });
    m.def("sphere", &sphere);
    m.def("torus", &torus, py::arg("R"), py::arg("r"));

    py::class_<ParametricCurve>(m, "ParametricCurve")
        .def_readonly("domain_length", &ParametricCurve::domain_length)
        .def("value", [](const ParametricCurve& c, double x) { return c.value(x); })
        .def("deriv", [](const ParametricCurve& c, double x) { return c.deriv(x); });
    m.def("torus_seed", &torus_seed, py::arg("a"), py::arg("b"), py::arg("R"), py::arg("r"));
    m.def("reparametrize_arclength", &reparametrize_arclength, py::arg("curve"), py::arg("J"));

    m.def(
        "project_to_admissible",
        [](const HermiteCurve& u, const LevelSetSurface& S, const std::string& bc,
           std::optional<double> delta) {
            BoundaryCondition cond{bc_from_name(bc), {}};
            HermiteCurve out = project_to_admissible(u, S, cond, delta);
            return py::make_tuple(out, cond.target);
        },
        py::arg("u"), py::arg("surface"), py::arg("bc") = "periodic",
        py::arg("delta") = std::nullopt);
    m.def("random_periodic_admissible", &random_periodic_admissible, py::arg("seed"),
          py::arg("J"), py::arg("delta"), py::arg("amplitude") = 0.3);
    m.def("single_fold_biased_admissible", &single_fold_biased_admissible, py::arg("seed"),
          py::arg("J"), py::arg("delta"));

    m.def("mass_matrix",
          [](const Partition& p) { return Eigen::MatrixXd(mass_matrix(p)); });
    m.def("bending_matrix",
          [](const Partition& p) { return Eigen::MatrixXd(bending_matrix(p)); });

    m.def(
        "bending_energy",
        [](const HermiteCurve& u, int quadrature_points) {
            return bending_energy(u, gauss_rule(quadrature_points));
        },
        py::arg("u"), py::arg("quadrature_points") = 4);
    m.def(
        "indentation_energy",
        [](const HermiteCurve& u, double delta, double eps) {
            IndentationEnergy e = indentation_energy(u, delta, eps);
            py::dict d;
            d["bending"] = e.bending;
            d["penalty"] = e.penalty;
            d["total"] = e.total;
            d["reported"] = e.total + e.report_offset;
            return d;
        },
        py::arg("u"), py::arg("delta"), py::arg("eps"));
    m.def("constraint_violations", [](const HermiteCurve& u, const LevelSetSurface& S) {
        ConstraintViolations v = constraint_violations(u, S);
        return py::make_tuple(v.arclength, v.surface);
    });
    m.def("penetration_norm", &penetration_norm, py::arg("u"), py::arg("delta"));

    m.def(
        "run_flow",
        [](const HermiteCurve& u0, const LevelSetSurface& S, const std::string& bc,
           const std::string& kind, double tau, double gamma, double eps, double delta,
           int max_steps, double stop_tol, int snapshot_stride) {
            BoundaryCondition cond{bc_from_name(bc), {}};
            if (cond.kind == BcKind::clamped_start) {
                cond.target.resize(6);
                cond.target << u0.value(0), u0.tangent(0);
            } else if (cond.kind == BcKind::both_ends_fixed) {
                cond.target.resize(6);
                cond.target << u0.value(0), u0.value(u0.partition.node_count() - 1);
            }
            FlowConfig fc;
            fc.kind = flow_from_name(kind);
            fc.tau = tau;
            fc.gamma = gamma;
            fc.eps = eps;
            fc.delta = delta;
            fc.max_steps = max_steps;
            fc.stop_tol = stop_tol;
            fc.snapshot_stride = snapshot_stride;
            FlowResult res = run(fc, u0, S, cond);
            py::dict out;
            out["final"] = res.final;
            out["termination_reason"] = res.trace.termination_reason;
            out["energy_monotone"] = res.trace.energy_monotone;
            out["accepted_steps"] = res.trace.accepted_steps;
            out["solver_failed"] = res.solver_failed;
            std::vector<double> energies;
            for (const TraceRecord& r : res.trace.records) energies.push_back(r.energy);
            out["energies"] = energies;
            const Diagnostics& d = res.trace.records.back().diag;
            out["final_diagnostics"] =
                py::dict(py::arg("bending") = d.bending, py::arg("penalty") = d.penalty,
                         py::arg("indentation") = d.indentation_total,
                         py::arg("arc_violation") = d.arclength_violation,
                         py::arg("surface_violation") = d.surface_violation,
                         py::arg("penetration") = d.penetration, py::arg("step_norm") = d.step_norm);
            return out;
        },
        py::arg("u0"), py::arg("surface"), py::arg("bc"), py::arg("kind"), py::arg("tau"),
        py::arg("gamma") = 0.0, py::arg("eps") = 0.0, py::arg("delta") = 0.0,
        py::arg("max_steps") = 100, py::arg("stop_tol") = -1.0, py::arg("snapshot_stride") = 50);

    m.def("run_experiment", &run_experiment, py::arg("config_path"));
}
