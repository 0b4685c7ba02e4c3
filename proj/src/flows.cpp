#include "curveflow/flows.hpp"

#include <cmath>

#include "curveflow/errors.hpp"

namespace curveflow {

namespace {

Diagnostics base_diagnostics(const HermiteCurve& u, const LevelSetSurface& S,
                             const QuadratureRule& quad) {
    Diagnostics diag;
    diag.bending = bending_energy(u, quad);
    const ConstraintViolations v = constraint_violations(u, S);
    diag.arclength_violation = v.arclength;
    diag.surface_violation = v.surface;
    return diag;
}

StepResult advance(const HermiteCurve& u_prev, const LevelSetSurface& S,
                   const BoundaryCondition& bc, double tau, const SparseMat& K,
                   const Eigen::VectorXd& f, const SparseMat& M, kkt::Solver* solver) {
    kkt::SaddleSystem sys;
    sys.K = K;
    sys.B = linearized_constraints(u_prev, S, bc);
    sys.f = f;
    kkt::Result sol = solver ? solver->solve(sys) : kkt::solve(sys);

    StepResult out;
    out.u_next = u_prev;
    out.u_next.dofs += tau * sol.d;
    out.d = std::move(sol.d);
    out.dropped_rows = std::move(sol.dropped_rows);
    out.diag.step_norm = std::sqrt(std::max(out.d.dot(M * out.d), 0.0));
    return out;
}

}  // namespace

StepResult step_bending(const HermiteCurve& u_prev, const LevelSetSurface& S,
                        const BoundaryCondition& bc, double tau, const SparseMat& M,
                        const SparseMat& A, kkt::Solver* solver) {
    const SparseMat K = M + tau * A;
    const Eigen::VectorXd f = -(A * u_prev.dofs);
    StepResult out = advance(u_prev, S, bc, tau, K, f, M, solver);
    const QuadratureRule quad = gauss_rule(4);
    const Diagnostics base = base_diagnostics(out.u_next, S, quad);
    out.diag.bending = base.bending;
    out.diag.arclength_violation = base.arclength_violation;
    out.diag.surface_violation = base.surface_violation;
    return out;
}

StepResult step_geodesic(const HermiteCurve& u_prev, const LevelSetSurface& S,
                         const BoundaryCondition& bc, double tau, double gamma,
                         const SparseMat& M, const SparseMat& A, const QuadratureRule& quadrature,
                         bool midpoint_normal, kkt::Solver* solver) {
    const SparseMat K = M + tau * A;
    Eigen::VectorXd f = -(A * u_prev.dofs);
    if (gamma != 0.0) f += geodesic_rhs(u_prev, S, gamma, quadrature, midpoint_normal);
    StepResult out = advance(u_prev, S, bc, tau, K, f, M, solver);
    const Diagnostics base = base_diagnostics(out.u_next, S, quadrature);
    out.diag.bending = base.bending;
    out.diag.arclength_violation = base.arclength_violation;
    out.diag.surface_violation = base.surface_violation;
    out.diag.geodesic_gamma =
        geodesic_energy(out.u_next, S, gamma, quadrature, midpoint_normal);
    return out;
}

StepResult step_indentation(const HermiteCurve& u_prev, double tau, double eps, double delta,
                            const SparseMat& M, const SparseMat& A, const PenaltyOperators& pen,
                            kkt::Solver* solver) {
    if (!(eps > 0.0)) throw std::invalid_argument("step_indentation: eps must be positive");
    static const LevelSetSurface S2 = sphere();
    static const BoundaryCondition periodic{BcKind::periodic, {}};

    const SparseMat K = M + tau * A + (tau / eps) * pen.D;
    const int n = u_prev.partition.node_count();
    Eigen::VectorXd u3(n);
    for (int j = 0; j < n; ++j) u3[j] = u_prev.value(j)[2];
    // (s-delta) - (s-delta)_+ = (s-delta)_-
    Eigen::VectorXd f = -(A * u_prev.dofs);
    f += (1.0 / eps) * (pen.residual(u3) - pen.D * u_prev.dofs +
                        delta * (pen.D * Eigen::VectorXd::Ones(u_prev.dofs.size())));

    StepResult out = advance(u_prev, S2, periodic, tau, K, f, M, solver);
    const QuadratureRule quad = gauss_rule(4);
    const Diagnostics base = base_diagnostics(out.u_next, S2, quad);
    out.diag.bending = base.bending;
    out.diag.arclength_violation = base.arclength_violation;
    out.diag.surface_violation = base.surface_violation;
    const IndentationEnergy ind = indentation_energy(out.u_next, delta, eps);
    out.diag.penalty = ind.penalty;
    out.diag.indentation_total = ind.total;
    out.diag.penetration = penetration_norm(out.u_next, delta);
    return out;
}

FlowResult run(const FlowConfig& config, const HermiteCurve& u0, const LevelSetSurface& S,
               const BoundaryCondition& bc) {
    if (!(config.tau > 0.0)) throw std::invalid_argument("run: tau must be positive");
    const QuadratureRule quad = gauss_rule(config.quadrature_points);

    const ConstraintViolations v0 = constraint_violations(u0, S);
    if (v0.arclength > 1e-8 || v0.surface > 1e-8)
        throw InvalidInitialState("run: initial curve not nodally admissible (arclength " +
                                  std::to_string(v0.arclength) + ", surface " +
                                  std::to_string(v0.surface) + ")");

    const SparseMat M = mass_matrix(u0.partition);
    const SparseMat A = bending_matrix(u0.partition);
    PenaltyOperators pen;
    if (config.kind == FlowKind::indentation)
        pen = penalty_operators(u0.partition, config.delta);

    auto tracked_energy = [&](const HermiteCurve& u, Diagnostics& diag) -> double {
        switch (config.kind) {
            case FlowKind::bending:
                return diag.bending;
            case FlowKind::geodesic:
                return diag.geodesic_gamma;
            case FlowKind::indentation:
                return diag.indentation_total;
        }
        return diag.bending;
    };

    FlowResult result;
    result.final = u0;
    kkt::Solver solver;

    Diagnostics diag0 = base_diagnostics(u0, S, quad);
    if (config.kind == FlowKind::geodesic)
        diag0.geodesic_gamma = geodesic_energy(u0, S, config.gamma, quad, config.midpoint_normal);
    if (config.kind == FlowKind::indentation) {
        const IndentationEnergy ind = indentation_energy(u0, config.delta, config.eps);
        diag0.penalty = ind.penalty;
        diag0.indentation_total = ind.total;
        diag0.penetration = penetration_norm(u0, config.delta);
    }
    const double e0 = tracked_energy(u0, diag0);
    const double stop_tol = config.stop_tol >= 0.0 ? config.stop_tol : 1e-8 * (1.0 + e0);

    result.trace.records.push_back(TraceRecord{0, 0.0, e0, diag0});
    result.snapshots.emplace_back(0, u0);
    result.trace.termination_reason = "max-steps";

    double energy_prev = e0;
    for (int k = 1; k <= config.max_steps; ++k) {
        StepResult step;
        try {
            switch (config.kind) {
                case FlowKind::bending:
                    step = step_bending(result.final, S, bc, config.tau, M, A, &solver);
                    break;
                case FlowKind::geodesic:
                    step = step_geodesic(result.final, S, bc, config.tau, config.gamma, M, A, quad,
                                         config.midpoint_normal, &solver);
                    break;
                case FlowKind::indentation:
                    step = step_indentation(result.final, config.tau, config.eps, config.delta, M,
                                            A, pen, &solver);
                    break;
            }
        } catch (const StepSolveFailure& err) {
            result.solver_failed = true;
            result.error = err.what();
            result.trace.termination_reason = "step-solve-failure";
            return result;
        }

        result.final = std::move(step.u_next);
        if (!step.dropped_rows.empty()) ++result.trace.dropped_row_events;

        const double energy = tracked_energy(result.final, step.diag);
        if (energy > energy_prev + 1e-12 * (1.0 + std::abs(energy_prev)))
            result.trace.energy_monotone = false;
        energy_prev = energy;

        result.trace.records.push_back(TraceRecord{k, k * config.tau, energy, step.diag});
        result.trace.cumulative_dissipation += config.tau * step.diag.step_norm * step.diag.step_norm;
        result.trace.accepted_steps = k;

        if (config.snapshot_stride > 0 && k % config.snapshot_stride == 0)
            result.snapshots.emplace_back(k, result.final);

        if (step.diag.step_norm <= stop_tol) {
            result.trace.termination_reason = "stationary";
            break;
        }
    }

    if (result.snapshots.empty() || result.snapshots.back().first != result.trace.accepted_steps)
        result.snapshots.emplace_back(result.trace.accepted_steps, result.final);
    return result;
}

}  // namespace curveflow
