#include <doctest.h>

#include <cmath>
#include <vector>

#include "curveflow/energy.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/flows.hpp"
#include "curveflow/init.hpp"
#include "curveflow/surface.hpp"

using namespace curveflow;

namespace {

struct TorusSetup {
    HermiteCurve u0;
    BoundaryCondition bc;
    LevelSetSurface S = torus(2.0, 1.0);
    SparseMat M, A;
    double h = 0.0;
};

TorusSetup torus_setup(int J) {
    TorusSetup ts;
    const ParametricCurve seed = torus_seed(1, 2, 2.0, 1.0);
    HermiteCurve u = reparametrize_arclength(seed, J);
    ts.bc.kind = BcKind::clamped_start;
    ts.u0 = project_to_admissible(u, ts.S, ts.bc);
    ts.M = mass_matrix(ts.u0.partition);
    ts.A = bending_matrix(ts.u0.partition);
    ts.h = ts.u0.partition.mesh_size();
    return ts;
}

}  // namespace

TEST_CASE("bending step: energy identity, telescoping tangents, constraint kernel") {
    TorusSetup ts = torus_setup(40);
    const double tau = ts.h;
    const QuadratureRule rule = gauss_rule(4);
    const double E0 = bending_energy(ts.u0, rule);
    const double tol = 1e-8 * (1.0 + E0);

    const int J1 = ts.u0.partition.node_count();
    Eigen::VectorXd accum = Eigen::VectorXd::Zero(J1);  // sum_l |d_l'(z_j)|^2

    HermiteCurve u = ts.u0;
    kkt::Solver solver;
    double prev_energy = E0;
    for (int k = 1; k <= 30; ++k) {
        const ConstraintSystem cs = linearized_constraints(u, ts.S, ts.bc);
        const StepResult step = step_bending(u, ts.S, ts.bc, tau, ts.M, ts.A, &solver);

        // u_next = u_prev + tau d
        CHECK((step.u_next.dofs - (u.dofs + tau * step.d)).norm() <= 1e-13 * u.dofs.norm());

        // d_t u lies in F_h[u_prev]
        CHECK(cs.max_violation(step.d) <= 1e-9 * std::max(1.0, step.d.norm()));

        // || d ||_*^2 + d_t (1/2)||u''||^2 + (tau/2) ||d''||^2 = 0
        const double dMd = step.d.dot(ts.M * step.d);
        const double dAd = step.d.dot(ts.A * step.d);
        const double Eprev = 0.5 * u.dofs.dot(ts.A * u.dofs);
        const double Enext = 0.5 * step.u_next.dofs.dot(ts.A * step.u_next.dofs);
        const double residual = dMd + (Enext - Eprev) / tau + 0.5 * tau * dAd;
        CHECK(std::abs(residual) <= tol);

        // exact nodal tangent identity |u'(z_j)|^2 = 1 + tau^2 sum_l |d_l'(z_j)|^2
        for (int j = 0; j < J1; ++j)
            accum[j] += step.d.segment<3>(6 * j + 3).squaredNorm();
        for (int j = 0; j < J1; ++j) {
            const double lhs = step.u_next.tangent(j).squaredNorm();
            CHECK(std::abs(lhs - 1.0 - tau * tau * accum[j]) <= 1e-9);
        }

        const double energy = bending_energy(step.u_next, rule);
        CHECK(energy <= prev_energy + tol);
        prev_energy = energy;
        u = step.u_next;
    }
}

TEST_CASE("bending step: nodally affine admissible chord is stationary") {
    // two sphere points joined by a straight segment: A u = 0 exactly
    const Vec3 p0(1.0, 0.0, 0.0), p1(0.0, 1.0, 0.0);
    const double len = (p1 - p0).norm();
    const Partition part{len, false, {0.0, len}};
    HermiteCurve u(part);
    const Vec3 dir = (p1 - p0) / len;
    u.set_value(0, p0);
    u.set_value(1, p1);
    u.set_tangent(0, dir);
    u.set_tangent(1, dir);

    const LevelSetSurface S = sphere();
    const BoundaryCondition bc{BcKind::clamped_start, {}};
    const SparseMat M = mass_matrix(part);
    const SparseMat A = bending_matrix(part);
    const StepResult step = step_bending(u, S, bc, 0.1, M, A);
    CHECK(step.d.norm() <= 1e-12);
    CHECK((step.u_next.dofs - u.dofs).norm() <= 1e-12);
}

TEST_CASE("geodesic step: gamma = 0 coincides with the bending step bitwise") {
    TorusSetup ts = torus_setup(24);
    const double tau = ts.h;
    const QuadratureRule rule = gauss_rule(4);
    const StepResult bend = step_bending(ts.u0, ts.S, ts.bc, tau, ts.M, ts.A);
    const StepResult geo = step_geodesic(ts.u0, ts.S, ts.bc, tau, 0.0, ts.M, ts.A, rule);
    CHECK(bend.d == geo.d);
    CHECK(bend.u_next.dofs == geo.u_next.dofs);
}

TEST_CASE("geodesic flow: gamma = 1-h stays monotone on the torus run") {
    TorusSetup ts = torus_setup(40);
    FlowConfig cfg;
    cfg.kind = FlowKind::geodesic;
    cfg.tau = ts.h;
    cfg.gamma = 1.0 - ts.h;
    cfg.max_steps = 60;
    cfg.stop_tol = 0.0;
    const FlowResult res = run(cfg, ts.u0, ts.S, ts.bc);
    CHECK(res.trace.energy_monotone);
    CHECK(res.trace.accepted_steps == 60);
    for (size_t i = 1; i < res.trace.records.size(); ++i)
        CHECK(res.trace.records[i].energy <=
              res.trace.records[i - 1].energy + 1e-12 * (1.0 + std::abs(res.trace.records[i].energy)));
}

TEST_CASE("indentation step: convex-concave splitting decays without step-size bound") {
    const double delta = 0.25;
    const int J = 40;
    HermiteCurve u0 = random_periodic_admissible(3, J, delta);
    const Partition& part = u0.partition;
    const double h = part.mesh_size();
    const SparseMat M = mass_matrix(part);
    const SparseMat A = bending_matrix(part);
    const PenaltyOperators pen = penalty_operators(part, delta);

    // tau far above the mesh scale still dissipates (unconditional stability)
    for (double tau : {h, 10.0 * h}) {
        HermiteCurve u = u0;
        kkt::Solver solver;
        const double eps = h * h;
        double prev = indentation_energy(u, delta, eps).total;
        const double tol = 1e-8 * (1.0 + prev);
        for (int k = 0; k < 60; ++k) {
            const StepResult step = step_indentation(u, tau, eps, delta, M, A, pen, &solver);
            const double cur = indentation_energy(step.u_next, delta, eps).total;
            CHECK(cur <= prev + tol);
            prev = cur;
            u = step.u_next;
        }
    }
}

TEST_CASE("indentation step: relaxed configuration above the obstacle stays put") {
    const double delta = 0.1;
    const int J = 32;
    HermiteCurve u0 = random_periodic_admissible(1, J, delta);
    const Partition& part = u0.partition;
    const double h = part.mesh_size();

    FlowConfig cfg;
    cfg.kind = FlowKind::indentation;
    cfg.tau = h;
    cfg.eps = h * h;
    cfg.delta = delta;
    cfg.max_steps = 4000;
    cfg.stop_tol = 1e-10;
    const FlowResult res = run(cfg, u0, sphere(), {BcKind::periodic, {}});
    REQUIRE(res.trace.termination_reason == "stationary");

    const SparseMat M = mass_matrix(part);
    const SparseMat A = bending_matrix(part);
    const PenaltyOperators pen = penalty_operators(part, delta);
    const StepResult extra =
        step_indentation(res.final, cfg.tau, cfg.eps, cfg.delta, M, A, pen);
    CHECK(std::sqrt(extra.d.dot(M * extra.d)) <= 1e-9);
}

TEST_CASE("run: stop conditions, trace shape, snapshot schedule") {
    TorusSetup ts = torus_setup(40);

    FlowConfig huge;
    huge.kind = FlowKind::bending;
    huge.tau = ts.h;
    huge.max_steps = 500;
    huge.stop_tol = 1e9;
    const FlowResult one = run(huge, ts.u0, ts.S, ts.bc);
    CHECK(one.trace.accepted_steps == 1);
    CHECK(one.trace.records.size() == 2);  // initial state + one step
    CHECK(one.trace.termination_reason == "stationary");

    FlowConfig fig;
    fig.kind = FlowKind::bending;
    fig.tau = ts.h;
    fig.max_steps = 160;
    fig.stop_tol = 0.0;
    fig.snapshot_stride = 20;
    const FlowResult res = run(fig, ts.u0, ts.S, ts.bc);
    CHECK(res.trace.termination_reason == "max-steps");
    CHECK(res.trace.accepted_steps == 160);
    CHECK(res.trace.records.size() == 161);
    std::vector<int> ids;
    for (const auto& [k, snap] : res.snapshots) ids.push_back(k);
    REQUIRE(ids.size() == 9);
    for (int i = 0; i < 9; ++i) CHECK(ids[i] == 20 * i);

    // dissipation ledger: I[u^K] + sum tau ||d||^2 <= I[u^0] + tol
    const QuadratureRule rule = gauss_rule(4);
    const double E0 = bending_energy(ts.u0, rule);
    const double EK = bending_energy(res.final, rule);
    CHECK(EK + res.trace.cumulative_dissipation <= E0 + 1e-8 * (1.0 + E0));

    // inadmissible initial data is rejected
    HermiteCurve bad = ts.u0;
    bad.set_tangent(3, 1.1 * ts.u0.tangent(3));
    CHECK_THROWS_AS(run(fig, bad, ts.S, ts.bc), InvalidInitialState);
}
