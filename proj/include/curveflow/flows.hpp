#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curveflow/assembly.hpp"
#include "curveflow/energy.hpp"
#include "curveflow/kkt.hpp"

namespace curveflow {

enum class FlowKind { bending, geodesic, indentation };

struct FlowConfig {
    FlowKind kind = FlowKind::bending;
    double tau = 0.0;
    double gamma = 0.0;    // geodesic stabilization weight
    double eps = 0.0;      // indentation penalty parameter
    double delta = 0.0;    // obstacle height
    int max_steps = 1000;
    double stop_tol = -1.0;  // on ||d_t u||_*; < 0 selects 1e-8*(1 + E[u0])
    int quadrature_points = 4;
    bool midpoint_normal = true;
    int snapshot_stride = 20;
};

struct StepResult {
    HermiteCurve u_next;
    Eigen::VectorXd d;  // d_t u
    Diagnostics diag;
    std::vector<std::string> dropped_rows;
};

StepResult step_bending(const HermiteCurve& u_prev, const LevelSetSurface& S,
                        const BoundaryCondition& bc, double tau, const SparseMat& M,
                        const SparseMat& A, kkt::Solver* solver = nullptr);

StepResult step_geodesic(const HermiteCurve& u_prev, const LevelSetSurface& S,
                         const BoundaryCondition& bc, double tau, double gamma,
                         const SparseMat& M, const SparseMat& A, const QuadratureRule& quadrature,
                         bool midpoint_normal = true, kkt::Solver* solver = nullptr);

// Sphere obstacle flow; the surface is fixed to S^2 and the bc to periodic.
StepResult step_indentation(const HermiteCurve& u_prev, double tau, double eps, double delta,
                            const SparseMat& M, const SparseMat& A, const PenaltyOperators& pen,
                            kkt::Solver* solver = nullptr);

struct TraceRecord {
    int k = 0;
    double t = 0.0;
    double energy = 0.0;  // the flow's tracked objective
    Diagnostics diag;
};

struct FlowTrace {
    std::vector<TraceRecord> records;  // records[0] is the initial state
    double cumulative_dissipation = 0.0;  // sum of tau * ||d_t u||_*^2
    int accepted_steps = 0;
    std::string termination_reason;
    bool energy_monotone = true;
    int dropped_row_events = 0;
};

struct FlowResult {
    HermiteCurve final;
    FlowTrace trace;
    std::vector<std::pair<int, HermiteCurve>> snapshots;
    bool solver_failed = false;
    std::string error;
};

FlowResult run(const FlowConfig& config, const HermiteCurve& u0, const LevelSetSurface& S,
               const BoundaryCondition& bc);

}  // namespace curveflow
