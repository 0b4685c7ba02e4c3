#pragma once

#include <Eigen/Sparse>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/mesh.hpp"
#include "curveflow/surface.hpp"

namespace curveflow {

using SparseMat = Eigen::SparseMatrix<double>;

enum class BcKind { clamped_start, both_ends_fixed, periodic };

struct BoundaryCondition {
    BcKind kind = BcKind::periodic;
    // affine targets l_bc on the state (recorded from the initial curve);
    // the linearized rows in F_h are always homogeneous
    Eigen::VectorXd target;
};

struct ConstraintRow {
    std::vector<int> idx;
    std::vector<double> coef;
    std::string label;

    double norm() const;
    double dot(const Eigen::VectorXd& v) const;
};

struct ConstraintSystem {
    int ndof = 0;
    std::vector<ConstraintRow> rows;
    std::vector<std::string> warnings;  // dropped zero-norm rows etc.

    SparseMat matrix() const;  // rows stacked into a sparse (m x ndof) matrix
    double max_violation(const Eigen::VectorXd& v) const;
};

// Consistent L^2 mass matrix of the vector Hermite space.
SparseMat mass_matrix(const Partition& partition);

// Bending stiffness: x^T A y = integral of u''.v''.
SparseMat bending_matrix(const Partition& partition);

// Linearization of the nodal admissibility conditions at u_hat: one surface
// row (phi'(u(z_j)) on value dofs) and one tangent row (u'(z_j) on slope
// dofs) per node, plus the boundary-condition rows.
ConstraintSystem linearized_constraints(const HermiteCurve& u_hat, const LevelSetSurface& S,
                                        const BoundaryCondition& bc);

// Gateaux derivative of the stabilized geodesic term
//   G[u] = (gamma/2) * integral |u''. n_S(u)|^2,
// with n_S and its Jacobian frozen at the element-midpoint value when
// midpoint_normal is set.  g.v = G'[u_hat; v] for all v in V_h.
Eigen::VectorXd geodesic_rhs(const HermiteCurve& u_hat, const LevelSetSurface& S, double gamma,
                             const QuadratureRule& quadrature, bool midpoint_normal = true);

struct PenaltyOperators {
    // lumped diagonal: omega_j on third value components, zero elsewhere
    SparseMat D;
    // nodal u3 values -> full dof vector with omega_j * (u3_j - delta)_+ on
    // third value components
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> residual;
};

PenaltyOperators penalty_operators(const Partition& partition, double delta);

}  // namespace curveflow
