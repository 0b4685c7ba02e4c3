#include "curveflow/assembly.hpp"

#include <cmath>

#include "curveflow/errors.hpp"

namespace curveflow {

double ConstraintRow::norm() const {
    double s = 0.0;
    for (double c : coef) s += c * c;
    return std::sqrt(s);
}

double ConstraintRow::dot(const Eigen::VectorXd& v) const {
    double s = 0.0;
    for (size_t i = 0; i < idx.size(); ++i) s += coef[i] * v[idx[i]];
    return s;
}

SparseMat ConstraintSystem::matrix() const {
    std::vector<Eigen::Triplet<double>> trips;
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t i = 0; i < rows[r].idx.size(); ++i)
            trips.emplace_back(static_cast<int>(r), rows[r].idx[i], rows[r].coef[i]);
    SparseMat B(static_cast<int>(rows.size()), ndof);
    B.setFromTriplets(trips.begin(), trips.end());
    return B;
}

double ConstraintSystem::max_violation(const Eigen::VectorXd& v) const {
    double m = 0.0;
    for (const auto& row : rows) m = std::max(m, std::abs(row.dot(v)));
    return m;
}

namespace {

// scalar 4x4 element matrices; dof order (value_0, slope_0, value_1, slope_1),
// slope dofs scaled by the element length
using ElemMat = Eigen::Matrix4d;

ElemMat element_matrix(double h, int order) {
    static const QuadratureRule quad = gauss_rule(4);  // exact for degree 7
    const double scale[4] = {1.0, h, 1.0, h};
    ElemMat m = ElemMat::Zero();
    for (size_t q = 0; q < quad.points.size(); ++q) {
        const double xi = quad.points[q];
        const double w = quad.weights[q] * h * std::pow(h, -2.0 * order);
        double s[4];
        for (int a = 0; a < 4; ++a) s[a] = hermite_shape(a, order, xi) * scale[a];
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) m(a, b) += w * s[a] * s[b];
    }
    return m;
}

SparseMat assemble_scalar_form(const Partition& part, int order) {
    const int ndof = part.dof_count();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(part.element_count()) * 48);
    for (int e = 0; e < part.element_count(); ++e) {
        const ElemMat m = element_matrix(part.element_length(e), order);
        const auto [n0, n1] = part.element_nodes(e);
        const int nodes[4] = {n0, n0, n1, n1};
        const bool slope[4] = {false, true, false, true};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 3; ++c)
                    trips.emplace_back(dof_index(nodes[a], slope[a], c),
                                       dof_index(nodes[b], slope[b], c), m(a, b));
    }
    SparseMat M(ndof, ndof);
    M.setFromTriplets(trips.begin(), trips.end());
    return M;
}

}  // namespace

SparseMat mass_matrix(const Partition& partition) { return assemble_scalar_form(partition, 0); }

SparseMat bending_matrix(const Partition& partition) { return assemble_scalar_form(partition, 2); }

ConstraintSystem linearized_constraints(const HermiteCurve& u_hat, const LevelSetSurface& S,
                                        const BoundaryCondition& bc) {
    const Partition& part = u_hat.partition;
    ConstraintSystem sys;
    sys.ndof = part.dof_count();

    auto push_row = [&sys](ConstraintRow row) {
        if (row.norm() <= 1e-14) {
            sys.warnings.push_back("dropped zero-norm constraint row: " + row.label);
            return;
        }
        sys.rows.push_back(std::move(row));
    };

    for (int j = 0; j < part.node_count(); ++j) {
        const Vec3 g = S.grad(u_hat.value(j));
        if (g.norm() <= 1e-10)
            throw SingularSurfacePoint("linearized_constraints: vanishing surface gradient at node " +
                                       std::to_string(j));
        ConstraintRow surf;
        surf.idx = {dof_index(j, false, 0), dof_index(j, false, 1), dof_index(j, false, 2)};
        surf.coef = {g[0], g[1], g[2]};
        surf.label = "surface@node " + std::to_string(j);
        push_row(std::move(surf));

        const Vec3 t = u_hat.tangent(j);
        ConstraintRow tang;
        tang.idx = {dof_index(j, true, 0), dof_index(j, true, 1), dof_index(j, true, 2)};
        tang.coef = {t[0], t[1], t[2]};
        tang.label = "tangent@node " + std::to_string(j);
        push_row(std::move(tang));
    }

    auto pin = [&](int node, bool slope, const char* what) {
        for (int c = 0; c < 3; ++c) {
            ConstraintRow row;
            row.idx = {dof_index(node, slope, c)};
            row.coef = {1.0};
            row.label = std::string("bc ") + what + std::to_string(c) + "@node " + std::to_string(node);
            push_row(std::move(row));
        }
    };

    switch (bc.kind) {
        case BcKind::clamped_start:
            pin(0, false, "value");
            pin(0, true, "slope");
            break;
        case BcKind::both_ends_fixed:
            pin(0, false, "value");
            pin(part.node_count() - 1, false, "value");
            break;
        case BcKind::periodic:
            break;
    }
    return sys;
}

Eigen::VectorXd geodesic_rhs(const HermiteCurve& u_hat, const LevelSetSurface& S, double gamma,
                             const QuadratureRule& quadrature, bool midpoint_normal) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("geodesic_rhs: gamma must lie in [0,1]");
    const Partition& part = u_hat.partition;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(part.dof_count());
    if (gamma == 0.0) return g;

    for (int e = 0; e < part.element_count(); ++e) {
        const double h = part.element_length(e);
        const double x0 = part.nodes[e];
        const auto [n0, n1] = part.element_nodes(e);
        const int nodes[4] = {n0, n0, n1, n1};
        const bool slope[4] = {false, true, false, true};
        const double scale[4] = {1.0, h, 1.0, h};

        Vec3 n_mid = Vec3::Zero();
        Mat3 dn_mid = Mat3::Zero();
        if (midpoint_normal) {
            const Vec3 u_mid = u_hat.eval(x0 + 0.5 * h, 0);
            n_mid = normal(S, u_mid);
            dn_mid = normal_jacobian(S, u_mid);
        }

        Vec3 alpha = Vec3::Zero();  // integral of (u''.n) u'' over the element
        for (size_t q = 0; q < quadrature.points.size(); ++q) {
            const double xi = quadrature.points[q];
            const double w = quadrature.weights[q] * h;
            const Vec3 upp = u_hat.eval(x0 + xi * h, 2);
            Vec3 n = n_mid;
            Mat3 dn = dn_mid;
            if (!midpoint_normal) {
                const Vec3 ux = u_hat.eval(x0 + xi * h, 0);
                n = normal(S, ux);
                dn = normal_jacobian(S, ux);
            }
            const double kn = upp.dot(n);

            // (u''.n)(v''.n) against the second-derivative shapes
            for (int a = 0; a < 4; ++a) {
                const double s2 = hermite_shape(a, 2, xi) * scale[a] / (h * h);
                for (int c = 0; c < 3; ++c)
                    g[dof_index(nodes[a], slope[a], c)] += gamma * w * kn * s2 * n[c];
            }

            if (midpoint_normal) {
                alpha += w * kn * upp;
            } else {
                // variation of n_S(u(x)): (u''.n) u''. n_S'(u) v(x)
                const Vec3 beta = gamma * w * kn * (dn.transpose() * upp);
                for (int a = 0; a < 4; ++a) {
                    const double s0 = hermite_shape(a, 0, xi) * scale[a];
                    for (int c = 0; c < 3; ++c)
                        g[dof_index(nodes[a], slope[a], c)] += s0 * beta[c];
                }
            }
        }

        if (midpoint_normal) {
            // variation of the frozen midpoint normal: alpha . n_S'(u_mid) v(mid)
            const Vec3 beta = gamma * (dn_mid.transpose() * alpha);
            for (int a = 0; a < 4; ++a) {
                const double s0 = hermite_shape(a, 0, 0.5) * scale[a];
                for (int c = 0; c < 3; ++c)
                    g[dof_index(nodes[a], slope[a], c)] += s0 * beta[c];
            }
        }
    }
    return g;
}

PenaltyOperators penalty_operators(const Partition& partition, double delta) {
    const Eigen::VectorXd w = lumped_weights(partition);
    const int ndof = partition.dof_count();
    const int n = partition.node_count();

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(n);
    for (int j = 0; j < n; ++j) trips.emplace_back(dof_index(j, false, 2), dof_index(j, false, 2), w[j]);
    SparseMat D(ndof, ndof);
    D.setFromTriplets(trips.begin(), trips.end());

    auto residual = [w, delta, ndof, n](const Eigen::VectorXd& u3_nodal) {
        if (u3_nodal.size() != n)
            throw std::invalid_argument("penalty residual: nodal array size mismatch");
        Eigen::VectorXd r = Eigen::VectorXd::Zero(ndof);
        for (int j = 0; j < n; ++j) r[dof_index(j, false, 2)] = w[j] * std::max(u3_nodal[j] - delta, 0.0);
        return r;
    };
    return PenaltyOperators{std::move(D), std::move(residual)};
}

}  // namespace curveflow
