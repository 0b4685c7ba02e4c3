#include "curveflow/energy.hpp"

#include <cmath>

namespace curveflow {

namespace {

template <typename Integrand>
double element_sum(const HermiteCurve& u, const QuadratureRule& quad, Integrand&& f) {
    const Partition& part = u.partition;
    double total = 0.0;
    for (int e = 0; e < part.element_count(); ++e) {
        const double h = part.element_length(e);
        const double x0 = part.nodes[e];
        for (size_t q = 0; q < quad.points.size(); ++q)
            total += quad.weights[q] * h * f(e, x0 + quad.points[q] * h);
    }
    return total;
}

}  // namespace

double bending_energy(const HermiteCurve& u, const QuadratureRule& quadrature) {
    return 0.5 * element_sum(u, quadrature,
                             [&u](int, double x) { return u.eval(x, 2).squaredNorm(); });
}

double geodesic_energy(const HermiteCurve& u, const LevelSetSurface& S, double gamma,
                       const QuadratureRule& quadrature, bool midpoint_normal) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("geodesic_energy: gamma must lie in [0,1]");
    const Partition& part = u.partition;
    double normal_part = 0.0;
    if (gamma > 0.0) {
        for (int e = 0; e < part.element_count(); ++e) {
            const double h = part.element_length(e);
            const double x0 = part.nodes[e];
            Vec3 n_mid = Vec3::Zero();
            if (midpoint_normal) n_mid = normal(S, u.eval(x0 + 0.5 * h, 0));
            for (size_t q = 0; q < quadrature.points.size(); ++q) {
                const double x = x0 + quadrature.points[q] * h;
                const Vec3 n = midpoint_normal ? n_mid : normal(S, u.eval(x, 0));
                const double kn = u.eval(x, 2).dot(n);
                normal_part += quadrature.weights[q] * h * kn * kn;
            }
        }
    }
    return bending_energy(u, quadrature) - 0.5 * gamma * normal_part;
}

IndentationEnergy indentation_energy(const HermiteCurve& u, double delta, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("indentation_energy: eps must be positive");
    IndentationEnergy out;
    out.bending = bending_energy(u, gauss_rule(4));
    const Eigen::VectorXd w = lumped_weights(u.partition);
    double pen = 0.0;
    for (int j = 0; j < u.partition.node_count(); ++j) {
        const double neg = std::min(u.value(j)[2] - delta, 0.0);
        pen += w[j] * neg * neg;
    }
    out.penalty = pen / (2.0 * eps);
    out.total = out.bending + out.penalty;
    return out;
}

ConstraintViolations constraint_violations(const HermiteCurve& u, const LevelSetSurface& S) {
    ConstraintViolations v;
    for (int j = 0; j < u.partition.node_count(); ++j) {
        v.arclength = std::max(v.arclength, std::abs(u.tangent(j).squaredNorm() - 1.0));
        v.surface = std::max(v.surface, std::abs(S.phi(u.value(j))));
    }
    return v;
}

double penetration_norm(const HermiteCurve& u, double delta) {
    const Eigen::VectorXd w = lumped_weights(u.partition);
    double s = 0.0;
    for (int j = 0; j < u.partition.node_count(); ++j) {
        const double neg = std::min(u.value(j)[2] - delta, 0.0);
        s += w[j] * neg * neg;
    }
    return std::sqrt(s);
}

}  // namespace curveflow
