#include "curveflow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curveflow {

double Partition::mesh_size() const {
    double h = 0.0;
    for (int e = 0; e < element_count(); ++e) h = std::max(h, element_length(e));
    return h;
}

Partition make_uniform_partition(double L, int J, bool periodic) {
    if (!(L > 0.0)) throw std::invalid_argument("make_uniform_partition: L must be positive");
    if (J < 2) throw std::invalid_argument("make_uniform_partition: need J >= 2 elements");
    Partition part;
    part.L = L;
    part.periodic = periodic;
    part.nodes.resize(J + 1);
    for (int j = 0; j <= J; ++j) part.nodes[j] = L * static_cast<double>(j) / J;
    part.nodes[J] = L;
    return part;
}

double hermite_shape(int a, int order, double xi) {
    switch (order * 4 + a) {
        case 0: return 1.0 + xi * xi * (2.0 * xi - 3.0);   // 1 - 3x^2 + 2x^3
        case 1: return xi * (1.0 + xi * (xi - 2.0));       // x - 2x^2 + x^3
        case 2: return xi * xi * (3.0 - 2.0 * xi);         // 3x^2 - 2x^3
        case 3: return xi * xi * (xi - 1.0);               // x^3 - x^2
        case 4: return 6.0 * xi * (xi - 1.0);
        case 5: return 1.0 + xi * (3.0 * xi - 4.0);
        case 6: return 6.0 * xi * (1.0 - xi);
        case 7: return xi * (3.0 * xi - 2.0);
        case 8: return 12.0 * xi - 6.0;
        case 9: return 6.0 * xi - 4.0;
        case 10: return 6.0 - 12.0 * xi;
        case 11: return 6.0 * xi - 2.0;
        default: throw std::invalid_argument("hermite_shape: bad shape/order index");
    }
}

namespace {

int locate_element(const Partition& part, double& x) {
    if (part.periodic) {
        x = std::fmod(x, part.L);
        if (x < 0.0) x += part.L;
    } else if (x < 0.0 || x > part.L) {
        throw std::out_of_range("HermiteCurve::eval: x outside [0,L]");
    }
    auto it = std::upper_bound(part.nodes.begin(), part.nodes.end(), x);
    int e = static_cast<int>(it - part.nodes.begin()) - 1;
    return std::clamp(e, 0, part.element_count() - 1);
}

}  // namespace

Vec3 HermiteCurve::eval(double x, int order) const {
    if (order < 0 || order > 2) throw std::invalid_argument("HermiteCurve::eval: order must be 0, 1 or 2");
    double xl = x;
    const int e = locate_element(partition, xl);
    const double h = partition.element_length(e);
    const double xi = (xl - partition.nodes[e]) / h;
    const auto [n0, n1] = partition.element_nodes(e);
    const double scale = std::pow(h, -order);
    Vec3 out = Vec3::Zero();
    out += hermite_shape(0, order, xi) * scale * value(n0);
    out += hermite_shape(1, order, xi) * scale * h * tangent(n0);
    out += hermite_shape(2, order, xi) * scale * value(n1);
    out += hermite_shape(3, order, xi) * scale * h * tangent(n1);
    return out;
}

HermiteCurve interpolate_31(const std::function<Vec3(double)>& v,
                            const std::function<Vec3(double)>& dv,
                            const Partition& partition) {
    HermiteCurve u(partition);
    for (int j = 0; j < partition.node_count(); ++j) {
        u.set_value(j, v(partition.nodes[j]));
        u.set_tangent(j, dv(partition.nodes[j]));
    }
    return u;
}

double PiecewiseLinear::eval(double x) const {
    double xl = x;
    const int e = locate_element(partition, xl);
    const double xi = (xl - partition.nodes[e]) / partition.element_length(e);
    const auto [n0, n1] = partition.element_nodes(e);
    return (1.0 - xi) * values[n0] + xi * values[n1];
}

PiecewiseLinear nodal_interpolate(const Eigen::VectorXd& values, const Partition& partition) {
    if (values.size() != partition.node_count())
        throw std::invalid_argument("nodal_interpolate: one value per node required");
    return PiecewiseLinear{partition, values};
}

Eigen::VectorXd lumped_weights(const Partition& partition) {
    const int n = partition.node_count();
    const int J = partition.element_count();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (int e = 0; e < J; ++e) {
        const auto [n0, n1] = partition.element_nodes(e);
        w[n0] += 0.5 * partition.element_length(e);
        w[n1] += 0.5 * partition.element_length(e);
    }
    return w;
}

double lumped_inner_product(const Eigen::VectorXd& v_nodal, const Eigen::VectorXd& w_nodal,
                            const Partition& partition) {
    if (v_nodal.size() != partition.node_count() || w_nodal.size() != partition.node_count())
        throw std::invalid_argument("lumped_inner_product: nodal array size mismatch");
    return lumped_weights(partition).dot((v_nodal.array() * w_nodal.array()).matrix());
}

double nodal_max_norm(const Eigen::VectorXd& v_nodal) {
    return v_nodal.size() == 0 ? 0.0 : v_nodal.cwiseAbs().maxCoeff();
}

QuadratureRule gauss_rule(int points) {
    if (points < 1 || points > 10) throw std::invalid_argument("gauss_rule: 1..10 points supported");
    QuadratureRule rule;
    rule.order = 2 * points - 1;
    rule.points.resize(points);
    rule.weights.resize(points);
    // Newton on Legendre P_n over [-1,1], then map to [0,1]
    const int n = points;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.points[n - 1 - i] = 0.5 * (x + 1.0);
        rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace curveflow
