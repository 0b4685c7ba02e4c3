#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace curveflow {

using Vec3 = Eigen::Vector3d;

// Partition of (0,L) into J elements. Nodes are stored as z_0..z_J with
// z_J = L; a periodic partition identifies node J with node 0 for all
// degree-of-freedom indexing, so it carries J dof nodes instead of J+1.
struct Partition {
    double L = 0.0;
    bool periodic = false;
    std::vector<double> nodes;  // size J+1, z_0 = 0, z_J = L

    int element_count() const { return static_cast<int>(nodes.size()) - 1; }
    int node_count() const { return periodic ? element_count() : element_count() + 1; }
    int dof_count() const { return 6 * node_count(); }

    double element_length(int e) const { return nodes[e + 1] - nodes[e]; }
    double mesh_size() const;

    // dof node indices of element e (wraps modulo J when periodic)
    std::pair<int, int> element_nodes(int e) const {
        int n1 = e + 1;
        if (periodic && n1 == element_count()) n1 = 0;
        return {e, n1};
    }
};

Partition make_uniform_partition(double L, int J, bool periodic);

// Global dof layout: 6 entries per node, value components first.
inline int dof_index(int node, bool slope, int comp) {
    return 6 * node + (slope ? 3 : 0) + comp;
}

// C^1 piecewise-cubic curve in R^3 given by nodal values and nodal
// derivatives: dofs (p_j, t_j) = (u(z_j), u'(z_j)).
struct HermiteCurve {
    Partition partition;
    Eigen::VectorXd dofs;

    HermiteCurve() = default;
    explicit HermiteCurve(Partition part)
        : partition(std::move(part)), dofs(Eigen::VectorXd::Zero(partition.dof_count())) {}

    Vec3 value(int node) const { return dofs.segment<3>(6 * node); }
    Vec3 tangent(int node) const { return dofs.segment<3>(6 * node + 3); }
    void set_value(int node, const Vec3& p) { dofs.segment<3>(6 * node) = p; }
    void set_tangent(int node, const Vec3& t) { dofs.segment<3>(6 * node + 3) = t; }

    // order 0,1,2 -> u, u', u''.  u'' jumps at interior nodes; the element
    // to the right is used there (right-continuous convention).
    Vec3 eval(double x, int order) const;
};

// Reference Hermite shape functions on [0,1] and their derivatives:
// a = 0..3 over (value_0, slope_0, value_1, slope_1), order = 0,1,2.
double hermite_shape(int a, int order, double xi);

// Nodal C^1 interpolation I_h^{3,1}: matches v and v' at every node.
HermiteCurve interpolate_31(const std::function<Vec3(double)>& v,
                            const std::function<Vec3(double)>& dv,
                            const Partition& partition);

// Continuous piecewise-linear interpolant I_h of nodal values (W_h).
struct PiecewiseLinear {
    Partition partition;
    Eigen::VectorXd values;  // one per dof node

    double eval(double x) const;
};

PiecewiseLinear nodal_interpolate(const Eigen::VectorXd& values, const Partition& partition);

// Trapezoidal weights omega_j = (h_j + h_{j+1})/2, half-weights at
// non-periodic ends; sum equals L.
Eigen::VectorXd lumped_weights(const Partition& partition);

// (v,w)_h = sum_j omega_j v(z_j) w(z_j) = integral of I_h[vw]
double lumped_inner_product(const Eigen::VectorXd& v_nodal, const Eigen::VectorXd& w_nodal,
                            const Partition& partition);

// discrete max norm max_j |v(z_j)|
double nodal_max_norm(const Eigen::VectorXd& v_nodal);

struct QuadratureRule {
    std::vector<double> points;   // on [0,1]
    std::vector<double> weights;  // sum to 1
    int order = 0;                // exact for polynomials up to this degree
};

// Gauss-Legendre on [0,1], 1..10 points, exact for degree <= 2*points-1.
QuadratureRule gauss_rule(int points);

}  // namespace curveflow
