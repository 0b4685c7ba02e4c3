#include "curveflow/surface.hpp"

#include <cmath>

#include "curveflow/errors.hpp"

namespace curveflow {

LevelSetSurface sphere() {
    LevelSetSurface S;
    S.name = "sphere";
    S.phi = [](const Vec3& s) { return s.squaredNorm() - 1.0; };
    S.grad = [](const Vec3& s) -> Vec3 { return 2.0 * s; };
    S.hess = [](const Vec3&) -> Mat3 { return 2.0 * Mat3::Identity(); };
    return S;
}

LevelSetSurface torus(double R, double r) {
    if (!(R > r && r > 0.0)) throw std::invalid_argument("torus: need R > r > 0");
    LevelSetSurface S;
    S.name = "torus";
    const double R2 = R * R, r2 = r * r;
    S.phi = [R2, r2](const Vec3& s) {
        const double q = s.squaredNorm() + R2 - r2;
        return q * q - 4.0 * R2 * (s.squaredNorm() - s[2] * s[2]);
    };
    S.grad = [R2, r2](const Vec3& s) -> Vec3 {
        const double q = s.squaredNorm() + R2 - r2;
        Vec3 g = 4.0 * q * s;
        g[0] -= 8.0 * R2 * s[0];
        g[1] -= 8.0 * R2 * s[1];
        return g;
    };
    S.hess = [R2, r2](const Vec3& s) -> Mat3 {
        const double q = s.squaredNorm() + R2 - r2;
        Mat3 H = 8.0 * s * s.transpose() + 4.0 * q * Mat3::Identity();
        H(0, 0) -= 8.0 * R2;
        H(1, 1) -= 8.0 * R2;
        return H;
    };
    return S;
}

Vec3 normal(const LevelSetSurface& S, const Vec3& s, double tol_grad) {
    const Vec3 g = S.grad(s);
    const double gn = g.norm();
    if (gn <= tol_grad)
        throw SingularSurfacePoint("normal: vanishing surface gradient on " + S.name);
    return g / gn;
}

Mat3 normal_jacobian(const LevelSetSurface& S, const Vec3& s, double tol_grad) {
    const Vec3 g = S.grad(s);
    const double gn = g.norm();
    if (gn <= tol_grad)
        throw SingularSurfacePoint("normal_jacobian: vanishing surface gradient on " + S.name);
    const Vec3 n = g / gn;
    return (Mat3::Identity() - n * n.transpose()) * S.hess(s) / gn;
}

Vec3 project(const LevelSetSurface& S, const Vec3& s) {
    Vec3 p = s;
    double residual = std::abs(S.phi(p));
    for (int iter = 0; iter < 50; ++iter) {
        const double f = S.phi(p);
        residual = std::abs(f);
        if (residual <= 1e-12) return p;
        const Vec3 g = S.grad(p);
        const double g2 = g.squaredNorm();
        if (g2 <= 1e-20)
            throw SingularSurfacePoint("project: vanishing surface gradient on " + S.name);
        p -= (f / g2) * g;
    }
    residual = std::abs(S.phi(p));
    if (residual <= 1e-12) return p;
    throw ProjectionFailure("project: no convergence in 50 iterations on " + S.name, residual);
}

}  // namespace curveflow
