#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "curveflow/mesh.hpp"

namespace curveflow {

using Mat3 = Eigen::Matrix3d;

// Surface S = { s : phi(s) = 0 } with analytic first and second derivatives.
struct LevelSetSurface {
    std::string name;
    std::function<double(const Vec3&)> phi;
    std::function<Vec3(const Vec3&)> grad;
    std::function<Mat3(const Vec3&)> hess;
};

LevelSetSurface sphere();                     // phi(s) = |s|^2 - 1
LevelSetSurface torus(double R, double r);    // phi(s) = (|s|^2 + R^2 - r^2)^2 - 4R^2(|s|^2 - s3^2)

// n_S = phi'/|phi'|, extended off S wherever the gradient is nonzero.
Vec3 normal(const LevelSetSurface& S, const Vec3& s, double tol_grad = 1e-10);

// Jacobian of the extended normal field: (I - n n^T) phi''(s) / |phi'(s)|.
Mat3 normal_jacobian(const LevelSetSurface& S, const Vec3& s, double tol_grad = 1e-10);

// Level-set Newton along the gradient: p <- p - phi(p) phi'(p)/|phi'(p)|^2
// until |phi(p)| <= 1e-12 (at most 50 iterations).
Vec3 project(const LevelSetSurface& S, const Vec3& s);

}  // namespace curveflow
