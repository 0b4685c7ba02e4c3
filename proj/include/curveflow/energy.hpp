#pragma once

#include "curveflow/mesh.hpp"
#include "curveflow/surface.hpp"

namespace curveflow {

// Per-step diagnostics record kept by the flow drivers.
struct Diagnostics {
    double bending = 0.0;            // (1/2) integral |u''|^2
    double geodesic_gamma = 0.0;     // stabilized geodesic functional
    double penalty = 0.0;            // (1/2eps) lumped obstacle term
    double indentation_total = 0.0;  // bending + penalty (raw, no offset)
    double arclength_violation = 0.0;
    double surface_violation = 0.0;
    double penetration = 0.0;  // ||(u3 - delta)_-||_{L2_h}
    double step_norm = 0.0;    // ||d_t u||_*
};

double bending_energy(const HermiteCurve& u, const QuadratureRule& quadrature);

double geodesic_energy(const HermiteCurve& u, const LevelSetSurface& S, double gamma,
                       const QuadratureRule& quadrature, bool midpoint_normal = true);

struct IndentationEnergy {
    double bending = 0.0;
    double penalty = 0.0;
    double total = 0.0;                     // raw value used by the algorithms
    double report_offset = -3.14159265358979323846;  // applied only in reporting
};

IndentationEnergy indentation_energy(const HermiteCurve& u, double delta, double eps);

struct ConstraintViolations {
    double arclength = 0.0;  // max_j | |u'(z_j)|^2 - 1 |
    double surface = 0.0;    // max_j | phi(u(z_j)) |
};

ConstraintViolations constraint_violations(const HermiteCurve& u, const LevelSetSurface& S);

double penetration_norm(const HermiteCurve& u, double delta);

}  // namespace curveflow
