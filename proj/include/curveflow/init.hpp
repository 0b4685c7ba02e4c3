#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "curveflow/assembly.hpp"
#include "curveflow/mesh.hpp"
#include "curveflow/surface.hpp"

namespace curveflow {

// Regular parametric curve on (0, domain_length) with analytic derivative.
struct ParametricCurve {
    std::function<Vec3(double)> value;
    std::function<Vec3(double)> deriv;
    double domain_length = 0.0;
};

// u(x) = [sin(ax)(R + sin(bx) r); cos(ax)(R + sin(bx) r); cos(bx) r] on (0, 2pi);
// lies on the (R, r) torus identically.
ParametricCurve torus_seed(int a, int b, double R, double r);

// Equal-arclength resampling: nodal positions at equal cumulative length,
// nodal tangents c'/|c'| (unit by construction).  Total length via adaptive
// quadrature (relative tolerance 1e-10); the output partition is periodic
// when the input curve closes up.
HermiteCurve reparametrize_arclength(const ParametricCurve& c, int J);

// Nodal projection into A_h: values onto S (obstacle circle u3 = delta first
// when delta is given, sphere case), tangents tangential and unit.  Records
// the affine bc target from the result.
HermiteCurve project_to_admissible(const HermiteCurve& u, const LevelSetSurface& S,
                                   BoundaryCondition& bc, std::optional<double> delta = {});

// Latitude circle at height max(delta, 0.3) on S^2 plus a seeded random
// low-frequency Fourier perturbation (modes <= J/8, total amplitude as
// given, default 0.3), projected into A_h with the obstacle.  Deterministic
// per seed.
HermiteCurve random_periodic_admissible(std::uint64_t seed, int J, double delta,
                                        double amplitude = 0.3);

// Single-fold-biased start on S^2: a loop-carrying closed curve (limacon
// with inner loop, lifted radially to the sphere and resampled by
// arclength) plus a small seeded perturbation, projected into A_h with the
// obstacle.  Relaxes to the one-fold branch of the indentation flow.
HermiteCurve single_fold_biased_admissible(std::uint64_t seed, int J, double delta);

}  // namespace curveflow
