#include <doctest.h>

#include <cmath>

#include "curveflow/energy.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/init.hpp"
#include "curveflow/surface.hpp"

using namespace curveflow;

TEST_CASE("torus seed: formula values and exact level-set membership") {
    const double R = 2.0, r = 1.0;

    // a=0, b=1: a circle with vanishing first component
    const ParametricCurve ring = torus_seed(0, 1, R, r);
    for (double x : {0.0, 0.5, 1.7, 3.0, 5.9}) {
        const Vec3 p = ring.value(x);
        CHECK(p[0] == 0.0);
        CHECK(p[1] == doctest::Approx(R + std::sin(x) * r).epsilon(1e-15));
        CHECK(p[2] == doctest::Approx(std::cos(x) * r).epsilon(1e-15));
    }

    const Vec3 start = torus_seed(1, 2, R, r).value(0.0);
    CHECK((start - Vec3(0.0, R, r)).norm() <= 1e-15);

    const LevelSetSurface T = torus(R, r);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            if (a == 0 && b == 0) continue;
            const ParametricCurve c = torus_seed(a, b, R, r);
            CHECK(c.domain_length == doctest::Approx(2.0 * M_PI));
            for (int i = 0; i < 40; ++i) {
                const double x = 2.0 * M_PI * i / 40.0;
                CHECK(std::abs(T.phi(c.value(x))) <= 1e-10);
                // derivative consistency with central differences
                const double s = 1e-6;
                const Vec3 fd = (c.value(x + s) - c.value(x - s)) / (2.0 * s);
                CHECK((c.deriv(x) - fd).norm() <= 1e-7 * (1.0 + fd.norm()));
            }
        }

    CHECK_THROWS_AS(torus_seed(0, 0, R, r), std::invalid_argument);
}

TEST_CASE("arclength reparametrization: circle, identity segment, torus seeds") {
    // circle of radius 2: L = 4 pi, unit nodal tangents
    ParametricCurve big;
    big.domain_length = 2.0 * M_PI;
    big.value = [](double x) { return Vec3(2.0 * std::cos(x), 2.0 * std::sin(x), 0.0); };
    big.deriv = [](double x) { return Vec3(-2.0 * std::sin(x), 2.0 * std::cos(x), 0.0); };
    const HermiteCurve u = reparametrize_arclength(big, 16);
    CHECK(u.partition.L == doctest::Approx(4.0 * M_PI).epsilon(1e-10));
    CHECK(u.partition.periodic);
    for (int j = 0; j < u.partition.node_count(); ++j) {
        CHECK(std::abs(u.tangent(j).norm() - 1.0) <= 1e-12);
        CHECK(std::abs(u.value(j).head<2>().norm() - 2.0) <= 1e-10);
    }

    // an already-arclength segment reproduces its nodal data
    ParametricCurve seg;
    seg.domain_length = 3.0;
    const Vec3 p0(0.4, -1.0, 2.0);
    const Vec3 dir = Vec3(2.0, 1.0, -2.0).normalized();
    seg.value = [p0, dir](double x) { return Vec3(p0 + x * dir); };
    seg.deriv = [dir](double) { return dir; };
    const HermiteCurve v = reparametrize_arclength(seg, 6);
    CHECK_FALSE(v.partition.periodic);
    CHECK(v.partition.L == doctest::Approx(3.0).epsilon(1e-12));
    for (int j = 0; j <= 6; ++j) {
        const double z = 3.0 * j / 6.0;
        CHECK((v.value(j) - (p0 + z * dir)).norm() <= 1e-10);
        CHECK((v.tangent(j) - dir).norm() <= 1e-12);
    }

    // torus seeds: nodal speed defect below 1e-10, image preserved
    for (auto [a, b] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        const ParametricCurve c = torus_seed(a, b, 2.0, 1.0);
        const HermiteCurve w = reparametrize_arclength(c, 48);
        for (int j = 0; j < w.partition.node_count(); ++j)
            CHECK(std::abs(w.tangent(j).norm() - 1.0) <= 1e-10);
        // distance to the input image: coarse nearest sample, then a local
        // ternary-search refinement of |c(x) - p| around it
        for (int j = 0; j < w.partition.node_count(); ++j) {
            const Vec3 p = w.value(j);
            const int coarse = 4096;
            double best = 1e30, xbest = 0.0;
            for (int i = 0; i < coarse; ++i) {
                const double x = 2.0 * M_PI * i / coarse;
                const double dist = (c.value(x) - p).norm();
                if (dist < best) {
                    best = dist;
                    xbest = x;
                }
            }
            double lo = xbest - 2.0 * M_PI / coarse, hi = xbest + 2.0 * M_PI / coarse;
            for (int it = 0; it < 200; ++it) {
                const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                if ((c.value(m1) - p).norm() < (c.value(m2) - p).norm())
                    hi = m2;
                else
                    lo = m1;
            }
            best = std::min(best, (c.value(0.5 * (lo + hi)) - p).norm());
            CHECK(best <= 1e-6);
        }
    }

    // a non-regular curve is rejected
    ParametricCurve stalled;
    stalled.domain_length = 1.0;
    stalled.value = [](double x) { return Vec3(x * x, 0.0, 0.0); };
    stalled.deriv = [](double x) { return Vec3(2.0 * x, 0.0, 0.0); };
    CHECK_THROWS_AS(reparametrize_arclength(stalled, 4), DegenerateCurve);
}

TEST_CASE("project to admissible: radial example, idempotence, obstacle") {
    const LevelSetSurface S = sphere();

    const Partition seg{1.0, false, {0.0, 1.0}};
    HermiteCurve u(seg);
    u.set_value(0, Vec3(0.0, 0.0, 2.0));
    u.set_tangent(0, Vec3(2.0, 0.0, 0.0));
    u.set_value(1, Vec3(2.0, 0.0, 0.0));
    u.set_tangent(1, Vec3(0.0, 2.0, 0.0));
    BoundaryCondition bc{BcKind::clamped_start, {}};
    const HermiteCurve proj = project_to_admissible(u, S, bc);
    CHECK((proj.value(0) - Vec3(0.0, 0.0, 1.0)).norm() <= 1e-14);
    CHECK((proj.tangent(0) - Vec3(1.0, 0.0, 0.0)).norm() <= 1e-14);
    CHECK((proj.value(1) - Vec3(1.0, 0.0, 0.0)).norm() <= 1e-14);
    CHECK((proj.tangent(1) - Vec3(0.0, 1.0, 0.0)).norm() <= 1e-14);

    // bc target recorded from the projected state
    REQUIRE(proj.partition.node_count() == 2);
    CHECK(bc.target.size() == 6);
    CHECK((bc.target.head<3>() - proj.value(0)).norm() <= 1e-15);
    CHECK((bc.target.tail<3>() - proj.tangent(0)).norm() <= 1e-15);

    // idempotence
    BoundaryCondition bc2{BcKind::clamped_start, {}};
    const HermiteCurve twice = project_to_admissible(proj, S, bc2);
    CHECK((twice.dofs - proj.dofs).norm() <= 1e-12);

    // perturbed latitude circle with obstacle delta = 1/4
    const double delta = 0.25;
    HermiteCurve lat = random_periodic_admissible(7, 40, delta);
    for (int j = 0; j < 40; ++j) {
        lat.set_value(j, lat.value(j) + Vec3(0.01 * std::sin(3.0 * j), 0.0, -0.02));
        lat.set_tangent(j, lat.tangent(j) * 1.05);
    }
    BoundaryCondition per{BcKind::periodic, {}};
    const HermiteCurve fixed = project_to_admissible(lat, S, per, delta);
    const ConstraintViolations cv = constraint_violations(fixed, S);
    CHECK(cv.arclength <= 1e-12);
    CHECK(cv.surface <= 1e-12);
    for (int j = 0; j < 40; ++j) CHECK(fixed.value(j)[2] >= delta - 1e-12);

    // tangent parallel to the normal has no tangential part left
    HermiteCurve polar(seg);
    polar.set_value(0, Vec3(0.0, 0.0, 1.0));
    polar.set_tangent(0, Vec3(0.0, 0.0, 3.0));
    polar.set_value(1, Vec3(1.0, 0.0, 0.0));
    polar.set_tangent(1, Vec3(0.0, 1.0, 0.0));
    BoundaryCondition bc3{BcKind::clamped_start, {}};
    CHECK_THROWS_AS(project_to_admissible(polar, S, bc3), DegenerateTangent);
}

TEST_CASE("random periodic admissible: determinism, admissibility, analytic limit") {
    const double delta = 0.25;
    const HermiteCurve a = random_periodic_admissible(42, 48, delta);
    const HermiteCurve b = random_periodic_admissible(42, 48, delta);
    CHECK(a.dofs == b.dofs);
    const HermiteCurve c = random_periodic_admissible(43, 48, delta);
    CHECK((a.dofs - c.dofs).norm() > 1e-8);

    const LevelSetSurface S = sphere();
    for (unsigned seed : {1u, 2u, 9u}) {
        const HermiteCurve u = random_periodic_admissible(seed, 48, delta);
        const ConstraintViolations cv = constraint_violations(u, S);
        CHECK(cv.arclength <= 1e-12);
        CHECK(cv.surface <= 1e-12);
        for (int j = 0; j < 48; ++j) CHECK(u.value(j)[2] >= delta - 1e-12);
    }

    CHECK_THROWS_AS(random_periodic_admissible(1, 4, delta), std::invalid_argument);

    // amplitude 0: exact latitude circle at height max(delta, 0.3); its
    // bending energy is pi/rho with rho the circle radius
    const double height = 0.3;
    const double rho = std::sqrt(1.0 - height * height);
    const HermiteCurve flat = random_periodic_admissible(5, 80, 0.1, 0.0);
    for (int j = 0; j < 80; ++j) {
        CHECK(std::abs(flat.value(j)[2] - height) <= 1e-14);
        CHECK(std::abs(flat.value(j).head<2>().norm() - rho) <= 1e-14);
    }
    const double energy = bending_energy(flat, gauss_rule(4));
    CHECK(std::abs(energy - M_PI / rho) <= 0.01 * M_PI / rho);
}
