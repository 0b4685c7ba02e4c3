#include "curveflow/init.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "curveflow/errors.hpp"

namespace curveflow {

namespace {

double regular_speed(const ParametricCurve& c, double x) {
    double s = c.deriv(x).norm();
    if (s < 1e-8) throw DegenerateCurve("reparametrize_arclength: |c'| < 1e-8 at x = " + std::to_string(x));
    return s;
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double fl = f(0.5 * (a + m));
    double fr = f(0.5 * (m + b));
    double left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
}

// adaptive Simpson; tol is absolute here, callers derive it from the 1e-10
// relative target applied to a coarse whole-interval estimate
double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double acc = 0.0;
    const int panels = 8;
    double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double pa = a + p * w, pb = pa + w, pm = 0.5 * (pa + pb);
        double fa = f(pa), fm = f(pm), fb = f(pb);
        double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        acc += adapt(f, pa, pb, fa, fm, fb, whole, tol / panels, 48);
    }
    return acc;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform_pm1(std::uint64_t& state) {
    return 2.0 * ((splitmix64(state) >> 11) * 0x1.0p-53) - 1.0;
}

double gaussian(std::uint64_t& state) {
    const double r1 = ((splitmix64(state) >> 11) + 1) * 0x1.0p-53;  // (0,1]
    const double r2 = (splitmix64(state) >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(r1)) * std::cos(2.0 * M_PI * r2);
}

}  // namespace

ParametricCurve torus_seed(int a, int b, double R, double r) {
    if (a == 0 && b == 0) throw std::invalid_argument("torus_seed: (a, b) = (0, 0)");
    ParametricCurve c;
    c.domain_length = 2.0 * M_PI;
    c.value = [a, b, R, r](double x) {
        double w = R + std::sin(b * x) * r;
        return Vec3(std::sin(a * x) * w, std::cos(a * x) * w, std::cos(b * x) * r);
    };
    c.deriv = [a, b, R, r](double x) {
        double w = R + std::sin(b * x) * r;
        double dw = b * std::cos(b * x) * r;
        return Vec3(a * std::cos(a * x) * w + std::sin(a * x) * dw,
                    -a * std::sin(a * x) * w + std::cos(a * x) * dw,
                    -b * std::sin(b * x) * r);
    };
    return c;
}

HermiteCurve reparametrize_arclength(const ParametricCurve& c, int J) {
    if (J < 2) throw std::invalid_argument("reparametrize_arclength: J must be >= 2");
    const double Lt = c.domain_length;
    if (!(Lt > 0.0)) throw std::invalid_argument("reparametrize_arclength: empty domain");
    auto speed = [&c](double x) { return regular_speed(c, x); };

    double coarse = integrate(speed, 0.0, Lt, 1.0);
    const double tol = 1e-10 * coarse;
    const double total = integrate(speed, 0.0, Lt, tol);

    bool periodic = (c.value(0.0) - c.value(Lt)).norm() <= 1e-8 * (1.0 + total);
    Partition part = make_uniform_partition(total, J, periodic);
    HermiteCurve u(part);

    // invert the cumulative-length function node by node; each target is
    // bracketed in (x_prev, Lt] and polished by Newton on F(x) = s(x) - s_i
    double x_prev = 0.0, s_prev = 0.0;
    const int interior = periodic ? J - 1 : J;
    u.set_value(0, c.value(0.0));
    u.set_tangent(0, c.deriv(0.0) / speed(0.0));
    for (int i = 1; i <= interior; ++i) {
        double target = total * i / J;
        double lo = x_prev, hi = Lt;
        double x = std::min(hi, x_prev + (target - s_prev) / speed(x_prev));
        double sx = 0.0;
        for (int it = 0; it < 100; ++it) {
            sx = s_prev + integrate(speed, x_prev, x, tol);
            double F = sx - target;
            if (std::abs(F) <= 1e-12 * total) break;
            if (F > 0.0) hi = x; else lo = x;
            double step = x - F / speed(x);
            x = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
        }
        u.set_value(i, c.value(x));
        u.set_tangent(i, c.deriv(x) / speed(x));
        x_prev = x;
        s_prev = target;
    }
    return u;
}

HermiteCurve project_to_admissible(const HermiteCurve& u, const LevelSetSurface& S,
                                   BoundaryCondition& bc, std::optional<double> delta) {
    HermiteCurve out = u;
    const int n = out.partition.node_count();
    auto obstacle_move = [&delta](Vec3 v) {
        if (!delta || v.z() >= *delta) return v;
        double rxy = std::hypot(v.x(), v.y());
        if (rxy < 1e-14)
            throw ProjectionFailure("project_to_admissible: node on the obstacle axis", rxy);
        double rho = std::sqrt(std::max(0.0, 1.0 - *delta * *delta));
        return Vec3(rho * v.x() / rxy, rho * v.y() / rxy, *delta);
    };
    for (int j = 0; j < n; ++j) {
        // the obstacle circle lies on the sphere, so the post-projection move
        // cannot reintroduce a surface defect
        Vec3 v = obstacle_move(out.value(j));
        v = obstacle_move(project(S, v));
        Vec3 nrm = normal(S, v);
        Vec3 t = out.tangent(j) - nrm * nrm.dot(out.tangent(j));
        if (t.norm() < 1e-10)
            throw DegenerateTangent("project_to_admissible: tangent parallel to the surface normal at node " +
                                    std::to_string(j));
        out.set_value(j, v);
        out.set_tangent(j, t.normalized());
    }
    switch (bc.kind) {
        case BcKind::clamped_start:
            bc.target.resize(6);
            bc.target << out.value(0), out.tangent(0);
            break;
        case BcKind::both_ends_fixed:
            bc.target.resize(6);
            bc.target << out.value(0), out.value(n - 1);
            break;
        case BcKind::periodic:
            bc.target.resize(0);
            break;
    }
    return out;
}

HermiteCurve random_periodic_admissible(std::uint64_t seed, int J, double delta, double amplitude) {
    if (J < 8) throw std::invalid_argument("random_periodic_admissible: J must be >= 8");
    const double height = std::max(delta, 0.3);
    const double rho = std::sqrt(1.0 - height * height);
    Partition part = make_uniform_partition(2.0 * M_PI * rho, J, true);
    HermiteCurve u(part);

    const int modes = std::max(1, J / 8);
    const double amp = amplitude / modes;
    std::uint64_t state = seed;
    std::vector<std::array<double, 6>> coef(modes);  // cos/sin per component
    for (auto& row : coef)
        for (double& c : row) c = amp * uniform_pm1(state);

    for (int j = 0; j < J; ++j) {
        double theta = 2.0 * M_PI * j / J;
        Vec3 v(rho * std::cos(theta), rho * std::sin(theta), height);
        Vec3 t(-std::sin(theta), std::cos(theta), 0.0);
        for (int m = 1; m <= modes; ++m) {
            double cm = std::cos(m * theta), sm = std::sin(m * theta);
            const auto& row = coef[m - 1];
            for (int k = 0; k < 3; ++k) {
                v[k] += row[2 * k] * cm + row[2 * k + 1] * sm;
                t[k] += m / rho * (-row[2 * k] * sm + row[2 * k + 1] * cm);
            }
        }
        u.set_value(j, v);
        u.set_tangent(j, t);
    }
    BoundaryCondition bc{BcKind::periodic, {}};
    return project_to_admissible(u, sphere(), bc, delta);
}

HermiteCurve single_fold_biased_admissible(std::uint64_t seed, int J, double delta) {
    if (J < 8) throw std::invalid_argument("single_fold_biased_admissible: J must be >= 8");

    // Latitude profile on the unit sphere: a circle at height zb, one upward
    // von-Mises tent centred at theta = pi, and a small seeded Fourier
    // perturbation.  The mode count is independent of J, so every resolution
    // discretizes the same continuum curve.
    const double zb = std::max(delta + 0.10, 0.15);
    const double kappa = 16.0;
    const int nm = 6;
    const double amp = 0.01;
    std::uint64_t state = seed;
    std::array<std::array<double, 2>, nm> coef{};
    for (auto& row : coef)
        for (double& c : row) c = amp * gaussian(state);

    auto height = [zb, kappa, coef](double t, double A) {
        double z = zb + A * std::exp(kappa * (std::cos(t - M_PI) - 1.0));
        for (int m = 1; m <= nm; ++m)
            z += coef[m - 1][0] * std::cos(m * t) + coef[m - 1][1] * std::sin(m * t);
        return z;
    };
    auto dheight = [zb, kappa, coef](double t, double A) {
        double dz = -A * kappa * std::sin(t - M_PI) * std::exp(kappa * (std::cos(t - M_PI) - 1.0));
        for (int m = 1; m <= nm; ++m)
            dz += m * (coef[m - 1][1] * std::cos(m * t) - coef[m - 1][0] * std::sin(m * t));
        return dz;
    };
    auto speed_at = [&height, &dheight](double t, double A) {
        const double z = height(t, A);
        const double dz = dheight(t, A);
        const double rho2 = 1.0 - z * z;
        return std::sqrt(rho2 + dz * dz / rho2);
    };
    auto length_of = [&speed_at](double A) {
        auto f = [&speed_at, A](double t) { return speed_at(t, A); };
        double coarse = integrate(f, 0.0, 2.0 * M_PI, 1.0);
        return integrate(f, 0.0, 2.0 * M_PI, 1e-12 * coarse);
    };

    // The tent amplitude is the one free knob: bisect it so the continuum
    // curve has total length exactly 2*pi, the length a unit-speed loop over
    // this domain must carry.  The flat profile is shorter than that and the
    // amplitude cap keeps the tent clear of the pole.
    const double target = 2.0 * M_PI;
    double lo = 0.0, hi = 0.98 - zb - 8.0 * amp;
    if (!(hi > 0.0) || length_of(lo) >= target || length_of(hi) <= target)
        throw std::invalid_argument(
            "single_fold_biased_admissible: cannot normalize length at delta = " +
            std::to_string(delta));
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (length_of(mid) < target ? lo : hi) = mid;
        if (hi - lo <= 1e-14 * (1.0 + hi)) break;
    }
    const double A = 0.5 * (lo + hi);

    ParametricCurve folded;
    folded.domain_length = 2.0 * M_PI;
    folded.value = [height, A](double t) {
        const double z = height(t, A);
        const double rho = std::sqrt(1.0 - z * z);
        return Vec3(rho * std::cos(t), rho * std::sin(t), z);
    };
    folded.deriv = [height, dheight, A](double t) {
        const double z = height(t, A);
        const double dz = dheight(t, A);
        const double rho = std::sqrt(1.0 - z * z);
        const double drho = -z * dz / rho;
        return Vec3(drho * std::cos(t) - rho * std::sin(t),
                    drho * std::sin(t) + rho * std::cos(t), dz);
    };
    HermiteCurve u = reparametrize_arclength(folded, J);
    BoundaryCondition bc{BcKind::periodic, {}};
    return project_to_admissible(u, sphere(), bc, delta);
}

}  // namespace curveflow
