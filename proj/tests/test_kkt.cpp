#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "curveflow/errors.hpp"
#include "curveflow/kkt.hpp"

using namespace curveflow;

namespace {

SparseMat sparse_from_dense(const Eigen::MatrixXd& A) {
    SparseMat S(static_cast<int>(A.rows()), static_cast<int>(A.cols()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0.0) S.insert(i, j) = A(i, j);
    S.makeCompressed();
    return S;
}

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = gauss(rng);
    return G * G.transpose() + n * Eigen::MatrixXd::Identity(n, n);
}

ConstraintSystem rows_from_dense(const Eigen::MatrixXd& B) {
    ConstraintSystem cs;
    cs.ndof = static_cast<int>(B.cols());
    for (int i = 0; i < B.rows(); ++i) {
        ConstraintRow row;
        for (int j = 0; j < B.cols(); ++j)
            if (B(i, j) != 0.0) {
                row.idx.push_back(j);
                row.coef.push_back(B(i, j));
            }
        row.label = "row " + std::to_string(i);
        cs.rows.push_back(row);
    }
    return cs;
}

// brute-force oracle: assemble the bordered matrix densely and LU-solve it
Eigen::VectorXd dense_bordered_solve(const Eigen::MatrixXd& K, const Eigen::MatrixXd& B,
                                     const Eigen::VectorXd& f) {
    const int n = static_cast<int>(K.rows());
    const int m = static_cast<int>(B.rows());
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n + m, n + m);
    full.topLeftCorner(n, n) = K;
    full.bottomLeftCorner(m, n) = B;
    full.topRightCorner(n, m) = B.transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + m);
    rhs.head(n) = f;
    return full.fullPivLu().solve(rhs);
}

}  // namespace

TEST_CASE("kkt: unconstrained identity system returns f") {
    const int n = 12;
    kkt::SaddleSystem sys;
    sys.K = sparse_from_dense(Eigen::MatrixXd::Identity(n, n));
    sys.B.ndof = n;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f[i] = gauss(rng);
    sys.f = f;

    const kkt::Result res = kkt::solve(sys);
    CHECK((res.d - f).norm() <= 1e-12 * f.norm());
    CHECK(res.lambda.size() == 0);
    CHECK(res.residual_primal <= 1e-9);
}

TEST_CASE("kkt: rhs in the range of B^T projects to zero") {
    const int n = 10;
    std::mt19937_64 rng(4);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd B(2, n);
    for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < n; ++j) B(i, j) = gauss(rng);
    Eigen::VectorXd mu(2);
    mu << 1.3, -0.7;

    kkt::SaddleSystem sys;
    sys.K = sparse_from_dense(Eigen::MatrixXd::Identity(n, n));
    sys.B = rows_from_dense(B);
    sys.f = B.transpose() * mu;

    const kkt::Result res = kkt::solve(sys);
    CHECK(res.d.norm() <= 1e-10 * sys.f.norm());
    CHECK((res.lambda - mu).norm() <= 1e-9 * mu.norm());
}

TEST_CASE("kkt: dense oracle on random bordered systems") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> pick_n(8, 60);
    std::uniform_int_distribution<int> pick_m(1, 12);

    for (int trial = 0; trial < 100; ++trial) {
        const int n = pick_n(rng);
        const int m = std::min(pick_m(rng), n / 2);
        const Eigen::MatrixXd K = random_spd(n, rng);
        Eigen::MatrixXd B(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) B(i, j) = gauss(rng);
        Eigen::VectorXd f(n);
        for (int i = 0; i < n; ++i) f[i] = gauss(rng);

        kkt::SaddleSystem sys;
        sys.K = sparse_from_dense(K);
        sys.B = rows_from_dense(B);
        sys.f = f;
        const kkt::Result res = kkt::solve(sys);

        const Eigen::VectorXd oracle = dense_bordered_solve(K, B, f);
        const Eigen::VectorXd d_ref = oracle.head(n);
        const Eigen::VectorXd l_ref = oracle.tail(m);
        CHECK((res.d - d_ref).norm() <= 1e-10 * std::max(1.0, d_ref.norm()));
        CHECK((res.lambda - l_ref).norm() <= 1e-10 * std::max(1.0, l_ref.norm()));

        // returned diagnostics honor their own bounds
        CHECK(res.residual_primal <= 1e-9);
        CHECK(res.residual_constraint <= 1e-9);
        CHECK((B * res.d).norm() <= 1e-9 * std::max(1.0, res.d.norm()));

        // energy consistency d^T K d = d^T f
        CHECK(res.d.dot(K * res.d) ==
              doctest::Approx(res.d.dot(f)).epsilon(1e-9));
    }
}

TEST_CASE("kkt: redundant constraint rows are dropped, solution unchanged") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 24;
    const Eigen::MatrixXd K = random_spd(n, rng);
    Eigen::MatrixXd B(3, n);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = gauss(rng);
    B.row(2) = 2.0 * B.row(0) - 0.5 * B.row(1);  // dependent
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f[i] = gauss(rng);

    kkt::SaddleSystem sys;
    sys.K = sparse_from_dense(K);
    sys.B = rows_from_dense(B);
    sys.f = f;
    const kkt::Result res = kkt::solve(sys);
    CHECK(res.dropped_rows.size() == 1);
    REQUIRE(res.lambda.size() == 3);

    const Eigen::VectorXd oracle = dense_bordered_solve(K, B.topRows(2), f);
    CHECK((res.d - oracle.head(n)).norm() <= 1e-10 * std::max(1.0, oracle.head(n).norm()));
    CHECK((B * res.d).norm() <= 1e-9 * std::max(1.0, res.d.norm()));
}

TEST_CASE("kkt: deterministic across repeated solves and solver reuse") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 30;
    const Eigen::MatrixXd K = random_spd(n, rng);
    Eigen::MatrixXd B(4, n);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = gauss(rng);
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f[i] = gauss(rng);

    kkt::SaddleSystem sys;
    sys.K = sparse_from_dense(K);
    sys.B = rows_from_dense(B);
    sys.f = f;

    const kkt::Result a = kkt::solve(sys);
    const kkt::Result b = kkt::solve(sys);
    CHECK(a.d == b.d);
    CHECK(a.lambda == b.lambda);

    // a reused Solver (pattern cache warm) must agree bitwise too
    kkt::Solver solver;
    const kkt::Result c = solver.solve(sys);
    const kkt::Result d = solver.solve(sys);
    CHECK(c.d == d.d);
    CHECK((a.d - c.d).norm() <= 1e-13 * std::max(1.0, a.d.norm()));
}

TEST_CASE("kkt: unsolvable system raises step-solve-failure") {
    // K singular on ker B and f incompatible: expect a loud failure
    const int n = 6;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    kkt::SaddleSystem sys;
    sys.K = sparse_from_dense(K);
    sys.B.ndof = n;
    sys.f = Eigen::VectorXd::Ones(n);
    CHECK_THROWS_AS(kkt::solve(sys), StepSolveFailure);
}
