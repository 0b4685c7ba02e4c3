#include "curveflow/kkt.hpp"

#include <algorithm>
#include <numeric>

#include "curveflow/errors.hpp"

namespace curveflow {
namespace kkt {

namespace {

SparseMat bordered_matrix(const SparseMat& K, const ConstraintSystem& B,
                          const std::vector<int>& keep) {
    const int n = static_cast<int>(K.rows());
    const int m = static_cast<int>(keep.size());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(K.nonZeros() + 2 * 6 * m);
    for (int k = 0; k < K.outerSize(); ++k)
        for (SparseMat::InnerIterator it(K, k); it; ++it)
            trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int r = 0; r < m; ++r) {
        const ConstraintRow& row = B.rows[keep[r]];
        for (size_t i = 0; i < row.idx.size(); ++i) {
            trips.emplace_back(n + r, row.idx[i], row.coef[i]);
            trips.emplace_back(row.idx[i], n + r, row.coef[i]);
        }
    }
    SparseMat S(n + m, n + m);
    S.setFromTriplets(trips.begin(), trips.end());
    return S;
}

std::vector<int> independent_rows(const ConstraintSystem& B) {
    const int m = static_cast<int>(B.rows.size());
    if (m == 0) return {};
    Eigen::MatrixXd Bt = Eigen::MatrixXd::Zero(B.ndof, m);
    for (int r = 0; r < m; ++r)
        for (size_t i = 0; i < B.rows[r].idx.size(); ++i)
            Bt(B.rows[r].idx[i], r) = B.rows[r].coef[i];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Bt);
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    const auto& perm = qr.colsPermutation().indices();
    std::vector<int> keep(perm.data(), perm.data() + rank);
    std::sort(keep.begin(), keep.end());
    return keep;
}

}  // namespace

bool Solver::factor_and_solve(const SparseMat& bordered, const Eigen::VectorXd& rhs,
                              Eigen::VectorXd& sol) {
    const int n = static_cast<int>(bordered.rows());
    const long nnz = bordered.nonZeros();
    if (!analyzed_ || pattern_size_ != n || pattern_nnz_ != nnz) {
        lu_.analyzePattern(bordered);
        analyzed_ = true;
        pattern_size_ = n;
        pattern_nnz_ = nnz;
    }
    lu_.factorize(bordered);
    if (lu_.info() != Eigen::Success) return false;
    sol = lu_.solve(rhs);
    return lu_.info() == Eigen::Success;
}

Result Solver::solve(const SaddleSystem& system) {
    const int n = static_cast<int>(system.K.rows());
    const int m = static_cast<int>(system.B.rows.size());

    std::vector<int> keep;
    bool used_cache = false;
    if (cached_rows_ == static_cast<size_t>(m) && !cached_keep_.empty()) {
        keep = cached_keep_;
        used_cache = true;
    } else {
        keep.resize(m);
        std::iota(keep.begin(), keep.end(), 0);
    }

    auto attempt = [&](const std::vector<int>& rows, Result& out) -> bool {
        const SparseMat bordered = bordered_matrix(system.K, system.B, rows);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + rows.size());
        rhs.head(n) = system.f;
        Eigen::VectorXd sol;
        if (!factor_and_solve(bordered, rhs, sol)) return false;

        out.d = sol.head(n);
        out.lambda = Eigen::VectorXd::Zero(m);
        for (size_t r = 0; r < rows.size(); ++r) out.lambda[rows[r]] = sol[n + r];

        Eigen::VectorXd primal = system.K * out.d - system.f;
        for (size_t r = 0; r < rows.size(); ++r) {
            const ConstraintRow& row = system.B.rows[rows[r]];
            for (size_t i = 0; i < row.idx.size(); ++i)
                primal[row.idx[i]] += row.coef[i] * sol[n + r];
        }
        const double fn = system.f.norm();
        const double dn = out.d.norm();
        out.residual_primal = primal.norm() / (fn > 0.0 ? fn : 1.0);
        double bd = 0.0;
        for (int r = 0; r < m; ++r) bd += std::pow(system.B.rows[r].dot(out.d), 2);
        out.residual_constraint = std::sqrt(bd) / (dn > 0.0 ? dn : 1.0);
        return out.residual_primal <= 1e-9 && out.residual_constraint <= 1e-9;
    };

    Result result;
    if (attempt(keep, result)) {
        if (used_cache)
            for (int r = 0, k = 0; r < m; ++r)
                if (k >= static_cast<int>(keep.size()) || keep[k] != r)
                    result.dropped_rows.push_back(system.B.rows[r].label);
                else
                    ++k;
        return result;
    }

    // rank-deficient or ill-conditioned constraint block: drop dependent rows
    keep = independent_rows(system.B);
    cached_keep_ = keep;
    cached_rows_ = m;
    Result filtered;
    const bool ok = attempt(keep, filtered);
    for (int r = 0, k = 0; r < m; ++r)
        if (k >= static_cast<int>(keep.size()) || keep[k] != r)
            filtered.dropped_rows.push_back(system.B.rows[r].label);
        else
            ++k;
    if (!ok && (filtered.residual_primal > 1e-6 || filtered.residual_constraint > 1e-6 ||
                filtered.d.size() == 0))
        throw StepSolveFailure("kkt::solve: residuals above tolerance after rank filtering",
                               filtered.residual_primal, filtered.residual_constraint);
    return filtered;
}

Result solve(const SaddleSystem& system) {
    Solver solver;
    return solver.solve(system);
}

}  // namespace kkt
}  // namespace curveflow
