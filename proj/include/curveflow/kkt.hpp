#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "curveflow/assembly.hpp"

namespace curveflow {
namespace kkt {

struct SaddleSystem {
    SparseMat K;  // symmetric, positive definite on ker B
    ConstraintSystem B;
    Eigen::VectorXd f;
};

struct Result {
    Eigen::VectorXd d;
    Eigen::VectorXd lambda;  // one entry per constraint row (zero where dropped)
    double residual_primal = 0.0;      // ||K d + B^T lambda - f|| / ||f||
    double residual_constraint = 0.0;  // ||B d|| / ||d||
    std::vector<std::string> dropped_rows;
};

// Direct solve of [K B^T; B 0][d; lambda] = [f; 0].  Redundant constraint
// rows (rank-deficient B) are detected and dropped, with their labels
// reported.  Throws StepSolveFailure when the residuals exceed 1e-6.
class Solver {
public:
    Result solve(const SaddleSystem& system);

private:
    Eigen::SparseLU<SparseMat> lu_;
    bool analyzed_ = false;
    int pattern_size_ = -1;
    long pattern_nnz_ = -1;
    std::vector<int> cached_keep_;  // surviving rows from a previous rank filter
    size_t cached_rows_ = 0;

    bool factor_and_solve(const SparseMat& bordered, const Eigen::VectorXd& rhs,
                          Eigen::VectorXd& sol);
};

Result solve(const SaddleSystem& system);

}  // namespace kkt
}  // namespace curveflow
