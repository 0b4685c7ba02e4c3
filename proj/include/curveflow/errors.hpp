#pragma once

#include <stdexcept>
#include <string>

namespace curveflow {

struct SingularSurfacePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProjectionFailure : std::runtime_error {
    double last_residual;
    explicit ProjectionFailure(const std::string& what, double residual)
        : std::runtime_error(what), last_residual(residual) {}
};

struct DegenerateCurve : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateTangent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepSolveFailure : std::runtime_error {
    double residual_primal;
    double residual_constraint;
    StepSolveFailure(const std::string& what, double primal, double constraint)
        : std::runtime_error(what), residual_primal(primal), residual_constraint(constraint) {}
};

struct InvalidInitialState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace curveflow
