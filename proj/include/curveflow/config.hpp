#pragma once

#include <cstdint>
#include <string>

#include "curveflow/flows.hpp"

namespace curveflow {

// Flat key = value experiment description; see README for the key list.
struct ExperimentConfig {
    std::string scenario;  // torus-bending | torus-geodesic | torus-instability | indentation | custom
    std::string flow;      // custom scenarios: bending | geodesic | indentation
    std::string bc;        // clamped-start | both-ends-fixed | periodic (scenario default if empty)

    int J = 80;
    std::string tau = "h";
    std::string gamma;  // empty: scenario default (0 bending, 1-h geodesic, 1 instability)
    std::string eps = "h^2";
    double delta = 0.25;
    int max_steps = -1;  // < 0: scenario default
    double stop_tol = -1.0;  // < 0: flow default 1e-8 (1 + I[u0])
    int quadrature_points = 4;
    bool midpoint_normal = true;
    int snapshot_stride = 20;

    double R = 2.0;
    double r = 1.0;
    int a = 1;
    int b = 2;
    std::uint64_t seed = 1;
    std::string init_style = "random";  // indentation: random | single-fold
    int prerelax_steps = -1;            // < 0: scenario default (2 torus, 0 indentation)

    std::string out_dir = "out";
    bool emit_csv = true;
    bool emit_json = true;
    bool emit_svg = false;
};

// "h", "h/2", "h/4", "h^2", "h^3", "1-h", or a plain number.
double resolve_symbolic(const std::string& token, double h);

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace curveflow
