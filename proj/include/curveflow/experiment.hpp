#pragma once

#include <string>
#include <vector>

#include "curveflow/config.hpp"
#include "curveflow/flows.hpp"
#include "curveflow/init.hpp"

namespace curveflow {

// Fully resolved experiment: initial state, surface, bc, and numeric flow
// parameters (symbolic tokens resolved against the actual mesh size).
struct Scenario {
    ExperimentConfig cfg;
    FlowConfig flow;
    LevelSetSurface surface;
    BoundaryCondition bc;
    HermiteCurve u0;
    double h = 0.0;
};

Scenario build_scenario(const ExperimentConfig& cfg);

// CLI entry points; return process exit codes (0 ok, 2 config/schema, 3 solver).
int run_experiment(const std::string& config_path);
int compare_runs(const std::vector<std::string>& trace_paths, const std::string& svg_out);
int list_presets();

}  // namespace curveflow
