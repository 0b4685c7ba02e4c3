#pragma once

#include <string>
#include <vector>

#include "curveflow/config.hpp"
#include "curveflow/flows.hpp"

namespace curveflow {

inline constexpr const char* kTraceHeader =
    "k,t,energy,bending,geodesic,penalty,indentation,step_norm,arc_violation,"
    "surface_violation,penetration";

struct TraceTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_trace_csv(const std::string& path, const FlowTrace& trace);
TraceTable read_trace_csv(const std::string& path);

// Sampled polyline of the curve; with cone_rays also the unit rays u/|u|
// from the origin used by the indentation snapshots.
void write_snapshot_csv(const std::string& path, const HermiteCurve& u, bool cone_rays,
                        int samples_per_element = 8);

void write_summary_json(const std::string& path, const ExperimentConfig& cfg, double h,
                        const FlowResult& result, double wall_seconds);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string svg_line_plot(const std::vector<PlotSeries>& series, const std::string& x_label,
                          const std::string& y_label);
void write_svg(const std::string& path, const std::string& svg);

}  // namespace curveflow
