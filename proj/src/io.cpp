#include "curveflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "curveflow/errors.hpp"

namespace curveflow {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

}  // namespace

void write_trace_csv(const std::string& path, const FlowTrace& trace) {
    std::ofstream out = open_out(path);
    out << kTraceHeader << "\n";
    for (const TraceRecord& rec : trace.records) {
        const Diagnostics& d = rec.diag;
        out << rec.k << ',' << fmt17(rec.t) << ',' << fmt17(rec.energy) << ','
            << fmt17(d.bending) << ',' << fmt17(d.geodesic_gamma) << ',' << fmt17(d.penalty)
            << ',' << fmt17(d.indentation_total) << ',' << fmt17(d.step_norm) << ','
            << fmt17(d.arclength_violation) << ',' << fmt17(d.surface_violation) << ','
            << fmt17(d.penetration) << "\n";
    }
}

TraceTable read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read trace: " + path);
    TraceTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty trace: " + path);
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream rs(line);
        std::vector<double> row;
        while (std::getline(rs, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        if (row.size() != table.columns.size())
            throw std::runtime_error("ragged trace row in " + path);
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_snapshot_csv(const std::string& path, const HermiteCurve& u, bool cone_rays,
                        int samples_per_element) {
    std::ofstream out = open_out(path);
    out << (cone_rays ? "x,u1,u2,u3,ray1,ray2,ray3" : "x,u1,u2,u3") << "\n";
    const Partition& part = u.partition;
    auto emit = [&](double x) {
        Vec3 p = u.eval(x, 0);
        out << fmt17(x) << ',' << fmt17(p.x()) << ',' << fmt17(p.y()) << ',' << fmt17(p.z());
        if (cone_rays) {
            Vec3 ray = p.norm() > 0.0 ? Vec3(p / p.norm()) : Vec3::Zero();
            out << ',' << fmt17(ray.x()) << ',' << fmt17(ray.y()) << ',' << fmt17(ray.z());
        }
        out << "\n";
    };
    for (int e = 0; e < part.element_count(); ++e) {
        double x0 = part.nodes[e];
        double h = part.element_length(e);
        for (int i = 0; i < samples_per_element; ++i) emit(x0 + h * i / samples_per_element);
    }
    emit(part.periodic ? 0.0 : part.L);
}

void write_summary_json(const std::string& path, const ExperimentConfig& cfg, double h,
                        const FlowResult& result, double wall_seconds) {
    nlohmann::json j;
    j["parameters"] = {
        {"scenario", cfg.scenario},
        {"flow", cfg.flow},
        {"bc", cfg.bc},
        {"J", cfg.J},
        {"h", h},
        {"tau", cfg.tau},
        {"gamma", cfg.gamma},
        {"eps", cfg.eps},
        {"delta", cfg.delta},
        {"max_steps", cfg.max_steps},
        {"stop_tol", cfg.stop_tol},
        {"quadrature_points", cfg.quadrature_points},
        {"midpoint_normal", cfg.midpoint_normal},
        {"snapshot_stride", cfg.snapshot_stride},
        {"R", cfg.R},
        {"r", cfg.r},
        {"a", cfg.a},
        {"b", cfg.b},
        {"seed", cfg.seed},
        {"init_style", cfg.init_style},
        {"prerelax_steps", cfg.prerelax_steps},
    };
    const FlowTrace& trace = result.trace;
    const TraceRecord& last = trace.records.back();
    j["termination_reason"] = trace.termination_reason;
    j["accepted_steps"] = trace.accepted_steps;
    j["energy_monotone"] = trace.energy_monotone;
    j["cumulative_dissipation"] = trace.cumulative_dissipation;
    j["dropped_row_events"] = trace.dropped_row_events;
    j["solver_failed"] = result.solver_failed;
    if (!result.error.empty()) j["error"] = result.error;
    j["final"] = {
        {"k", last.k},
        {"t", last.t},
        {"energy", last.energy},
        {"bending", last.diag.bending},
        {"penalty", last.diag.penalty},
        {"indentation", last.diag.indentation_total},
        {"indentation_reported", last.diag.indentation_total - M_PI},
        {"arc_violation", last.diag.arclength_violation},
        {"surface_violation", last.diag.surface_violation},
        {"penetration", last.diag.penetration},
    };
    j["wall_time_seconds"] = wall_seconds;
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
}

namespace {

struct Range {
    double lo = 0.0, hi = 1.0;
    void grow(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
};

std::string fmtg(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

}  // namespace

std::string svg_line_plot(const std::vector<PlotSeries>& series, const std::string& x_label,
                          const std::string& y_label) {
    const int W = 640, H = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    Range rx, ry;
    bool first = true;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                rx = {s.x[i], s.x[i]};
                ry = {s.y[i], s.y[i]};
                first = false;
            }
            rx.grow(s.x[i]);
            ry.grow(s.y[i]);
        }
    if (rx.hi <= rx.lo) rx.hi = rx.lo + 1.0;
    if (ry.hi <= ry.lo) ry.hi = ry.lo + 1.0;
    auto px = [&](double x) { return ml + (x - rx.lo) / (rx.hi - rx.lo) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ry.lo) / (ry.hi - ry.lo) * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<g stroke=\"#444\" stroke-width=\"1\">"
        << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\"/>"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\"/></g>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n";
    for (int i = 0; i <= 4; ++i) {
        double xv = rx.lo + (rx.hi - rx.lo) * i / 4.0;
        double yv = ry.lo + (ry.hi - ry.lo) * i / 4.0;
        svg << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\">" << fmtg(xv) << "</text>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\">" << fmtg(yv) << "</text>\n";
        svg << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\"" << px(xv)
            << "\" y2=\"" << H - mb + 4 << "\" stroke=\"#444\"/>\n";
        svg << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
            << py(yv) << "\" stroke=\"#444\"/>\n";
    }
    svg << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    svg << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (mt + H - mb) / 2 << ")\">"
        << y_label << "</text>\n";
    for (size_t s = 0; s < series.size(); ++s) {
        svg << "<text x=\"" << W - mr - 10 << "\" y=\"" << mt + 16 + 16 * s
            << "\" text-anchor=\"end\" fill=\"" << colors[s % 6] << "\">" << series[s].label
            << "</text>\n";
    }
    svg << "</g>\n";
    for (size_t s = 0; s < series.size(); ++s) {
        svg << "<polyline fill=\"none\" stroke=\"" << colors[s % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < series[s].x.size(); ++i)
            svg << px(series[s].x[i]) << ',' << py(series[s].y[i]) << ' ';
        svg << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg(const std::string& path, const std::string& svg) {
    std::ofstream out = open_out(path);
    out << svg;
}

}  // namespace curveflow
