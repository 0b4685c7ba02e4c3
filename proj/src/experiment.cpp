#include "curveflow/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "curveflow/errors.hpp"
#include "curveflow/io.hpp"

namespace curveflow {

namespace fs = std::filesystem;

namespace {

struct ScenarioDefaults {
    FlowKind kind;
    std::string bc;
    std::string gamma;
    int max_steps;
    int prerelax;
};

ScenarioDefaults defaults_for(const ExperimentConfig& cfg) {
    if (cfg.scenario == "torus-bending")
        return {FlowKind::bending, "clamped-start", "0", 300, 2};
    if (cfg.scenario == "torus-geodesic")
        return {FlowKind::geodesic, "clamped-start", "1-h", 300, 2};
    if (cfg.scenario == "torus-instability")
        return {FlowKind::geodesic, "periodic", "1", 500, 2};
    if (cfg.scenario == "indentation")
        return {FlowKind::indentation, "periodic", "0", 5000, 0};
    // custom
    FlowKind kind = FlowKind::bending;
    if (cfg.flow == "geodesic") kind = FlowKind::geodesic;
    else if (cfg.flow == "indentation") kind = FlowKind::indentation;
    return {kind, kind == FlowKind::indentation ? "periodic" : "clamped-start", "0",
            1000, kind == FlowKind::indentation ? 0 : 2};
}

BcKind bc_kind_from(const std::string& name) {
    if (name == "clamped-start") return BcKind::clamped_start;
    if (name == "both-ends-fixed") return BcKind::both_ends_fixed;
    return BcKind::periodic;
}

}  // namespace

Scenario build_scenario(const ExperimentConfig& cfg) {
    const ScenarioDefaults def = defaults_for(cfg);

    Scenario sc;
    sc.cfg = cfg;
    sc.flow.kind = def.kind;
    sc.bc.kind = bc_kind_from(cfg.bc.empty() ? def.bc : cfg.bc);

    const bool on_sphere = def.kind == FlowKind::indentation;
    sc.surface = on_sphere ? sphere() : torus(cfg.R, cfg.r);

    if (on_sphere) {
        if (sc.bc.kind != BcKind::periodic)
            throw ConfigError("bc: the indentation flow is periodic");
        sc.u0 = cfg.init_style == "single-fold"
                    ? single_fold_biased_admissible(cfg.seed, cfg.J, cfg.delta)
                    : random_periodic_admissible(cfg.seed, cfg.J, cfg.delta);
    } else {
        ParametricCurve seed = torus_seed(cfg.a, cfg.b, cfg.R, cfg.r);
        HermiteCurve u = reparametrize_arclength(seed, cfg.J);
        sc.u0 = project_to_admissible(u, sc.surface, sc.bc);
    }
    sc.h = sc.u0.partition.mesh_size();

    sc.flow.tau = resolve_symbolic(cfg.tau, sc.h);
    sc.flow.gamma = resolve_symbolic(cfg.gamma.empty() ? def.gamma : cfg.gamma, sc.h);
    sc.flow.eps = resolve_symbolic(cfg.eps, sc.h);
    sc.flow.delta = cfg.delta;
    sc.flow.max_steps = cfg.max_steps > 0 ? cfg.max_steps : def.max_steps;
    sc.flow.stop_tol = cfg.stop_tol;
    sc.flow.quadrature_points = cfg.quadrature_points;
    sc.flow.midpoint_normal = cfg.midpoint_normal;
    sc.flow.snapshot_stride = cfg.snapshot_stride;
    if (!(sc.flow.tau > 0.0)) throw ConfigError("tau: must resolve to a positive value");
    if (!(sc.flow.gamma >= 0.0 && sc.flow.gamma <= 1.0))
        throw ConfigError("gamma: must resolve into [0, 1]");
    if (def.kind == FlowKind::indentation && !(sc.flow.eps > 0.0))
        throw ConfigError("eps: must resolve to a positive value");

    const int prerelax = cfg.prerelax_steps >= 0 ? cfg.prerelax_steps : def.prerelax;
    if (prerelax > 0) {
        const SparseMat M = mass_matrix(sc.u0.partition);
        const SparseMat A = bending_matrix(sc.u0.partition);
        kkt::Solver solver;
        for (int i = 0; i < prerelax; ++i)
            sc.u0 = step_bending(sc.u0, sc.surface, sc.bc, sc.flow.tau, M, A, &solver).u_next;
        sc.u0 = project_to_admissible(sc.u0, sc.surface, sc.bc,
                                      on_sphere ? std::optional<double>(cfg.delta) : std::nullopt);
    }
    return sc;
}

int run_experiment(const std::string& config_path) {
    ExperimentConfig cfg;
    try {
        cfg = parse_config_file(config_path);
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    }

    Scenario sc;
    try {
        sc = build_scenario(cfg);
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "scenario setup failed: " << err.what() << "\n";
        return 3;
    }

    std::string out_dir = cfg.out_dir;
    if (const char* env = std::getenv("CURVEFLOW_OUT"); env && *env) out_dir = env;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << out_dir << ": " << ec.message() << "\n";
        return 3;
    }

    const auto t0 = std::chrono::steady_clock::now();
    FlowResult result;
    try {
        result = run(sc.flow, sc.u0, sc.surface, sc.bc);
    } catch (const std::exception& err) {
        std::cerr << "flow failed: " << err.what() << "\n";
        return 3;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const bool cone = sc.flow.kind == FlowKind::indentation;
    if (cfg.emit_csv) {
        write_trace_csv((fs::path(out_dir) / "trace.csv").string(), result.trace);
        for (const auto& [k, u] : result.snapshots) {
            char name[32];
            std::snprintf(name, sizeof(name), "snapshot_%04d.csv", k);
            write_snapshot_csv((fs::path(out_dir) / name).string(), u, cone);
        }
    }
    if (cfg.emit_json)
        write_summary_json((fs::path(out_dir) / "summary.json").string(), cfg, sc.h, result, wall);
    if (cfg.emit_svg) {
        PlotSeries energy{"energy", {}, {}};
        PlotSeries pen{"penetration", {}, {}};
        for (const TraceRecord& rec : result.trace.records) {
            energy.x.push_back(rec.k);
            energy.y.push_back(rec.energy);
            pen.x.push_back(rec.k);
            pen.y.push_back(rec.diag.penetration);
        }
        write_svg((fs::path(out_dir) / "energy.svg").string(),
                  svg_line_plot({energy}, "step", "energy"));
        if (cone)
            write_svg((fs::path(out_dir) / "penetration.svg").string(),
                      svg_line_plot({pen}, "step", "penetration"));
    }

    if (result.solver_failed) {
        std::cerr << "solver failure: " << result.error << "\n";
        return 3;
    }
    std::cout << "wrote " << out_dir << " (" << result.trace.accepted_steps << " steps, "
              << result.trace.termination_reason << ")\n";
    return 0;
}

int compare_runs(const std::vector<std::string>& trace_paths, const std::string& svg_out) {
    std::vector<TraceTable> tables;
    std::vector<std::string> stems;
    try {
        for (const std::string& p : trace_paths) {
            tables.push_back(read_trace_csv(p));
            stems.push_back(fs::path(p).parent_path().filename().string().empty()
                                ? fs::path(p).stem().string()
                                : fs::path(p).parent_path().filename().string());
        }
    } catch (const std::exception& err) {
        std::cerr << "compare error: " << err.what() << "\n";
        return 2;
    }
    for (size_t i = 1; i < tables.size(); ++i)
        if (tables[i].columns != tables[0].columns) {
            std::cerr << "compare error: trace schema mismatch: " << trace_paths[i] << "\n";
            return 2;
        }

    std::string out_dir = ".";
    if (const char* env = std::getenv("CURVEFLOW_OUT"); env && *env) {
        out_dir = env;
        std::error_code ec;
        fs::create_directories(out_dir, ec);
    }
    const std::string merged_path = (fs::path(out_dir) / "compare.csv").string();
    {
        std::ofstream out(merged_path);
        if (!out) {
            std::cerr << "compare error: cannot write " << merged_path << "\n";
            return 2;
        }
        out << "k";
        for (size_t i = 0; i < tables.size(); ++i)
            for (size_t c = 1; c < tables[i].columns.size(); ++c)
                out << ',' << stems[i] << '_' << tables[i].columns[c];
        out << "\n";
        size_t rows = 0;
        for (const auto& t : tables) rows = std::max(rows, t.rows.size());
        char buf[40];
        for (size_t rIdx = 0; rIdx < rows; ++rIdx) {
            out << rIdx;
            for (const auto& t : tables)
                for (size_t c = 1; c < t.columns.size(); ++c) {
                    out << ',';
                    if (rIdx < t.rows.size()) {
                        std::snprintf(buf, sizeof(buf), "%.17g", t.rows[rIdx][c]);
                        out << buf;
                    }
                }
            out << "\n";
        }
    }
    if (!svg_out.empty()) {
        std::vector<PlotSeries> series;
        for (size_t i = 0; i < tables.size(); ++i) {
            PlotSeries s{stems[i], {}, {}};
            size_t kcol = 0, ecol = 2;
            for (size_t c = 0; c < tables[i].columns.size(); ++c) {
                if (tables[i].columns[c] == "k") kcol = c;
                if (tables[i].columns[c] == "energy") ecol = c;
            }
            for (const auto& row : tables[i].rows) {
                s.x.push_back(row[kcol]);
                s.y.push_back(row[ecol]);
            }
            series.push_back(std::move(s));
        }
        fs::path svg_path(svg_out);
        if (svg_path.is_relative()) svg_path = fs::path(out_dir) / svg_path;
        write_svg(svg_path.string(), svg_line_plot(series, "step", "energy"));
    }
    std::cout << "wrote " << merged_path << "\n";
    return 0;
}

int list_presets() {
    std::vector<fs::path> candidates;
    if (const char* env = std::getenv("CURVEFLOW_PRESETS"); env && *env)
        candidates.emplace_back(env);
    candidates.emplace_back("presets");
    candidates.emplace_back("../presets");
    candidates.emplace_back("../../presets");
    for (const fs::path& dir : candidates) {
        std::error_code ec;
        if (!fs::is_directory(dir, ec)) continue;
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.path().extension() == ".cfg") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            std::cerr << "no presets found in " << dir.string() << "\n";
            return 2;
        }
        for (const fs::path& f : files) {
            std::ifstream in(f);
            std::string line, desc;
            while (std::getline(in, line)) {
                if (line.rfind("#", 0) == 0) {
                    desc = line.substr(1);
                    size_t a = desc.find_first_not_of(' ');
                    desc = a == std::string::npos ? "" : desc.substr(a);
                    break;
                }
                if (!line.empty()) break;
            }
            std::cout << f.stem().string();
            if (!desc.empty()) std::cout << " — " << desc;
            std::cout << "\n";
        }
        return 0;
    }
    std::cerr << "no presets directory found (set CURVEFLOW_PRESETS)\n";
    return 2;
}

}  // namespace curveflow
