#include "curveflow/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "curveflow/errors.hpp"

namespace curveflow {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + value + "'");
    }
}

long parse_integer(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        long x = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key + ": not a boolean: '" + value + "'");
}

void check_symbolic(const std::string& key, const std::string& value) {
    static const std::set<std::string> tokens = {"h", "h/2", "h/4", "h^2", "h^3", "1-h"};
    if (tokens.count(value)) return;
    parse_number(key, value);
}

}  // namespace

double resolve_symbolic(const std::string& token, double h) {
    if (token == "h") return h;
    if (token == "h/2") return h / 2.0;
    if (token == "h/4") return h / 4.0;
    if (token == "h^2") return h * h;
    if (token == "h^3") return h * h * h;
    if (token == "1-h") return 1.0 - h;
    return parse_number("value", token);
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");

        if (key == "scenario") cfg.scenario = value;
        else if (key == "flow") cfg.flow = value;
        else if (key == "bc") cfg.bc = value;
        else if (key == "J") cfg.J = static_cast<int>(parse_integer(key, value));
        else if (key == "tau") { check_symbolic(key, value); cfg.tau = value; }
        else if (key == "gamma") { check_symbolic(key, value); cfg.gamma = value; }
        else if (key == "eps") { check_symbolic(key, value); cfg.eps = value; }
        else if (key == "delta") cfg.delta = parse_number(key, value);
        else if (key == "max_steps") cfg.max_steps = static_cast<int>(parse_integer(key, value));
        else if (key == "stop_tol") cfg.stop_tol = parse_number(key, value);
        else if (key == "quadrature_points") cfg.quadrature_points = static_cast<int>(parse_integer(key, value));
        else if (key == "midpoint_normal") cfg.midpoint_normal = parse_bool(key, value);
        else if (key == "snapshot_stride") cfg.snapshot_stride = static_cast<int>(parse_integer(key, value));
        else if (key == "R") cfg.R = parse_number(key, value);
        else if (key == "r") cfg.r = parse_number(key, value);
        else if (key == "a") cfg.a = static_cast<int>(parse_integer(key, value));
        else if (key == "b") cfg.b = static_cast<int>(parse_integer(key, value));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
        else if (key == "init_style") cfg.init_style = value;
        else if (key == "prerelax_steps") cfg.prerelax_steps = static_cast<int>(parse_integer(key, value));
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "emit_csv") cfg.emit_csv = parse_bool(key, value);
        else if (key == "emit_json") cfg.emit_json = parse_bool(key, value);
        else if (key == "emit_svg") cfg.emit_svg = parse_bool(key, value);
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }

    if (cfg.scenario.empty()) throw ConfigError("scenario: missing");
    static const std::set<std::string> scenarios = {"torus-bending", "torus-geodesic",
                                                    "torus-instability", "indentation", "custom"};
    if (!scenarios.count(cfg.scenario))
        throw ConfigError("scenario: unknown value '" + cfg.scenario + "'");
    if (cfg.scenario == "custom" && cfg.flow.empty())
        throw ConfigError("flow: required for scenario = custom");
    if (!cfg.flow.empty() && cfg.flow != "bending" && cfg.flow != "geodesic" && cfg.flow != "indentation")
        throw ConfigError("flow: unknown value '" + cfg.flow + "'");
    if (!cfg.bc.empty() && cfg.bc != "clamped-start" && cfg.bc != "both-ends-fixed" && cfg.bc != "periodic")
        throw ConfigError("bc: unknown value '" + cfg.bc + "'");
    if (cfg.init_style != "random" && cfg.init_style != "single-fold")
        throw ConfigError("init_style: unknown value '" + cfg.init_style + "'");
    if (cfg.J < 2) throw ConfigError("J: must be >= 2");
    if (cfg.max_steps != -1 && cfg.max_steps < 1) throw ConfigError("max_steps: must be >= 1");
    if (cfg.prerelax_steps < -1) throw ConfigError("prerelax_steps: must be >= 0");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("delta: must lie in (0, 1)");
    if (!(cfg.R > cfg.r && cfg.r > 0.0)) throw ConfigError("surface: requires R > r > 0");
    if (cfg.quadrature_points < 1 || cfg.quadrature_points > 10)
        throw ConfigError("quadrature_points: must lie in [1, 10]");
    if (cfg.snapshot_stride < 1) throw ConfigError("snapshot_stride: must be >= 1");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace curveflow
