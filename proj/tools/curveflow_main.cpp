#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curveflow/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"constrained curve evolution experiments"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "config file (flat key = value)")->required();

    std::vector<std::string> traces;
    std::string svg_out;
    CLI::App* compare = app.add_subcommand("compare", "merge traces and overlay their energies");
    compare->add_option("traces", traces, "trace.csv paths")->required()->expected(-1);
    compare->add_option("--svg", svg_out, "write an overlay plot");

    CLI::App* presets = app.add_subcommand("presets", "preset configs");
    CLI::App* list = presets->add_subcommand("list", "list shipped presets");
    presets->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return curveflow::run_experiment(config_path);
    if (compare->parsed()) return curveflow::compare_runs(traces, svg_out);
    if (list->parsed()) return curveflow::list_presets();
    return 0;
}
