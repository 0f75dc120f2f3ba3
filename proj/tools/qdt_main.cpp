#include "qdt/errors.hpp"
#include "qdt/runner.hpp"
#include "qdt/scenario_file.hpp"
#include "qdt/scenarios.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

std::string resolve_output(const std::string& name) {
    if (!name.empty() && name.front() == '/')
        return name;
    const char* dir = std::getenv("QDT_OUTPUT_DIR");
    std::string base = dir && *dir ? dir : ".";
    return base + "/" + name;
}

int finish(const qdt::RunReport& report) {
    if (report.exit_status != 0) {
        std::cerr << "error: " << report.error << "\n";
        return report.exit_status;
    }
    std::cout << report.summary;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum decision theory scenario runner"};
    app.require_subcommand(1);

    std::string run_file;
    CLI::App* run_cmd = app.add_subcommand("run", "run one scenario file");
    run_cmd->add_option("file", run_file, "scenario JSON file")->required();

    std::string sweep_file;
    std::string parameter;
    std::vector<double> values;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run one scenario per parameter value");
    sweep_cmd->add_option("file", sweep_file, "scenario JSON file")->required();
    sweep_cmd->add_option("--param", parameter, "numeric field, e.g. generator.rate or network.J")
        ->required();
    sweep_cmd->add_option("--values", values, "comma-separated values")
        ->required()
        ->delimiter(',');

    CLI::App* scen = app.add_subcommand("scenario", "built-in scenarios");
    scen->require_subcommand(1);
    CLI::App* list_cmd = scen->add_subcommand("list", "list the built-in scenarios");
    std::string show_name;
    std::string show_out;
    CLI::App* show_cmd =
        scen->add_subcommand("show", "emit a built-in scenario as a runnable JSON file");
    show_cmd->add_option("name", show_name, "scenario name (see scenario list)")->required();
    show_cmd->add_option("--out", show_out, "output path (default <name>.json)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed())
            return finish(qdt::run(qdt::parse_scenario(run_file)));

        if (sweep_cmd->parsed())
            return finish(qdt::sweep(qdt::parse_scenario(sweep_file), parameter, values));

        if (list_cmd->parsed()) {
            for (const qdt::ScenarioInfo& info : qdt::scenario_registry())
                std::cout << info.name << "\t" << info.description << "\n";
            return 0;
        }

        if (show_cmd->parsed()) {
            std::string text = qdt::builtin_scenario_json(show_name);
            std::string path = resolve_output(show_out.empty() ? show_name + ".json" : show_out);
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw qdt::Error("cannot write scenario file: " + path);
            out << text;
            std::cout << text;
            std::cerr << "wrote " << path << "\n";
            return 0;
        }
    } catch (const qdt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qdt::exit_code_for(e);
    }
    return 0;
}
