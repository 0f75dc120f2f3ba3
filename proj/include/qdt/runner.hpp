#pragma once

#include <string>
#include <vector>

#include "qdt/errors.hpp"
#include "qdt/scenario_file.hpp"

namespace qdt {

struct RunReport {
    int exit_status = 0;
    std::vector<std::string> outputs; // files written
    std::string summary;              // JSON text (also written to file)
    double wall_seconds = 0.0;
    std::string error; // diagnostic when exit_status != 0
};

// Dispatches the scenario to the matching module, writes the CSV
// trajectory (where the kind has one) and a JSON summary.  Module
// errors are caught and encoded in the exit status.
RunReport run(const ScenarioFile& scenario);

// One run per value of the addressed numeric field; workers compute in
// parallel, a single collector writes the files plus an index mapping
// value -> outputs.
RunReport sweep(const ScenarioFile& scenario, const std::string& parameter,
                const std::vector<double>& values);

// 2 schema, 4 divergence, 3 other model errors, 1 anything else.
int exit_code_for(const Error& e);

// Deterministic float formatting shared by every CSV writer.
std::string format_number(double x);

} // namespace qdt
