#pragma once

#include <string>
#include <vector>

#include "qsb/operators.hpp"
#include "qsb/report.hpp"

namespace qsb {

enum class Command { Moments, Converge, Bounds, Statistical, Compare };
enum class OutputFormat { Csv, Json };

/// Parsed run configuration. Defaults are the standard test matrix:
/// n in {5,10,50,100,500,1000}, q in {0.5,0.9,0.99}, grid [0,5] with 501
/// points, x cells {0.5,1,2,5}, moment tolerance 1e-8 (QSB_MOMENT_TOL
/// overrides).
struct RunConfig {
    Command command = Command::Moments;
    OperatorFamily op_family = OperatorFamily::CaiPreserving;
    std::vector<int> n_ladder = {5, 10, 50, 100, 500, 1000};
    std::vector<double> q_values = {0.5, 0.9, 0.99};
    std::vector<double> x_cells = {0.5, 1.0, 2.0, 5.0};
    std::string sequence = "standard";  // standard | statonly
    double grid_max = 5.0;
    int grid_points = 501;
    OutputFormat format = OutputFormat::Csv;
    std::string out_path;  // empty => stdout
    double moment_tol = 1e-8;

    void validate() const;  // throws std::invalid_argument on bad configs
};

Report run_moments(const RunConfig& config);
Report run_converge(const RunConfig& config);
Report run_bounds(const RunConfig& config);
Report run_statistical(const RunConfig& config);
Report run_compare(const RunConfig& config);

/// Dispatch on config.command.
Report run(const RunConfig& config);

/// Serialize per config.format and write to config.out_path or stdout.
/// Returns the emitted text.
std::string emit(const Report& report, const RunConfig& config);

const char* command_name(Command c);

}  // namespace qsb
