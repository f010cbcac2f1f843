#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "qsb/cli.hpp"

namespace {

void add_common_options(CLI::App* cmd, qsb::RunConfig& config, std::string& op_name,
                        std::string& format_name) {
    cmd->add_option("--operator", op_name, "Operator family: cai|modified|qsb|classical");
    cmd->add_option("--n", config.n_ladder, "n ladder (strictly increasing, each >= 2)");
    cmd->add_option("--q", config.q_values, "q values in (0,1]");
    cmd->add_option("--x", config.x_cells, "x evaluation cells (moments/compare)");
    cmd->add_option("--sequence", config.sequence, "q_n sequence: standard|statonly");
    cmd->add_option("--grid-max", config.grid_max, "grid upper end (nu)");
    cmd->add_option("--grid-points", config.grid_points, "grid point count");
    cmd->add_option("--format", format_name, "Output format: csv|json");
    cmd->add_option("--out", config.out_path, "Output path (default: stdout)");
}

qsb::OperatorFamily parse_family(const std::string& name) {
    if (name == "cai") return qsb::OperatorFamily::CaiPreserving;
    if (name == "modified") return qsb::OperatorFamily::ModifiedQ;
    if (name == "qsb") return qsb::OperatorFamily::QStancuBeta;
    if (name == "classical") return qsb::OperatorFamily::Classical;
    throw std::invalid_argument("unknown operator family '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stancu-Beta operator family: moment verification, convergence "
                 "tables and rate-bound checks"};
    app.require_subcommand(1);

    qsb::RunConfig config;
    std::string op_name = "cai";
    std::string format_name = "csv";

    auto* moments = app.add_subcommand("moments", "integrated vs closed-form moments");
    auto* converge = app.add_subcommand("converge", "error-vs-n tables along a q_n sequence");
    auto* bounds = app.add_subcommand("bounds", "rate-bound checks per grid point");
    auto* statistical = app.add_subcommand("statistical", "q_n sequence condition checks");
    auto* compare = app.add_subcommand("compare", "modified operator at q=1 vs classical");
    for (auto* cmd : {moments, converge, bounds, statistical, compare}) {
        add_common_options(cmd, config, op_name, format_name);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (moments->parsed()) config.command = qsb::Command::Moments;
        if (converge->parsed()) config.command = qsb::Command::Converge;
        if (bounds->parsed()) config.command = qsb::Command::Bounds;
        if (statistical->parsed()) config.command = qsb::Command::Statistical;
        if (compare->parsed()) config.command = qsb::Command::Compare;

        config.op_family = parse_family(op_name);
        if (format_name == "csv") {
            config.format = qsb::OutputFormat::Csv;
        } else if (format_name == "json") {
            config.format = qsb::OutputFormat::Json;
        } else {
            throw std::invalid_argument("unknown format '" + format_name + "'");
        }
        if (const char* tol = std::getenv("QSB_MOMENT_TOL")) {
            char* end = nullptr;
            const double v = std::strtod(tol, &end);
            if (end == tol || !(v > 0.0)) {
                throw std::invalid_argument("QSB_MOMENT_TOL must be a positive number");
            }
            config.moment_tol = v;
        }
        config.validate();

        const qsb::Report report = qsb::run(config);
        qsb::emit(report, config);
        if (!report.all_pass()) {
            const auto s = report.summary();
            std::cerr << "qsb: " << s.failures << " of " << s.rows
                      << " checks failed (min slack " << qsb::format_sig15(s.min_slack)
                      << ")\n";
            return 1;
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qsb: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qsb: error: " << e.what() << "\n";
        return 3;
    }
}
