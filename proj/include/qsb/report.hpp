#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsb {

/// One table cell. `value` is the measured quantity (integrated moment,
/// operator error, density), `reference` the target it is held against
/// (closed form, theorem bound, threshold), `slack` the signed margin and
/// `pass` its sign under the guard band.
struct ReportRow {
    long long n;
    double q;
    std::string function;
    std::string cell;
    double value;
    double reference;
    double slack;
    bool pass;
};

struct RunSummary {
    double min_slack;
    std::size_t rows;
    std::size_t failures;
    bool all_pass;
};

/// Round a double through its 15-significant-digit decimal representation.
/// Report values pass through this once so the CSV text and the JSON numbers
/// carry identical values field-for-field.
double round_sig15(double x);

/// Fixed-precision number formatting used by the CSV writer (%.15g).
std::string format_sig15(double x);

class Report {
  public:
    Report(std::string command, nlohmann::ordered_json config)
        : command_(std::move(command)), config_(std::move(config)) {}

    void add_row(long long n, double q, const std::string& function,
                 const std::string& cell, double value, double reference,
                 double slack, bool pass);

    const std::vector<ReportRow>& rows() const { return rows_; }
    const std::string& command() const { return command_; }
    RunSummary summary() const;
    bool all_pass() const { return summary().all_pass; }

    /// UTF-8, comma-separated, '\n' line endings, header always present.
    std::string to_csv() const;

    /// Single object {config, rows, summary}.
    nlohmann::ordered_json to_json() const;

  private:
    std::string command_;
    nlohmann::ordered_json config_;
    std::vector<ReportRow> rows_;
};

}  // namespace qsb
