#include "qsb/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

namespace qsb {

std::string format_sig15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

double round_sig15(double x) {
    return std::strtod(format_sig15(x).c_str(), nullptr);
}

void Report::add_row(long long n, double q, const std::string& function,
                     const std::string& cell, double value, double reference,
                     double slack, bool pass) {
    // values pass through the 15-digit decimal grid once, so CSV text and
    // JSON numbers agree field-for-field
    rows_.push_back({n, round_sig15(q), function, cell, round_sig15(value),
                     round_sig15(reference), round_sig15(slack), pass});
}

RunSummary Report::summary() const {
    RunSummary s{0.0, rows_.size(), 0, true};
    bool first = true;
    for (const auto& r : rows_) {
        if (first || r.slack < s.min_slack) s.min_slack = r.slack;
        first = false;
        if (!r.pass) ++s.failures;
    }
    s.all_pass = (s.failures == 0);
    return s;
}

std::string Report::to_csv() const {
    std::string out = "n,q,function,cell,value,reference,slack,pass\n";
    for (const auto& r : rows_) {
        out += std::to_string(r.n);
        out += ',';
        out += format_sig15(r.q);
        out += ',';
        out += r.function;
        out += ',';
        out += r.cell;
        out += ',';
        out += format_sig15(r.value);
        out += ',';
        out += format_sig15(r.reference);
        out += ',';
        out += format_sig15(r.slack);
        out += ',';
        out += r.pass ? '1' : '0';
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["config"] = config_;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
        rows.push_back({{"n", r.n},
                        {"q", r.q},
                        {"function", r.function},
                        {"cell", r.cell},
                        {"value", r.value},
                        {"reference", r.reference},
                        {"slack", r.slack},
                        {"pass", r.pass}});
    }
    j["rows"] = std::move(rows);
    const RunSummary s = summary();
    j["summary"] = {{"min_slack", s.min_slack},
                    {"rows", s.rows},
                    {"failures", s.failures},
                    {"all_pass", s.all_pass}};
    return j;
}

}  // namespace qsb
