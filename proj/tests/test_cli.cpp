#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qsb/cli.hpp"

using namespace qsb;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.n_ladder = {5, 10};
    c.q_values = {0.5, 0.9};
    c.x_cells = {0.5, 2.0};
    c.grid_points = 51;
    return c;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

TEST_CASE("config validation") {
    RunConfig c = small_config();
    c.n_ladder = {};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.n_ladder = {10, 5};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.n_ladder = {1, 5};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.q_values = {1.2};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.sequence = "riemann";
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_NOTHROW(small_config().validate());
}

TEST_CASE("moments run: residuals pass and the reference column carries the "
          "closed forms") {
    RunConfig c = small_config();
    c.op_family = OperatorFamily::ModifiedQ;
    const Report r = run_moments(c);
    CHECK(r.all_pass());
    CHECK(r.rows().size() == 2 * 2 * 2 * 3);
    for (const auto& row : r.rows()) {
        if (row.function == "1" && row.q == 0.9) {
            CHECK(row.reference == 0.9);  // L*(1; q, x) = q
        }
        CHECK(std::fabs(row.value - row.reference) <= c.moment_tol);
    }
}

TEST_CASE("moments run covers all families") {
    for (OperatorFamily fam :
         {OperatorFamily::Classical, OperatorFamily::QStancuBeta,
          OperatorFamily::ModifiedQ, OperatorFamily::CaiPreserving}) {
        RunConfig c = small_config();
        c.n_ladder = {5};
        c.q_values = {0.9};
        c.op_family = fam;
        const Report r = run_moments(c);
        CHECK(r.all_pass());
    }
}

TEST_CASE("converge run: zero test-set errors, bounded t error, cai only") {
    RunConfig c = small_config();
    c.command = Command::Converge;
    const Report r = run_converge(c);
    CHECK(r.all_pass());
    bool saw_sup_t = false;
    for (const auto& row : r.rows()) {
        if (row.function == "1" || row.function == "t^2") {
            CHECK(row.value <= c.moment_tol);
        }
        if (row.function == "t" && row.cell.rfind("sup", 0) == 0) {
            saw_sup_t = true;
            CHECK(row.value <= row.reference + 1e-9);
        }
    }
    CHECK(saw_sup_t);

    RunConfig bad = small_config();
    bad.command = Command::Converge;
    bad.op_family = OperatorFamily::ModifiedQ;
    CHECK_THROWS_AS(run_converge(bad), std::invalid_argument);
}

TEST_CASE("converge run appends the density ladder for the statistical-only "
          "sequence") {
    RunConfig c = small_config();
    c.command = Command::Converge;
    c.sequence = "statonly";
    c.n_ladder = {5, 10};
    const Report r = run_converge(c);
    CHECK(r.all_pass());
    std::size_t ladder_rows = 0;
    for (const auto& row : r.rows()) {
        if (row.cell.rfind("density", 0) == 0 || row.cell.rfind("final", 0) == 0) {
            ++ladder_rows;
        }
    }
    CHECK(ladder_rows == 2 * (4 + 1));  // two eps ladders over 4 horizons + finals
}

TEST_CASE("bounds run: every theorem row holds on a small matrix") {
    RunConfig c = small_config();
    c.command = Command::Bounds;
    c.n_ladder = {5, 10};
    c.q_values = {0.9};
    c.grid_points = 26;
    const Report r = run_bounds(c);
    CHECK(r.all_pass());
    bool saw5 = false, saw5star = false, saw6 = false, sawr3 = false;
    for (const auto& row : r.rows()) {
        saw5 = saw5 || row.cell.rfind("thm5:", 0) == 0;
        saw5star = saw5star || row.cell.rfind("thm5*:", 0) == 0;
        saw6 = saw6 || row.cell.rfind("thm6:", 0) == 0;
        sawr3 = sawr3 || row.cell.rfind("thm6r3:", 0) == 0;
        CHECK(row.slack >= -1e-9);
    }
    CHECK(saw5);
    CHECK(saw5star);
    CHECK(saw6);
    CHECK(sawr3);
}

TEST_CASE("statistical run: standard passes, statonly flags non-ordinary") {
    RunConfig c = small_config();
    c.command = Command::Statistical;
    const Report std_r = run_statistical(c);
    CHECK(std_r.all_pass());

    c.sequence = "statonly";
    const Report so_r = run_statistical(c);
    CHECK(so_r.all_pass());
    bool found = false;
    for (const auto& row : so_r.rows()) {
        if (row.cell == "ordinary_convergence") {
            found = true;
            CHECK(row.value == 0.0);      // the tail-window check fails...
            CHECK(row.reference == 0.0);  // ...exactly as declared
            CHECK(row.pass);
        }
    }
    CHECK(found);
}

TEST_CASE("compare run: q = 1 reduction to the classical operator") {
    RunConfig c = small_config();
    c.command = Command::Compare;
    c.n_ladder = {5, 10};
    const Report r = run_compare(c);
    CHECK(r.all_pass());
    for (const auto& row : r.rows()) {
        CHECK(row.value <= 1e-8);
        CHECK(row.q == 1.0);
    }
}

TEST_CASE("CSV schema: fixed header and one row per cell") {
    RunConfig c = small_config();
    const Report r = run_moments(c);
    const std::string csv = r.to_csv();
    const auto lines = split(csv, '\n');
    CHECK(csv.back() == '\n');
    CHECK(lines.front() == "n,q,function,cell,value,reference,slack,pass");
    CHECK(lines.size() == r.rows().size() + 1);  // header + one line per row
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(split(lines[i], ',').size() == 8);
    }
}

TEST_CASE("CSV and JSON carry identical values field-for-field") {
    RunConfig c = small_config();
    const Report r = run_moments(c);
    const auto lines = split(r.to_csv(), '\n');
    const nlohmann::ordered_json j = r.to_json();
    REQUIRE(j["rows"].size() == lines.size() - 1);
    for (std::size_t i = 0; i < j["rows"].size(); ++i) {
        const auto fields = split(lines[i + 1], ',');
        const auto& row = j["rows"][i];
        CHECK(std::stoll(fields[0]) == row["n"].get<long long>());
        CHECK(std::strtod(fields[1].c_str(), nullptr) == row["q"].get<double>());
        CHECK(fields[2] == row["function"].get<std::string>());
        CHECK(fields[3] == row["cell"].get<std::string>());
        CHECK(std::strtod(fields[4].c_str(), nullptr) == row["value"].get<double>());
        CHECK(std::strtod(fields[5].c_str(), nullptr) == row["reference"].get<double>());
        CHECK(std::strtod(fields[6].c_str(), nullptr) == row["slack"].get<double>());
        CHECK((fields[7] == "1") == row["pass"].get<bool>());
    }
}

TEST_CASE("output is deterministic for a fixed config") {
    RunConfig c = small_config();
    c.command = Command::Bounds;
    c.n_ladder = {5};
    c.q_values = {0.9};
    c.grid_points = 21;
    const std::string once = run_bounds(c).to_csv();
    const std::string twice = run_bounds(c).to_csv();
    CHECK(once == twice);
    CHECK(run_bounds(c).to_json().dump() == run_bounds(c).to_json().dump());
}

TEST_CASE("summary: exit-code source of truth") {
    RunConfig c = small_config();
    const Report r = run_moments(c);
    const RunSummary s = r.summary();
    CHECK(s.failures == 0);
    CHECK(s.all_pass);
    CHECK(s.rows == r.rows().size());
    CHECK(s.min_slack > 0.0);
}
