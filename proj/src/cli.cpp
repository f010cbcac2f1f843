#include "qsb/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include "qsb/convergence.hpp"
#include "qsb/statconv.hpp"

namespace qsb {

const char* command_name(Command c) {
    switch (c) {
        case Command::Moments: return "moments";
        case Command::Converge: return "converge";
        case Command::Bounds: return "bounds";
        case Command::Statistical: return "statistical";
        case Command::Compare: return "compare";
    }
    return "?";
}

void RunConfig::validate() const {
    if (n_ladder.empty()) throw std::invalid_argument("config: n ladder must be non-empty");
    for (std::size_t i = 0; i < n_ladder.size(); ++i) {
        if (n_ladder[i] < 2) throw std::invalid_argument("config: every n must be >= 2");
        if (i > 0 && n_ladder[i] <= n_ladder[i - 1]) {
            throw std::invalid_argument("config: n ladder must be strictly increasing");
        }
    }
    if (q_values.empty()) throw std::invalid_argument("config: q list must be non-empty");
    for (double q : q_values) {
        if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("config: q must lie in (0,1]");
    }
    if (x_cells.empty()) throw std::invalid_argument("config: x list must be non-empty");
    for (double x : x_cells) {
        if (!(x > 0.0)) throw std::invalid_argument("config: x cells must be positive");
    }
    if (!(grid_max > 0.0)) throw std::invalid_argument("config: grid-max must be positive");
    if (grid_points < 2) throw std::invalid_argument("config: grid-points must be >= 2");
    if (sequence != "standard" && sequence != "statonly") {
        throw std::invalid_argument("config: sequence must be 'standard' or 'statonly'");
    }
    if (!(moment_tol > 0.0)) throw std::invalid_argument("config: moment tolerance must be positive");
}

namespace {

const char* family_cli_name(OperatorFamily f) {
    switch (f) {
        case OperatorFamily::Classical: return "classical";
        case OperatorFamily::QStancuBeta: return "qsb";
        case OperatorFamily::ModifiedQ: return "modified";
        case OperatorFamily::CaiPreserving: return "cai";
    }
    return "?";
}

nlohmann::ordered_json config_echo(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["command"] = command_name(c.command);
    j["operator"] = family_cli_name(c.op_family);
    j["n_ladder"] = c.n_ladder;
    j["q_values"] = c.q_values;
    j["x_cells"] = c.x_cells;
    j["sequence"] = c.sequence;
    j["grid"] = {{"max", c.grid_max}, {"points", c.grid_points}};
    j["moment_tol"] = c.moment_tol;
    j["format"] = (c.format == OutputFormat::Csv) ? "csv" : "json";
    return j;
}

OperatorKind make_kind(OperatorFamily f, int n, double q) {
    switch (f) {
        case OperatorFamily::Classical: return OperatorKind::classical(n);
        case OperatorFamily::QStancuBeta: return OperatorKind::q_stancu_beta(n, q);
        case OperatorFamily::ModifiedQ: return OperatorKind::modified_q(n, q);
        case OperatorFamily::CaiPreserving: return OperatorKind::cai_preserving(n, q);
    }
    throw std::logic_error("make_kind: unreachable");
}

SequenceSpec sequence_by_name(const std::string& name) {
    if (name == "standard") return standard_sequence();
    if (name == "statonly") return statistical_only_sequence();
    throw std::invalid_argument("unknown sequence '" + name + "'");
}

std::string cell_x(double x) { return "x=" + format_sig15(x); }

}  // namespace

Report run_moments(const RunConfig& config) {
    config.validate();
    Report report("moments", config_echo(config));
    const std::vector<const TestFunction*> fs = {
        &corpus_function("1"), &corpus_function("t"), &corpus_function("t^2")};
    const bool classical = (config.op_family == OperatorFamily::Classical);
    const std::vector<double> qs = classical ? std::vector<double>{1.0} : config.q_values;
    for (int n : config.n_ladder) {
        for (double q : qs) {
            const OperatorKind kind = make_kind(config.op_family, n, q);
            const QContext ctx = make_context(kind);
            for (double x : config.x_cells) {
                const MomentTriple closed = moments(kind, x, ctx);
                const double integrated[3] = {
                    apply_operator(*fs[0], kind, x, ctx),
                    apply_operator(*fs[1], kind, x, ctx),
                    apply_operator(*fs[2], kind, x, ctx)};
                const double closed_vals[3] = {closed.m0, closed.m1, closed.m2};
                for (int i = 0; i < 3; ++i) {
                    const double resid = std::fabs(integrated[i] - closed_vals[i]);
                    report.add_row(n, q, fs[i]->name, cell_x(x), integrated[i],
                                   closed_vals[i], config.moment_tol - resid,
                                   resid <= config.moment_tol);
                }
            }
        }
    }
    return report;
}

Report run_converge(const RunConfig& config) {
    config.validate();
    if (config.op_family != OperatorFamily::CaiPreserving) {
        throw std::invalid_argument("converge: requires --operator cai");
    }
    Report report("converge", config_echo(config));
    const SequenceSpec seq = sequence_by_name(config.sequence);
    const Grid sup_grid(0.0, config.grid_max, config.grid_points);
    const Grid weighted_grid(0.0, 50.0, 1001);
    const std::string sup_cell = "sup[0," + format_sig15(config.grid_max) + "]";
    const std::string rho_cell = "rho0[0,50]";

    for (int n : config.n_ladder) {
        const double qn = seq.generator(static_cast<std::uint64_t>(n));
        const OperatorKind kind = OperatorKind::cai_preserving(n, qn);
        const QContext ctx = make_context(kind);
        for (NormKind norm : {NormKind::Sup, NormKind::Weighted}) {
            const Grid& grid = (norm == NormKind::Sup) ? sup_grid : weighted_grid;
            const std::string& cell = (norm == NormKind::Sup) ? sup_cell : rho_cell;
            const KorovkinProfile prof = korovkin_error_profile(kind, grid, ctx, norm);
            report.add_row(n, qn, "1", cell, prof.error_one, config.moment_tol,
                           config.moment_tol - prof.error_one,
                           prof.error_one <= config.moment_tol);
            report.add_row(n, qn, "t", cell, prof.error_t, prof.t_error_bound,
                           prof.t_error_bound - prof.error_t,
                           prof.error_t <= prof.t_error_bound + 1e-9);
            report.add_row(n, qn, "t^2", cell, prof.error_tsq, config.moment_tol,
                           config.moment_tol - prof.error_tsq,
                           prof.error_tsq <= config.moment_tol);
        }
    }

    if (!seq.ordinary_convergent) {
        const Conditions7Report c7 = verify_conditions7(seq, 1000000);
        const auto& cond = c7.conditions[0];  // the q_n ladder itself
        for (int which = 0; which < 2; ++which) {
            const auto& dens =
                (which == 0) ? cond.densities_eps_coarse : cond.densities_eps_fine;
            const std::string eps_tag = (which == 0) ? "0.1" : "0.01";
            for (std::size_t i = 0; i < dens.size(); ++i) {
                const double ref = (i == 0) ? 1.0 : dens[i - 1];
                const std::string cell = "density(eps=" + eps_tag +
                                         ")@h=" + std::to_string(cond.horizons[i]);
                report.add_row(static_cast<long long>(cond.horizons[i]), 0.0, "q_n",
                               cell, dens[i], ref, ref - dens[i],
                               dens[i] <= ref + 1e-12);
            }
            report.add_row(static_cast<long long>(cond.horizons.back()), 0.0, "q_n",
                           "final(eps=" + eps_tag + ")", dens.back(), 0.01,
                           0.01 - dens.back(), dens.back() < 0.01);
        }
    }
    return report;
}

Report run_bounds(const RunConfig& config) {
    config.validate();
    Report report("bounds", config_echo(config));
    const Grid grid(0.0, config.grid_max, config.grid_points);
    const std::vector<double> dense_E = grid.values();
    const std::vector<double> default_E = {0.0, 1.0, 2.0};

    for (int n : config.n_ladder) {
        for (double q : config.q_values) {
            if (q >= 1.0) continue;  // the rate theorems concern q < 1
            const OperatorKind kind = OperatorKind::cai_preserving(n, q);
            const QContext ctx = make_context(kind);
            for (const TestFunction& f : corpus()) {
                for (int i = 0; i < grid.points; ++i) {
                    const double x = grid.at(i);
                    const BoundReport t5 = rate_bound_theorem5(f, kind, x, ctx, grid);
                    const std::string tag5 = f.nondecreasing ? "thm5:" : "thm5*:";
                    report.add_row(n, q, f.name, tag5 + cell_x(x), t5.lhs, t5.rhs,
                                   t5.slack, t5.holds);
                    if (f.lipschitz) {
                        const LipschitzClass lip{f.lipschitz->alpha, f.lipschitz->M,
                                                 default_E};
                        const BoundReport t6 =
                            rate_bound_theorem6(f, lip, kind, x, ctx);
                        report.add_row(n, q, f.name, "thm6:" + cell_x(x), t6.lhs,
                                       t6.rhs, t6.slack, t6.holds);
                        if (f.name == "sqrt(t)") {
                            const LipschitzClass lip_dense{f.lipschitz->alpha,
                                                           f.lipschitz->M, dense_E};
                            const BoundReport t6d =
                                rate_bound_theorem6(f, lip_dense, kind, x, ctx);
                            report.add_row(n, q, f.name, "thm6r3:" + cell_x(x),
                                           t6d.lhs, t6d.rhs, t6d.slack, t6d.holds);
                        }
                    }
                }
            }
        }
    }
    return report;
}

Report run_statistical(const RunConfig& config) {
    config.validate();
    Report report("statistical", config_echo(config));
    const SequenceSpec seq = sequence_by_name(config.sequence);
    const Conditions7Report c7 = verify_conditions7(seq, 1000000);

    for (const auto& cond : c7.conditions) {
        for (int which = 0; which < 2; ++which) {
            const auto& dens =
                (which == 0) ? cond.densities_eps_coarse : cond.densities_eps_fine;
            const std::string eps_tag = (which == 0) ? "0.1" : "0.01";
            for (std::size_t i = 0; i < dens.size(); ++i) {
                const double ref = (i == 0) ? 1.0 : dens[i - 1];
                report.add_row(static_cast<long long>(cond.horizons[i]), 0.0,
                               cond.name,
                               "density(eps=" + eps_tag +
                                   ")@h=" + std::to_string(cond.horizons[i]),
                               dens[i], ref, ref - dens[i], dens[i] <= ref + 1e-12);
            }
            report.add_row(static_cast<long long>(cond.horizons.back()), 0.0,
                           cond.name, "final(eps=" + eps_tag + ")", dens.back(), 0.01,
                           0.01 - dens.back(), dens.back() < 0.01);
        }
    }

    const double declared_a = seq.declared_st_limits[1];
    report.add_row(1000000, 0.0, "q_n^n", "a_estimate", c7.a_estimate, declared_a,
                   0.01 * std::max(std::fabs(declared_a), 1e-12) -
                       std::fabs(c7.a_estimate - declared_a),
                   c7.a_within_tolerance);

    const bool ordinary = ordinary_convergence_check(seq, 1.0, 0.01, 1000000, 3000);
    report.add_row(1000000, 0.0, "q_n", "ordinary_convergence",
                   ordinary ? 1.0 : 0.0, seq.ordinary_convergent ? 1.0 : 0.0, 0.0,
                   ordinary == seq.ordinary_convergent);
    return report;
}

Report run_compare(const RunConfig& config) {
    config.validate();
    Report report("compare", config_echo(config));
    for (int n : config.n_ladder) {
        const OperatorKind kind = OperatorKind::modified_q(n, 1.0);
        const QContext ctx = make_context(kind);
        for (double x : config.x_cells) {
            for (const TestFunction& f : corpus()) {
                const double mod = modified_q_stancu_beta(f, kind, x, ctx);
                const double cls = classical_stancu_beta(f, n, x);
                const double diff = std::fabs(mod - cls);
                report.add_row(n, 1.0, f.name, cell_x(x), diff, config.moment_tol,
                               config.moment_tol - diff, diff <= config.moment_tol);
            }
        }
    }
    return report;
}

Report run(const RunConfig& config) {
    switch (config.command) {
        case Command::Moments: return run_moments(config);
        case Command::Converge: return run_converge(config);
        case Command::Bounds: return run_bounds(config);
        case Command::Statistical: return run_statistical(config);
        case Command::Compare: return run_compare(config);
    }
    throw std::logic_error("run: unreachable");
}

std::string emit(const Report& report, const RunConfig& config) {
    std::string text;
    if (config.format == OutputFormat::Csv) {
        text = report.to_csv();
    } else {
        text = report.to_json().dump(2);
        text += '\n';
    }
    if (config.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(config.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + config.out_path);
        out << text;
    }
    return text;
}

}  // namespace qsb
