#include "qsb/statconv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsb {

namespace {

bool is_perfect_square(std::uint64_t n) {
    const auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n || (r + 1) * (r + 1) == n || (r > 0 && (r - 1) * (r - 1) == n);
}

}  // namespace

double natural_density(const IndexSet& K, std::uint64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("natural_density: horizon must be >= 1");
    std::uint64_t count = 0;
    for (std::uint64_t j = 1; j <= horizon; ++j) {
        if (K.contains(j)) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(horizon);
}

double statistical_limit_estimate(std::span<const double> prefix, double L,
                                  double eps, std::uint64_t horizon) {
    if (!(eps > 0.0)) throw std::invalid_argument("statistical_limit_estimate: eps must be > 0");
    if (prefix.size() < horizon) {
        throw std::invalid_argument("statistical_limit_estimate: prefix shorter than horizon");
    }
    std::uint64_t count = 0;
    for (std::uint64_t j = 0; j < horizon; ++j) {
        if (std::fabs(prefix[j] - L) >= eps) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(horizon);
}

double qn_standard(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("qn_standard: n must be >= 1");
    return static_cast<double>(n) / static_cast<double>(n + 1);
}

double qn_statistical_only(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("qn_statistical_only: n must be >= 1");
    if (is_perfect_square(n)) return 0.5;
    return static_cast<double>(n) / static_cast<double>(n + 1);
}

SequenceSpec standard_sequence() {
    return {"standard", [](std::uint64_t n) { return qn_standard(n); },
            {1.0, std::exp(-1.0), 0.0}, true};
}

SequenceSpec statistical_only_sequence() {
    return {"statonly", [](std::uint64_t n) { return qn_statistical_only(n); },
            {1.0, std::exp(-1.0), 0.0}, false};
}

SequenceSpec constant_sequence(double c) {
    if (!(c > 0.0) || !(c < 1.0)) {
        throw std::invalid_argument("constant_sequence: c must lie in (0,1)");
    }
    // q_n^n -> 0 and 1/[n] -> 1-c; only the second limit matches conditions (7)
    return {"constant", [c](std::uint64_t) { return c; }, {1.0, 0.0, 0.0}, true};
}

bool ordinary_convergence_check(const SequenceSpec& seq, double L, double eps,
                                std::uint64_t horizon, std::uint64_t window) {
    if (window < 1 || window > horizon) {
        throw std::invalid_argument("ordinary_convergence_check: need 1 <= window <= horizon");
    }
    for (std::uint64_t j = horizon - window + 1; j <= horizon; ++j) {
        if (std::fabs(seq.generator(j) - L) >= eps) return false;
    }
    return true;
}

Conditions7Report verify_conditions7(const SequenceSpec& spec, std::uint64_t horizon,
                                     double density_threshold, double a_rel_tol) {
    if (horizon < 10) throw std::invalid_argument("verify_conditions7: horizon too small");

    std::vector<std::uint64_t> ladder;
    for (std::uint64_t h : {1000ull, 10000ull, 100000ull, 1000000ull}) {
        if (h < horizon) ladder.push_back(h);
    }
    ladder.push_back(horizon);

    // the three derived sequences: q_n, q_n^n, 1/[n]_{q_n}
    const std::array<double, 3> targets = {1.0, spec.declared_st_limits[1], 0.0};
    const std::array<std::string, 3> names = {"q_n", "q_n^n", "1/[n]"};
    const double eps_coarse = 0.1, eps_fine = 0.01;

    std::array<ConditionLadder, 3> conds;
    std::array<std::array<std::uint64_t, 2>, 3> counts{};  // [condition][eps]
    std::vector<double> pow_tail;  // q_n^n over the tail half, for the a estimate
    pow_tail.reserve(horizon / 2 + 1);

    for (int c = 0; c < 3; ++c) {
        conds[c].name = names[c];
        conds[c].declared_limit = targets[c];
        conds[c].horizons = ladder;
    }

    std::size_t next_checkpoint = 0;
    for (std::uint64_t j = 1; j <= horizon; ++j) {
        const double qj = spec.generator(j);
        if (!(qj > 0.0) || !(qj < 1.0)) {
            throw std::invalid_argument("verify_conditions7: generator left (0,1)");
        }
        const double pow_j = std::exp(static_cast<double>(j) * std::log(qj));
        const double inv_bracket = (1.0 - qj) / (1.0 - pow_j);
        const std::array<double, 3> vals = {qj, pow_j, inv_bracket};
        for (int c = 0; c < 3; ++c) {
            const double dev = std::fabs(vals[c] - targets[c]);
            if (dev >= eps_coarse) ++counts[c][0];
            if (dev >= eps_fine) ++counts[c][1];
        }
        if (j > horizon / 2) pow_tail.push_back(pow_j);
        while (next_checkpoint < ladder.size() && j == ladder[next_checkpoint]) {
            for (int c = 0; c < 3; ++c) {
                conds[c].densities_eps_coarse.push_back(
                    static_cast<double>(counts[c][0]) / static_cast<double>(j));
                conds[c].densities_eps_fine.push_back(
                    static_cast<double>(counts[c][1]) / static_cast<double>(j));
            }
            ++next_checkpoint;
        }
    }

    bool indeterminate = false;
    bool all_pass = true;
    for (int c = 0; c < 3; ++c) {
        auto monotone = [](const std::vector<double>& d) {
            for (std::size_t i = 1; i < d.size(); ++i) {
                if (d[i] > d[i - 1] + 1e-12) return false;
            }
            return true;
        };
        conds[c].monotone = monotone(conds[c].densities_eps_coarse) &&
                            monotone(conds[c].densities_eps_fine);
        conds[c].pass = conds[c].densities_eps_coarse.back() < density_threshold &&
                        conds[c].densities_eps_fine.back() < density_threshold;
        indeterminate = indeterminate || !conds[c].monotone;
        all_pass = all_pass && conds[c].pass;
    }

    const std::size_t mid = pow_tail.size() / 2;
    std::nth_element(pow_tail.begin(), pow_tail.begin() + mid, pow_tail.end());
    const double a_est = pow_tail[mid];
    const double declared_a = spec.declared_st_limits[1];
    const bool a_ok =
        std::fabs(a_est - declared_a) <= a_rel_tol * std::max(std::fabs(declared_a), 1e-12) ||
        std::fabs(a_est - declared_a) <= 1e-9;  // exact-zero declarations

    return {conds, a_est, a_ok, indeterminate, all_pass && a_ok && !indeterminate};
}

}  // namespace qsb
