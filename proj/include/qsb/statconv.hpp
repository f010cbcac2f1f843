#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qsb {

/// A decidable set of positive integers.
struct IndexSet {
    std::function<bool(std::uint64_t)> contains;
    std::string description;
};

/// Generator of a q_n sequence in (0,1) together with its declared
/// statistical limits for (q_n, q_n^n, 1/[n]_{q_n}).
struct SequenceSpec {
    std::string name;
    std::function<double(std::uint64_t)> generator;
    std::array<double, 3> declared_st_limits;  // {st-lim q_n, st-lim q_n^n, st-lim 1/[n]}
    bool ordinary_convergent;
};

/// |{j <= horizon : j in K}| / horizon.
double natural_density(const IndexSet& K, std::uint64_t horizon);

/// Density of the exceedance set {j <= horizon : |x_j - L| >= eps} given a
/// materialized prefix (1-based sequence stored at prefix[j-1]).
double statistical_limit_estimate(std::span<const double> prefix, double L,
                                  double eps, std::uint64_t horizon);

/// q_n = n/(n+1): ordinarily convergent to 1, q_n^n -> 1/e, 1/[n]_{q_n} -> 0.
double qn_standard(std::uint64_t n);

/// q_n = 1/2 on perfect squares, n/(n+1) otherwise: statistically convergent
/// to 1 (exceptional set has density 0) but not ordinarily convergent.
double qn_statistical_only(std::uint64_t n);

SequenceSpec standard_sequence();
SequenceSpec statistical_only_sequence();
SequenceSpec constant_sequence(double c);

/// True when max_{horizon-window < j <= horizon} |q_j - L| < eps, i.e. the
/// tail window certifies ordinary convergence at tolerance eps.
bool ordinary_convergence_check(const SequenceSpec& seq, double L, double eps,
                                std::uint64_t horizon, std::uint64_t window);

/// One condition's empirical density curve across the horizon ladder.
struct ConditionLadder {
    std::string name;
    double declared_limit;
    std::vector<std::uint64_t> horizons;
    std::vector<double> densities_eps_coarse;  // eps = 0.1
    std::vector<double> densities_eps_fine;    // eps = 0.01
    bool monotone;  // densities non-increasing along the ladder (both eps)
    bool pass;      // final density below threshold for both eps
};

struct Conditions7Report {
    std::array<ConditionLadder, 3> conditions;
    double a_estimate;       // median of q_n^n over the tail half
    bool a_within_tolerance; // within 1% of the declared limit
    bool indeterminate;      // some density curve non-monotone
    bool pass;
};

/// Runs the three statistical-limit checks (st-lim q_n = 1, st-lim q_n^n = a,
/// st-lim 1/[n]_{q_n} = 0) over the horizon ladder {1e3,1e4,1e5,horizon}
/// with eps in {0.1, 0.01} and a final-density threshold of 1e-2.
Conditions7Report verify_conditions7(const SequenceSpec& spec, std::uint64_t horizon,
                                     double density_threshold = 1e-2,
                                     double a_rel_tol = 0.01);

}  // namespace qsb
