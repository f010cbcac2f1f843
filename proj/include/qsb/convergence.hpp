#pragma once

#include <vector>

#include "qsb/operators.hpp"
#include "qsb/test_function.hpp"

namespace qsb {

/// Uniform evaluation grid on [x_min, x_max].
struct Grid {
    double x_min;
    double x_max;
    int points;

    Grid(double lo, double hi, int pts) : x_min(lo), x_max(hi), points(pts) {
        if (!(x_min >= 0.0) || !(x_max > x_min) || points < 2) {
            throw std::invalid_argument("Grid: need 0 <= x_min < x_max and points >= 2");
        }
    }

    double spacing() const { return (x_max - x_min) / (points - 1); }
    double at(int i) const { return x_min + i * spacing(); }
    std::vector<double> values() const;
};

/// Two sides of a rate-theorem inequality at one x.
struct BoundReport {
    double x;
    double lhs;    // |operator error|
    double rhs;    // theorem bound
    double slack;  // rhs - lhs
    bool holds;    // slack >= -1e-9 (numerical guard band)
};

/// Declared membership of a Lipschitz-type maximal-function class:
/// exponent alpha in (0,1], constant M > 0, and the reference subset E.
struct LipschitzClass {
    double alpha;
    double M;
    std::vector<double> E;
};

enum class NormKind { Sup, Weighted };

/**
 * Modulus of continuity omega(f; delta) = sup_{|t-x| <= delta} |f(t)-f(x)|
 * over pairs of grid points. The grid must resolve delta: spacing <= delta/10
 * (rejected otherwise). Nondecreasing in delta, always >= 0.
 */
double modulus_of_continuity(const TestFunction& f, double delta, const Grid& grid);

/// Checks |f(t)-f(x)| <= omega(f;delta) (1 + |t-x|/delta) within a 1e-9 guard.
bool check_pointwise_inequality(const TestFunction& f, double t, double x,
                                double delta, const Grid& grid);

/**
 * Rate bound |L(f,x) - f(x)| <= 2 omega(f; sqrt(delta_n(x))) for the
 * x^2-preserving family. The modulus is evaluated on an internal uniform grid
 * over [0, grid.x_max + delta] with spacing delta/10 (the caller's grid fixes
 * the range). delta_n(x) = 0 degenerates to rhs = 0 with lhs <= guard.
 */
BoundReport rate_bound_theorem5(const TestFunction& f, const OperatorKind& kind,
                                double x, const QContext& ctx, const Grid& grid);

/// Lipschitz maximal function sup_{t != x} |f(t)-f(x)| / |t-x|^alpha over grid t.
double lipschitz_maximal(const TestFunction& f, double x, double alpha,
                         const Grid& grid);

/// d(x,E) = min_{y in E} |x-y|; rejects empty E.
double distance_to_set(double x, const std::vector<double>& E);

/// Rate bound |L(f,x) - f(x)| <= M (delta_n(x)^{alpha/2} + d(x,E)).
BoundReport rate_bound_theorem6(const TestFunction& f, const LipschitzClass& lip,
                                const OperatorKind& kind, double x,
                                const QContext& ctx);

/// Weighted norm sup_x |f(x)| / (1+x^2) over the grid.
double weighted_norm(const TestFunction& f, const Grid& grid);

/// Per-test-function norm errors of (operator - identity) on {1, t, t^2},
/// evaluated through the closed-form moments, plus the proof-step bound on
/// the f = t error ((1-sqrt(q([n]-1)/[n])) * x_max + 1/(2[n]) in the sup norm,
/// the same with x_max replaced by 1 in the weighted norm).
struct KorovkinProfile {
    NormKind norm;
    double error_one;
    double error_t;
    double error_tsq;
    double t_error_bound;
};

KorovkinProfile korovkin_error_profile(const OperatorKind& kind, const Grid& grid,
                                       const QContext& ctx, NormKind norm);

}  // namespace qsb
