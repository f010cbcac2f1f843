#include "qsb/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace qsb {

std::vector<double> Grid::values() const {
    std::vector<double> xs(points);
    for (int i = 0; i < points; ++i) xs[i] = at(i);
    return xs;
}

double modulus_of_continuity(const TestFunction& f, double delta, const Grid& grid) {
    if (!(delta > 0.0)) throw std::invalid_argument("modulus_of_continuity: delta must be > 0");
    const double h = grid.spacing();
    if (h > delta / 10.0 * (1.0 + 1e-12)) {
        throw std::invalid_argument(
            "modulus_of_continuity: grid too coarse (need spacing <= delta/10)");
    }
    const int window = static_cast<int>(std::floor(delta / h + 1e-9));
    std::vector<double> vals(grid.points);
    for (int i = 0; i < grid.points; ++i) vals[i] = f.eval(grid.at(i));

    // sliding max-min over index windows of width `window`
    std::deque<int> maxq, minq;
    double omega = 0.0;
    for (int i = 0; i < grid.points; ++i) {
        while (!maxq.empty() && vals[maxq.back()] <= vals[i]) maxq.pop_back();
        maxq.push_back(i);
        while (!minq.empty() && vals[minq.back()] >= vals[i]) minq.pop_back();
        minq.push_back(i);
        const int lo = i - window;
        while (maxq.front() < lo) maxq.pop_front();
        while (minq.front() < lo) minq.pop_front();
        omega = std::max(omega, vals[maxq.front()] - vals[minq.front()]);
    }
    return omega;
}

bool check_pointwise_inequality(const TestFunction& f, double t, double x,
                                double delta, const Grid& grid) {
    const double omega = modulus_of_continuity(f, delta, grid);
    const double lhs = std::fabs(f.eval(t) - f.eval(x));
    const double rhs = omega * (1.0 + std::fabs(t - x) / delta);
    return lhs <= rhs + 1e-9;
}

namespace {

Grid refined_omega_grid(double x_max, double delta) {
    const double range = x_max + delta;
    const long long pts = static_cast<long long>(std::ceil(range * 10.0 / delta)) + 1;
    if (pts > 2000000) {
        throw NumericsError("rate_bound_theorem5: modulus grid would exceed 2e6 points");
    }
    return Grid(0.0, range, static_cast<int>(std::max<long long>(pts, 11)));
}

}  // namespace

BoundReport rate_bound_theorem5(const TestFunction& f, const OperatorKind& kind,
                                double x, const QContext& ctx, const Grid& grid) {
    const CentralMoments cm = central_moments(kind, x, ctx);
    if (cm.delta < -1e-12) {
        throw NumericsError("rate_bound_theorem5: negative second central moment");
    }
    const double delta = std::sqrt(std::max(cm.delta, 0.0));
    const double lhs = std::fabs(cai_operator(f, kind, x, ctx) - f.eval(x));
    double rhs = 0.0;
    if (delta > 0.0) {
        rhs = 2.0 * modulus_of_continuity(f, delta, refined_omega_grid(grid.x_max, delta));
    }
    const double slack = rhs - lhs;
    return {x, lhs, rhs, slack, slack >= -1e-9};
}

double lipschitz_maximal(const TestFunction& f, double x, double alpha,
                         const Grid& grid) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("lipschitz_maximal: alpha must lie in (0,1]");
    }
    const double fx = f.eval(x);
    double sup = 0.0;
    for (int i = 0; i < grid.points; ++i) {
        const double t = grid.at(i);
        const double d = std::fabs(t - x);
        if (d < 1e-15) continue;
        sup = std::max(sup, std::fabs(f.eval(t) - fx) / std::pow(d, alpha));
    }
    return sup;
}

double distance_to_set(double x, const std::vector<double>& E) {
    if (E.empty()) throw std::invalid_argument("distance_to_set: E must be non-empty");
    double d = std::fabs(x - E.front());
    for (double y : E) d = std::min(d, std::fabs(x - y));
    return d;
}

BoundReport rate_bound_theorem6(const TestFunction& f, const LipschitzClass& lip,
                                const OperatorKind& kind, double x,
                                const QContext& ctx) {
    if (!(lip.alpha > 0.0) || lip.alpha > 1.0 || !(lip.M > 0.0)) {
        throw std::invalid_argument("rate_bound_theorem6: need alpha in (0,1] and M > 0");
    }
    const CentralMoments cm = central_moments(kind, x, ctx);
    const double delta = std::max(cm.delta, 0.0);
    const double lhs = std::fabs(cai_operator(f, kind, x, ctx) - f.eval(x));
    const double rhs =
        lip.M * (std::pow(delta, lip.alpha / 2.0) + distance_to_set(x, lip.E));
    const double slack = rhs - lhs;
    return {x, lhs, rhs, slack, slack >= -1e-9};
}

double weighted_norm(const TestFunction& f, const Grid& grid) {
    double sup = 0.0;
    for (int i = 0; i < grid.points; ++i) {
        const double x = grid.at(i);
        sup = std::max(sup, std::fabs(f.eval(x)) / (1.0 + x * x));
    }
    return sup;
}

KorovkinProfile korovkin_error_profile(const OperatorKind& kind, const Grid& grid,
                                       const QContext& ctx, NormKind norm) {
    double e0 = 0.0, e1 = 0.0, e2 = 0.0;
    for (int i = 0; i < grid.points; ++i) {
        const double x = grid.at(i);
        const MomentTriple m = moments(kind, x, ctx);
        const double w = (norm == NormKind::Weighted) ? 1.0 / (1.0 + x * x) : 1.0;
        e0 = std::max(e0, std::fabs(m.m0 - 1.0) * w);
        e1 = std::max(e1, std::fabs(m.m1 - x) * w);
        e2 = std::max(e2, std::fabs(m.m2 - x * x) * w);
    }
    // proof-step bound on the f = t error for the x^2-preserving family:
    // |v_n(x) - x| <= (1 - sqrt(q([n]-1)/[n])) x + 1/(2[n])
    const double m = q_integer(static_cast<unsigned>(kind.n), ctx);
    const double a = ctx.q * (m - 1.0) / m;
    const double scale = (norm == NormKind::Weighted) ? 1.0 : grid.x_max;
    const double bound = (1.0 - std::sqrt(a)) * scale + 1.0 / (2.0 * m);
    return {norm, e0, e1, e2, bound};
}

}  // namespace qsb
