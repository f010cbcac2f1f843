#include "qsb/operators.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace qsb {

namespace {

double softplus(double x) {
    if (x > 36.0) return x + std::exp(-x);
    if (x < -36.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

double real_bracket(double z, double q) {
    return -std::expm1(z * std::log(q)) / (1.0 - q);
}

// Kernel parameters of the q-Beta-type lattice density
//   u^{a-1} / (1+u)_q^{a+m+1},   f evaluated at lambda*u,
// with a and lambda chosen so the first two moments of f(lambda*u) equal
// m1 = y and m2 = (m y + 1) y / (q (m-1)), m = [n]_q. The exact bilateral
// lattice moments are
//   E[u]   = q^{-a} [a]/[m],   E[u^2] = q^{-2a-1} [a][a+1]/([m][m-1])
// (real brackets), so the ratio equation fixes q^a = (R-1)/(R-q) with
//   R = (m y + 1)[m-1] / ((m-1) y [m])   (> 1 whenever m > 1, y > 0),
// and the scale follows from E[lambda*u] = y.
struct KernelShape {
    double a;          // numerator exponent
    double T;          // pochhammer exponent a + m + 1
    double ln_lambda;  // log of the argument scale
    double m;          // [n]_q
};

KernelShape calibrate_kernel(int n, double q, double y) {
    const double m = real_bracket(static_cast<double>(n), q);
    const double br_m = real_bracket(m, q);
    const double br_m1 = real_bracket(m - 1.0, q);
    const double R = (m * y + 1.0) * br_m1 / ((m - 1.0) * y * br_m);
    const double ln_qa = std::log1p(-(1.0 - q) / (R - q));  // ln q^a
    const double a = ln_qa / std::log(q);
    const double ln_lambda =
        std::log(y) + ln_qa + std::log(br_m) - std::log(real_bracket(a, q));
    return {a, a + m + 1.0, ln_lambda, m};
}

// E[f(lambda*u)] for the kernel above over the Koornwinder lattice
// {q^j / A : j in Z}. Works in log space throughout: one full log-Pochhammer
// product at the window center, O(1) recurrence steps
//   ln P(u/q) = ln P(u) + ln(1+u/q) - ln(1+q^{T-1} u/q)
// in both directions, adaptive expansion with a quadratic-growth allowance
// for f, and an analytic geometric closure of the u -> 0 tail (f -> f(0)).
double lattice_expectation(const KernelShape& k, double q, double A,
                           const std::function<double(double)>& f,
                           double f_at_zero, const QContext& ctx) {
    const double lnq = std::log(q);
    const double lnA = std::log(A);
    const double drop = 85.0;  // e^-85 ~ 1.2e-37 relative cutoff
    const std::size_t cap = 4u * 1000u * 1000u;

    // center the window at the peak of a*ln(u) - ln_poch, i.e. u ~ q^{-a}
    const long long jc = std::llround((k.a * lnq - lnA) / lnq);
    const double lu_c = static_cast<double>(jc) * lnq - lnA;
    const double lnP_c = ln_q_pochhammer_real(lu_c, k.T, ctx);
    const double TL = k.T * lnq;

    auto log_weight = [&](double lu, double lnP) { return k.a * lu - lnP; };

    std::vector<double> up_lw, down_lw;  // j < jc and j >= jc respectively
    double peak = log_weight(lu_c, lnP_c);
    down_lw.push_back(peak);

    // march toward larger u (j decreasing)
    {
        double lu = lu_c, lnP = lnP_c;
        while (true) {
            const double lu2 = lu - lnq;
            lnP += softplus(lu2) - softplus(TL + lu2);
            lu = lu2;
            const double w = log_weight(lu, lnP);
            up_lw.push_back(w);
            peak = std::max(peak, w);
            const double growth = 2.0 * std::max(0.0, k.ln_lambda + lu);
            if (w + growth < peak - drop) break;
            if (up_lw.size() > cap) {
                throw NumericsError("lattice_expectation: upper window exceeded cap");
            }
        }
    }

    // march toward u -> 0 (j increasing), closing the tail analytically once
    // both the f-argument and the pochhammer correction are negligible
    const double eta = std::min(ctx.series_tol, 1e-13);
    double tail_lw = -std::numeric_limits<double>::infinity();
    {
        double lu = lu_c, lnP = lnP_c;
        while (true) {
            lnP += softplus(TL + lu) - softplus(lu);
            lu += lnq;
            const double w = log_weight(lu, lnP);
            down_lw.push_back(w);
            peak = std::max(peak, w);
            if (k.ln_lambda + lu < std::log(eta) && lu < std::log(eta * (1.0 - q))) {
                // remaining mass: sum_{i>j} (q^i/A)^a = e^{a(lu+lnq)}/(1-q^a)
                tail_lw = k.a * (lu + lnq) - std::log(-std::expm1(k.a * lnq));
                break;
            }
            if (w < peak - drop && k.ln_lambda + lu < 0.0) break;
            if (down_lw.size() > cap) {
                throw NumericsError("lattice_expectation: lower window exceeded cap");
            }
        }
    }

    double Z = 0.0, S = 0.0;
    auto accumulate = [&](double lw, double lu) {
        const double w = std::exp(lw - peak);
        if (w == 0.0) return;
        const double fv = f(std::exp(k.ln_lambda + lu));
        if (!std::isfinite(fv)) {
            throw NumericsError("lattice_expectation: non-finite f value");
        }
        Z += w;
        S += w * fv;
    };
    // largest u first, descending
    for (std::size_t i = up_lw.size(); i-- > 0;) {
        const double lu = lu_c + static_cast<double>(i + 1) * (-lnq);
        accumulate(up_lw[i], lu);
    }
    for (std::size_t i = 0; i < down_lw.size(); ++i) {
        const double lu = lu_c - static_cast<double>(i) * (-lnq);
        accumulate(down_lw[i], lu);
    }
    if (std::isfinite(tail_lw)) {
        const double w = std::exp(tail_lw - peak);
        Z += w;
        S += w * f_at_zero;
    }
    if (!(Z > 0.0) || !std::isfinite(S)) {
        throw NumericsError("lattice_expectation: degenerate normalization");
    }
    return S / Z;
}

// q-Stancu-Beta expectation at parameter y > 0 (shared by the plain,
// modified and x^2-preserving assemblies).
double q_expectation(const TestFunction& f, int n, double q, double y, double A,
                     const QContext& ctx) {
    const KernelShape k = calibrate_kernel(n, q, y);
    return lattice_expectation(k, q, A, f.eval, f.eval(0.0), ctx);
}

void require_matching_context(const OperatorKind& kind, const QContext& ctx) {
    if (ctx.q != kind.q) {
        throw std::invalid_argument("operator evaluation: QContext.q must equal OperatorKind.q");
    }
}

}  // namespace

OperatorKind OperatorKind::make(OperatorFamily f, int n, double q) {
    if (n < 2) {
        throw std::invalid_argument("OperatorKind: n must be >= 2 ([n]_q - 1 must be positive)");
    }
    if (f == OperatorFamily::Classical) q = 1.0;
    if (!(q > 0.0) || q > 1.0) {
        throw std::invalid_argument("OperatorKind: q must lie in (0,1]");
    }
    if (q == 1.0 &&
        (f == OperatorFamily::QStancuBeta || f == OperatorFamily::CaiPreserving)) {
        throw std::invalid_argument("OperatorKind: this family requires q < 1");
    }
    return OperatorKind{f, n, q};
}

const char* OperatorKind::family_name() const {
    switch (family) {
        case OperatorFamily::Classical: return "classical";
        case OperatorFamily::QStancuBeta: return "qsb";
        case OperatorFamily::ModifiedQ: return "modified";
        case OperatorFamily::CaiPreserving: return "cai";
    }
    return "?";
}

QContext make_context(const OperatorKind& kind, double series_tol,
                      std::size_t max_terms, int bilateral_range) {
    return QContext(kind.q, series_tol, max_terms, bilateral_range);
}

double classical_stancu_beta(const TestFunction& f, int n, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("classical_stancu_beta: x must be > 0");
    if (n < 1) throw std::invalid_argument("classical_stancu_beta: n must be >= 1");
    const double nx = static_cast<double>(n) * x;
    const double ln_beta =
        std::lgamma(nx) + std::lgamma(n + 1.0) - std::lgamma(nx + n + 1.0);
    // substitution t = u/(1-u): integrand u^{nx-1} (1-u)^n f(u/(1-u)) / B(nx, n+1)
    auto g = [&](double u) {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        const double lw = (nx - 1.0) * std::log(u) + n * std::log1p(-u) - ln_beta;
        if (lw < -745.0) return 0.0;
        return std::exp(lw) * f.eval(u / (1.0 - u));
    };
    double err = 0.0;
    const double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        g, 0.0, 1.0, 18, 1e-13, &err);
    if (err > 1e-10 * std::max(1.0, std::fabs(val))) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "classical_stancu_beta: quadrature error estimate %.3e "
                      "exceeds target (n=%d, x=%g)",
                      err, n, x);
        throw NumericsError(msg);
    }
    return val;
}

double q_stancu_beta(const TestFunction& f, const OperatorKind& kind, double x,
                     const QContext& ctx, double A) {
    if (kind.family != OperatorFamily::QStancuBeta) {
        throw std::invalid_argument("q_stancu_beta: kind must be the QStancuBeta family");
    }
    require_matching_context(kind, ctx);
    if (!(x > 0.0)) throw std::invalid_argument("q_stancu_beta: x must be > 0");
    if (!(A > 0.0)) throw std::invalid_argument("q_stancu_beta: A must be > 0");
    return q_expectation(f, kind.n, kind.q, x, A, ctx);
}

double modified_q_stancu_beta(const TestFunction& f, const OperatorKind& kind,
                              double x, const QContext& ctx, double A) {
    if (kind.family != OperatorFamily::ModifiedQ) {
        throw std::invalid_argument("modified_q_stancu_beta: kind must be the ModifiedQ family");
    }
    require_matching_context(kind, ctx);
    if (!(x >= 0.0)) throw std::invalid_argument("modified_q_stancu_beta: x must be >= 0");
    if (x == 0.0) return kind.q * f.eval(0.0);  // kernel collapses to a point mass
    if (kind.q == 1.0) return classical_stancu_beta(f, kind.n, x);
    return kind.q * q_expectation(f, kind.n, kind.q, x, A, ctx);
}

double v_n(double x, int n, const QContext& ctx) {
    if (!(x >= 0.0)) throw std::invalid_argument("v_n: x must be >= 0");
    if (n < 2) throw std::invalid_argument("v_n: n must be >= 2");
    if (ctx.q >= 1.0) throw std::invalid_argument("v_n: requires q < 1");
    const double m = q_integer(static_cast<unsigned>(n), ctx);
    const double a = ctx.q * (m - 1.0) / m;
    const double c = 1.0 / (2.0 * m);
    // rationalized sqrt(a x^2 + c^2) - c: exact 0 at x = 0, no cancellation
    return a * x * x / (std::sqrt(a * x * x + c * c) + c);
}

double cai_operator(const TestFunction& f, const OperatorKind& kind, double x,
                    const QContext& ctx, double A) {
    if (kind.family != OperatorFamily::CaiPreserving) {
        throw std::invalid_argument("cai_operator: kind must be the CaiPreserving family");
    }
    require_matching_context(kind, ctx);
    if (!(x >= 0.0)) throw std::invalid_argument("cai_operator: x must be >= 0");
    if (x == 0.0) return f.eval(0.0);  // v_n(0) = 0: point mass at the origin
    return q_expectation(f, kind.n, kind.q, v_n(x, kind.n, ctx), A, ctx);
}

MomentTriple moments(const OperatorKind& kind, double x, const QContext& ctx) {
    require_matching_context(kind, ctx);
    if (!(x >= 0.0)) throw std::invalid_argument("moments: x must be >= 0");
    switch (kind.family) {
        case OperatorFamily::Classical: {
            const double n = kind.n;
            return {1.0, x, (n * x + 1.0) * x / (n - 1.0)};
        }
        case OperatorFamily::QStancuBeta: {
            const double m = q_integer(static_cast<unsigned>(kind.n), ctx);
            return {1.0, x, (m * x + 1.0) * x / (kind.q * (m - 1.0))};
        }
        case OperatorFamily::ModifiedQ: {
            const double m = q_integer(static_cast<unsigned>(kind.n), ctx);
            return {kind.q, kind.q * x, (m * x + 1.0) * x / (m - 1.0)};
        }
        case OperatorFamily::CaiPreserving: {
            return {1.0, v_n(x, kind.n, ctx), x * x};
        }
    }
    throw std::logic_error("moments: unreachable");
}

CentralMoments central_moments(const OperatorKind& kind, double x, const QContext& ctx) {
    if (kind.family != OperatorFamily::CaiPreserving) {
        throw std::invalid_argument("central_moments: defined for the CaiPreserving family");
    }
    const MomentTriple m = moments(kind, x, ctx);
    const double alpha = m.m1 - x * m.m0;
    const double delta = m.m2 - 2.0 * x * m.m1 + x * x * m.m0;
    return {alpha, delta};
}

double normalize_to_unit(const std::function<double(double)>& kernel, double A,
                         const QContext& ctx) {
    const double integral = q_improper_integral(kernel, A, ctx);
    if (!(integral > 0.0) || !std::isfinite(integral)) {
        throw NumericsError("normalize_to_unit: kernel integral is not positive");
    }
    return 1.0 / integral;
}

double apply_operator(const TestFunction& f, const OperatorKind& kind, double x,
                      const QContext& ctx) {
    switch (kind.family) {
        case OperatorFamily::Classical: return classical_stancu_beta(f, kind.n, x);
        case OperatorFamily::QStancuBeta: return q_stancu_beta(f, kind, x, ctx);
        case OperatorFamily::ModifiedQ: return modified_q_stancu_beta(f, kind, x, ctx);
        case OperatorFamily::CaiPreserving: return cai_operator(f, kind, x, ctx);
    }
    throw std::logic_error("apply_operator: unreachable");
}

}  // namespace qsb
