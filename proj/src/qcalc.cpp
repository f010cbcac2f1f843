#include "qsb/qcalc.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <limits>

namespace qsb {

namespace {

// ln(1 + e^x), stable across the whole real line.
double softplus(double x) {
    if (x > 36.0) return x + std::exp(-x);
    if (x < -36.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

// (1 - q^z)/(1 - q) for real z >= 0, q < 1; stable for small z.
double real_bracket(double z, double q) {
    return -std::expm1(z * std::log(q)) / (1.0 - q);
}

}  // namespace

double q_integer(unsigned k, const QContext& ctx) {
    if (ctx.classical()) return static_cast<double>(k);
    if (k == 0) return 0.0;
    return real_bracket(static_cast<double>(k), ctx.q);
}

double q_real_bracket(double t, const QContext& ctx) {
    if (!(t >= 0.0)) throw std::invalid_argument("q_real_bracket: t must be >= 0");
    if (ctx.classical()) return t;
    return real_bracket(t, ctx.q);
}

double q_factorial(unsigned k, const QContext& ctx) {
    double prod = 1.0;
    for (unsigned j = 1; j <= k; ++j) prod *= q_integer(j, ctx);
    return prod;
}

double q_binomial(unsigned n, unsigned k, const QContext& ctx) {
    if (k > n) throw std::invalid_argument("q_binomial: requires k <= n");
    return q_factorial(n, ctx) / (q_factorial(k, ctx) * q_factorial(n - k, ctx));
}

double ln_q_pochhammer_real(double ln_u, double t, const QContext& ctx) {
    if (!(t >= 0.0)) throw std::invalid_argument("ln_q_pochhammer_real: t must be >= 0");
    if (ctx.q >= 1.0) {
        throw std::invalid_argument("ln_q_pochhammer_real: requires q < 1");
    }
    if (t == 0.0 || ln_u == -std::numeric_limits<double>::infinity()) return 0.0;
    const double lnq = std::log(ctx.q);
    const double tail_scale = ctx.q / (1.0 - ctx.q);
    double sum = 0.0;
    double x = ln_u;
    for (std::size_t j = 0; j < ctx.max_terms; ++j) {
        const double term = softplus(x) - softplus(x + t * lnq);
        sum += term;
        // once q^j u < 1, the remaining terms decay geometrically with ratio q
        if (x < 0.0 && std::fabs(term) * tail_scale < ctx.series_tol) return sum;
        x += lnq;
    }
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "ln_q_pochhammer_real: no convergence within %zu terms "
                  "(last tail estimate %.3e)",
                  ctx.max_terms, std::fabs(softplus(x) - softplus(x + t * lnq)) * tail_scale);
    throw NumericsError(msg);
}

double q_pochhammer_real(double u, double t, const QContext& ctx) {
    if (!(u >= 0.0)) throw std::invalid_argument("q_pochhammer_real: u must be >= 0");
    if (!(t >= 0.0)) throw std::invalid_argument("q_pochhammer_real: t must be >= 0");
    if (ctx.classical()) return std::pow(1.0 + u, t);
    if (u == 0.0 || t == 0.0) return 1.0;
    return std::exp(ln_q_pochhammer_real(std::log(u), t, ctx));
}

double q_gamma(double t, const QContext& ctx) {
    if (!(t > 0.0)) throw std::invalid_argument("q_gamma: t must be > 0");
    if (ctx.classical()) return std::tgamma(t);
    const double q = ctx.q;
    const double lnq = std::log(q);
    const double tail_scale = q / (1.0 - q);
    double sum = (1.0 - t) * std::log(1.0 - q);
    for (std::size_t j = 0; j < ctx.max_terms; ++j) {
        const double qj1 = std::exp((j + 1.0) * lnq);
        const double qjt = std::exp((j + t) * lnq);
        const double term = std::log1p(-qj1) - std::log1p(-qjt);
        sum += term;
        if (std::fabs(term) * tail_scale < ctx.series_tol) return std::exp(sum);
    }
    throw NumericsError("q_gamma: product did not converge within max_terms");
}

double q_beta(double t, double s, const QContext& ctx) {
    if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("q_beta: t, s must be > 0");
    if (ctx.classical()) {
        return std::exp(std::lgamma(t) + std::lgamma(s) - std::lgamma(t + s));
    }
    return q_gamma(t, ctx) * q_gamma(s, ctx) / q_gamma(t + s, ctx);
}

double q_improper_integral(const std::function<double(double)>& f, double A,
                           const QContext& ctx) {
    if (!(A > 0.0)) throw std::invalid_argument("q_improper_integral: A must be > 0");
    if (ctx.q >= 1.0) {
        throw std::invalid_argument("q_improper_integral: requires q < 1");
    }
    const int N = ctx.bilateral_range;
    const double lnq = std::log(ctx.q);
    double sum = 0.0;
    double first_term = 0.0;
    double last_term = 0.0;
    for (int j = -N; j <= N; ++j) {
        const double u = std::exp(j * lnq) / A;
        const double term = (1.0 - ctx.q) * u * f(u);
        if (!std::isfinite(term)) {
            throw NumericsError("q_improper_integral: non-finite term at lattice point");
        }
        if (j == -N) first_term = term;
        if (j == N) last_term = term;
        sum += term;
    }
    const double scale = std::max(1.0, std::fabs(sum));
    if (std::fabs(first_term) > ctx.series_tol * scale ||
        std::fabs(last_term) > ctx.series_tol * scale) {
        char msg[200];
        std::snprintf(msg, sizeof msg,
                      "q_improper_integral: tail not negligible at N=%d "
                      "(boundary terms %.3e / %.3e vs tol %.3e)",
                      N, first_term, last_term, ctx.series_tol * scale);
        throw NumericsError(msg);
    }
    return sum;
}

namespace {

// int_0^b f dq t for q < 1.
double jackson_from_zero(const std::function<double(double)>& f, double b,
                         const QContext& ctx) {
    if (b == 0.0) return 0.0;
    const double q = ctx.q;
    const double tail_scale = q / (1.0 - q);
    double sum = 0.0;
    double qj = 1.0;
    for (std::size_t j = 0; j < ctx.max_terms; ++j) {
        const double term = f(qj * b) * qj;
        if (!std::isfinite(term)) {
            throw NumericsError("q_jackson_integral: non-finite term");
        }
        sum += term;
        const double tail = std::fabs(term) * tail_scale;
        if (tail < ctx.series_tol * std::max(1.0, std::fabs(sum))) {
            return (1.0 - q) * b * sum;
        }
        qj *= q;
    }
    throw NumericsError("q_jackson_integral: no convergence within max_terms");
}

}  // namespace

double q_jackson_integral(const std::function<double(double)>& f, double a,
                          double b, const QContext& ctx) {
    if (!(a >= 0.0) || !(b >= a)) {
        throw std::invalid_argument("q_jackson_integral: requires 0 <= a <= b");
    }
    if (a == b) return 0.0;
    if (ctx.classical()) {
        double err = 0.0;
        double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, a, b, 15, 1e-12, &err);
        if (err > 1e-9 * std::max(1.0, std::fabs(val))) {
            throw NumericsError("q_jackson_integral: classical quadrature did not converge");
        }
        return val;
    }
    return jackson_from_zero(f, b, ctx) - jackson_from_zero(f, a, ctx);
}

}  // namespace qsb
