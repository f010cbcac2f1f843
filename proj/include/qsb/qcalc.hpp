#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace qsb {

/// Thrown when a series, product, or quadrature fails to reach its target
/// accuracy within the configured budget. The message carries the achieved
/// error estimate where one is available.
class NumericsError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Evaluation context for every q-dependent computation.
 *
 * q must lie in (0, 1]; the q > 1 regime is rejected as unsupported.
 * series_tol bounds the estimated *tail* of truncated infinite products and
 * sums, max_terms caps the number of retained terms, and bilateral_range is
 * the half-width N of the Koornwinder window (sum over q^j/A, j in [-N, N]).
 */
struct QContext {
    double q;
    double series_tol = 1e-12;
    std::size_t max_terms = 100000;
    int bilateral_range = 300;

    explicit QContext(double q_value, double tol = 1e-12,
                      std::size_t terms = 100000, int range = 300)
        : q(q_value), series_tol(tol), max_terms(terms), bilateral_range(range) {
        if (!(q > 0.0) || q > 1.0) {
            throw std::invalid_argument("QContext: q must lie in (0,1]; q > 1 is unsupported");
        }
        if (!(series_tol > 0.0)) {
            throw std::invalid_argument("QContext: series_tol must be positive");
        }
        if (max_terms < 1) {
            throw std::invalid_argument("QContext: max_terms must be >= 1");
        }
        if (bilateral_range < 1) {
            throw std::invalid_argument("QContext: bilateral_range must be >= 1");
        }
    }

    bool classical() const { return q == 1.0; }
};

/// [k]_q = (1 - q^k)/(1 - q); equals k when q = 1. Total for k >= 0.
double q_integer(unsigned k, const QContext& ctx);

/// Real-exponent extension of the q-bracket: (1 - q^t)/(1 - q) for t >= 0.
/// Agrees with q_integer on integers and is nondecreasing in t.
double q_real_bracket(double t, const QContext& ctx);

/// [k]_q! = [k]_q [k-1]_q ... [1]_q, with [0]_q! = 1.
double q_factorial(unsigned k, const QContext& ctx);

/// Gaussian binomial [n choose k]_q = [n]_q! / ([k]_q! [n-k]_q!).
/// Rejects k > n. Symmetric under k <-> n-k.
double q_binomial(unsigned n, unsigned k, const QContext& ctx);

/**
 * Real-exponent q-power (1+u)_q^t = prod_{j>=0} (1+q^j u)/(1+q^{t+j} u),
 * for u >= 0, t >= 0. Coincides with the finite product
 * (1+u)(1+qu)...(1+q^{m-1}u) at integer t = m, and with (1+u)^t at q = 1.
 */
double q_pochhammer_real(double u, double t, const QContext& ctx);

/// log of q_pochhammer_real evaluated at ln(u); safe for u far outside the
/// representable range of double. Requires q < 1.
double ln_q_pochhammer_real(double ln_u, double t, const QContext& ctx);

/**
 * q-Gamma via the standard product
 *   Gamma_q(t) = (1-q)^{1-t} prod_{j>=0} (1-q^{j+1})/(1-q^{j+t}),  t > 0,
 * with the classical Gamma at q = 1. Satisfies Gamma_q(1) = 1 and the
 * functional equation Gamma_q(t+1) = [t]_q Gamma_q(t).
 */
double q_gamma(double t, const QContext& ctx);

/// q-Beta through Gamma_q products: B_q(t,s) = Gamma_q(t)Gamma_q(s)/Gamma_q(t+s).
/// Symmetric in (t,s); reduces to the Euler Beta as q -> 1.
double q_beta(double t, double s, const QContext& ctx);

/**
 * Koornwinder q-improper integral
 *   int_0^{inf/A} f(u) d_q u = (1-q) sum_{j=-N}^{N} f(q^j/A) q^j/A
 * truncated at N = ctx.bilateral_range. Throws NumericsError when the
 * retained boundary terms are not negligible against series_tol
 * (relative to max(1, |sum|)). Requires q < 1 and A > 0.
 */
double q_improper_integral(const std::function<double(double)>& f, double A,
                           const QContext& ctx);

/**
 * Finite-interval q-integral. For 0 <= a <= b,
 *   int_0^b f d_q t = (1-q) b sum_{j>=0} f(q^j b) q^j,
 *   int_a^b f d_q t = int_0^b - int_0^a.
 * Note the difference form is a signed functional unless a lies on the
 * lattice {b q^m}; Cauchy-Schwarz-type inequalities require lattice-aligned
 * lower limits. q = 1 falls back to adaptive classical quadrature.
 */
double q_jackson_integral(const std::function<double(double)>& f, double a,
                          double b, const QContext& ctx);

}  // namespace qsb
