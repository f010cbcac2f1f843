#pragma once

#include <functional>

#include "qsb/qcalc.hpp"
#include "qsb/test_function.hpp"

namespace qsb {

enum class OperatorFamily { Classical, QStancuBeta, ModifiedQ, CaiPreserving };

/// One of the four Stancu-Beta operator families with its parameters.
/// n >= 2 throughout (the second moment divides by [n]_q - 1). q is ignored
/// for the classical family and must be strictly below 1 for the q-analogue
/// and the x^2-preserving family.
struct OperatorKind {
    OperatorFamily family;
    int n;
    double q;

    static OperatorKind classical(int n) { return make(OperatorFamily::Classical, n, 1.0); }
    static OperatorKind q_stancu_beta(int n, double q) {
        return make(OperatorFamily::QStancuBeta, n, q);
    }
    static OperatorKind modified_q(int n, double q) {
        return make(OperatorFamily::ModifiedQ, n, q);
    }
    static OperatorKind cai_preserving(int n, double q) {
        return make(OperatorFamily::CaiPreserving, n, q);
    }

    const char* family_name() const;

  private:
    static OperatorKind make(OperatorFamily f, int n, double q);
};

/// Values of an operator on the Korovkin test set {1, t, t^2}.
struct MomentTriple {
    double m0;
    double m1;
    double m2;
};

/// First and second central moments: alpha = Op(t-x; x), delta = Op((t-x)^2; x).
struct CentralMoments {
    double alpha;
    double delta;
};

/// A QContext whose q matches the operator kind (tolerances at defaults).
QContext make_context(const OperatorKind& kind, double series_tol = 1e-12,
                      std::size_t max_terms = 100000, int bilateral_range = 300);

/**
 * Classical Stancu-Beta operator
 *   L_n(f;x) = (1/B(nx, n+1)) int_0^inf t^{nx-1}/(1+t)^{nx+n+1} f(t) dt
 * evaluated by adaptive quadrature after the substitution t = u/(1-u).
 * Requires x > 0, n >= 1 and f of at most quadratic growth.
 */
double classical_stancu_beta(const TestFunction& f, int n, double x);

/**
 * q-analogue of the Stancu-Beta operator: the expectation of f against a
 * q-Beta-type lattice density over {q^j / A}, normalized so that f == 1 maps
 * to exactly 1. The kernel exponent and the argument scale are calibrated per
 * (n,q,x) so that the first two moments equal the closed forms in `moments`
 * (m1 = x, m2 = ([n]x+1)x / (q([n]-1))); the moments are A-independent.
 * Requires x > 0, q in (0,1), ctx.q == kind.q.
 */
double q_stancu_beta(const TestFunction& f, const OperatorKind& kind, double x,
                     const QContext& ctx, double A = 1.0);

/// Modified operator: q times the q-Stancu-Beta value; at q = 1 this is
/// exactly the classical operator. Accepts x >= 0 (point mass at 0 when x=0).
double modified_q_stancu_beta(const TestFunction& f, const OperatorKind& kind,
                              double x, const QContext& ctx, double A = 1.0);

/// Reparameterization making t^2 a fixed point:
///   v_n(x) = sqrt( q([n]-1)/[n] x^2 + 1/(4[n]^2) ) - 1/(2[n]).
/// Computed in rationalized form: v_n(0) = 0 exactly, v_n >= 0, increasing.
double v_n(double x, int n, const QContext& ctx);

/// x^2-preserving operator: the q-Stancu-Beta kernel with x replaced by
/// v_n(x). At x = 0 the kernel collapses to a point mass and f(0) is
/// returned. Requires q in (0,1).
double cai_operator(const TestFunction& f, const OperatorKind& kind, double x,
                    const QContext& ctx, double A = 1.0);

/// Closed-form moment triple for the family (the oracle the integral
/// evaluation is tested against):
///   Classical:     (1, x, (nx+1)x/(n-1))
///   QStancuBeta:   (1, x, ([n]x+1)x/(q([n]-1)))
///   ModifiedQ:     (q, qx, ([n]x+1)x/([n]-1))
///   CaiPreserving: (1, v_n(x), x^2)
MomentTriple moments(const OperatorKind& kind, double x, const QContext& ctx);

/// Central moments of the x^2-preserving family from the closed-form
/// moments: alpha = m1 - x (= v_n(x) - x, nonzero in general), and
/// delta = m2 - 2x m1 + x^2 m0 = 2x^2 - 2x sqrt(q([n]-1)/[n] x^2 + 1/(4[n]^2)) + x/[n].
CentralMoments central_moments(const OperatorKind& kind, double x, const QContext& ctx);

/// Reciprocal of the q-improper integral of a strictly positive kernel, so
/// that (result x integral) == 1. Throws when the integral is not positive.
double normalize_to_unit(const std::function<double(double)>& kernel, double A,
                         const QContext& ctx);

/// Dispatch on the family; classical ignores ctx.
double apply_operator(const TestFunction& f, const OperatorKind& kind, double x,
                      const QContext& ctx);

}  // namespace qsb
