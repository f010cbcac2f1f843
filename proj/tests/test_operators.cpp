#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qsb/operators.hpp"

using namespace qsb;

namespace {

const TestFunction& f_one() { return corpus_function("1"); }
const TestFunction& f_t() { return corpus_function("t"); }
const TestFunction& f_tsq() { return corpus_function("t^2"); }

}  // namespace

TEST_CASE("OperatorKind enforces its invariants") {
    CHECK_THROWS_AS(OperatorKind::q_stancu_beta(1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(OperatorKind::q_stancu_beta(5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(OperatorKind::cai_preserving(5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(OperatorKind::modified_q(5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(OperatorKind::modified_q(5, 0.0), std::invalid_argument);
    CHECK(OperatorKind::modified_q(5, 1.0).q == 1.0);
    CHECK(OperatorKind::classical(3).q == 1.0);
}

TEST_CASE("closed-form moments per family") {
    const OperatorKind cls = OperatorKind::classical(10);
    const QContext ctx1(1.0);
    const MomentTriple mc = moments(cls, 1.0, ctx1);
    CHECK(mc.m0 == 1.0);
    CHECK(mc.m1 == 1.0);
    CHECK(mc.m2 == doctest::Approx(11.0 / 9.0).epsilon(1e-15));

    const OperatorKind mod = OperatorKind::modified_q(10, 0.9);
    const QContext ctx9 = make_context(mod);
    const MomentTriple mm = moments(mod, 2.0, ctx9);
    const double m = q_integer(10, ctx9);
    CHECK(mm.m0 == 0.9);
    CHECK(mm.m1 == doctest::Approx(1.8).epsilon(1e-15));
    CHECK(mm.m2 == doctest::Approx((m * 2.0 + 1.0) * 2.0 / (m - 1.0)).epsilon(1e-15));

    const OperatorKind qsb = OperatorKind::q_stancu_beta(10, 0.9);
    const MomentTriple mq = moments(qsb, 2.0, ctx9);
    CHECK(mq.m1 == 2.0);
    CHECK(mq.m2 == doctest::Approx(mm.m2 / 0.9).epsilon(1e-15));

    const OperatorKind cai = OperatorKind::cai_preserving(10, 0.9);
    const MomentTriple mcai = moments(cai, 0.0, ctx9);
    CHECK(mcai.m0 == 1.0);
    CHECK(mcai.m1 == 0.0);
    CHECK(mcai.m2 == 0.0);
    CHECK(moments(cai, 3.0, ctx9).m2 == 9.0);
}

TEST_CASE("v_n: zero at zero, increasing, Lemma-3 consistency, n->inf trend") {
    const QContext ctx(0.9);
    CHECK(v_n(0.0, 10, ctx) == 0.0);
    double prev = -1.0;
    for (double x = 0.0; x <= 5.0; x += 0.1) {
        const double v = v_n(x, 10, ctx);
        CHECK(v >= 0.0);
        CHECK(v > prev);
        prev = v;
    }
    // frozen: v_10(1) at q = 0.9 from a 50-digit evaluation
    CHECK(v_n(1.0, 10, ctx) == doctest::Approx(0.79942509292896435).epsilon(1e-14));
    CHECK(moments(OperatorKind::cai_preserving(10, 0.9), 1.0, ctx).m1 ==
          doctest::Approx(v_n(1.0, 10, ctx)).epsilon(1e-15));
    // v_n(1) -> 1 under q_n = n/(n+1), error strictly decreasing
    double prev_err = 1e300;
    for (int n : {10, 100, 1000, 10000}) {
        const double qn = static_cast<double>(n) / (n + 1.0);
        const double err = std::fabs(v_n(1.0, n, QContext(qn)) - 1.0);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-3);
}

TEST_CASE("classical operator: kernel mass, mean, second moment") {
    for (int n : {5, 10}) {
        for (double x : {0.5, 1.0, 2.0}) {
            CHECK(classical_stancu_beta(f_one(), n, x) ==
                  doctest::Approx(1.0).epsilon(1e-10));
            CHECK(classical_stancu_beta(f_t(), n, x) ==
                  doctest::Approx(x).epsilon(1e-10));
        }
    }
    CHECK(classical_stancu_beta(f_tsq(), 10, 1.0) ==
          doctest::Approx(11.0 / 9.0).epsilon(1e-10));
    CHECK_THROWS_AS(classical_stancu_beta(f_t(), 10, 0.0), std::invalid_argument);
}

TEST_CASE("q-Stancu-Beta: integrated moments match the closed forms") {
    for (int n : {5, 10, 50}) {
        for (double q : {0.5, 0.9, 0.99}) {
            const OperatorKind kind = OperatorKind::q_stancu_beta(n, q);
            const QContext ctx = make_context(kind);
            for (double x : {0.5, 2.0, 5.0}) {
                const MomentTriple want = moments(kind, x, ctx);
                CHECK(q_stancu_beta(f_one(), kind, x, ctx) ==
                      doctest::Approx(1.0).epsilon(1e-10));
                CHECK(q_stancu_beta(f_t(), kind, x, ctx) ==
                      doctest::Approx(want.m1).epsilon(1e-9));
                CHECK(q_stancu_beta(f_tsq(), kind, x, ctx) ==
                      doctest::Approx(want.m2).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("q-Stancu-Beta: moments are A-independent") {
    const OperatorKind kind = OperatorKind::q_stancu_beta(10, 0.9);
    const QContext ctx = make_context(kind);
    const double ref1 = q_stancu_beta(f_t(), kind, 2.0, ctx, 1.0);
    const double ref2 = q_stancu_beta(f_tsq(), kind, 2.0, ctx, 1.0);
    for (double A : {0.5, 2.0}) {
        CHECK(q_stancu_beta(f_t(), kind, 2.0, ctx, A) ==
              doctest::Approx(ref1).epsilon(1e-10));
        CHECK(q_stancu_beta(f_tsq(), kind, 2.0, ctx, A) ==
              doctest::Approx(ref2).epsilon(1e-10));
    }
}

TEST_CASE("modified operator: the q-scaling relation and the q=1 branch") {
    const OperatorKind mod = OperatorKind::modified_q(10, 0.9);
    const OperatorKind qsb = OperatorKind::q_stancu_beta(10, 0.9);
    const QContext ctx = make_context(mod);
    for (const TestFunction& f : corpus()) {
        CHECK(modified_q_stancu_beta(f, mod, 1.5, ctx) ==
              doctest::Approx(0.9 * q_stancu_beta(f, qsb, 1.5, ctx)).epsilon(1e-12));
    }
    // closed-form check: L*(1) = q, L*(t) = qx
    CHECK(modified_q_stancu_beta(f_one(), mod, 2.0, ctx) ==
          doctest::Approx(0.9).epsilon(1e-10));
    CHECK(modified_q_stancu_beta(f_t(), mod, 2.0, ctx) ==
          doctest::Approx(1.8).epsilon(1e-9));
    // x = 0 degenerates to q f(0)
    CHECK(modified_q_stancu_beta(corpus_function("exp(-t)"), mod, 0.0, ctx) ==
          doctest::Approx(0.9).epsilon(1e-15));
    // q = 1 is exactly the classical path
    const OperatorKind mod1 = OperatorKind::modified_q(10, 1.0);
    const QContext ctx1 = make_context(mod1);
    for (const TestFunction& f : corpus()) {
        CHECK(modified_q_stancu_beta(f, mod1, 1.0, ctx1) ==
              doctest::Approx(classical_stancu_beta(f, 10, 1.0)).epsilon(1e-14));
    }
}

TEST_CASE("x^2-preserving operator: fixed points and the v_n mean") {
    for (int n : {5, 10, 50}) {
        for (double q : {0.5, 0.9, 0.99}) {
            const OperatorKind kind = OperatorKind::cai_preserving(n, q);
            const QContext ctx = make_context(kind);
            for (double x : {0.01, 0.5, 1.0, 5.0}) {
                CHECK(cai_operator(f_one(), kind, x, ctx) ==
                      doctest::Approx(1.0).epsilon(1e-10));
                CHECK(cai_operator(f_tsq(), kind, x, ctx) ==
                      doctest::Approx(x * x).epsilon(1e-9));
                CHECK(cai_operator(f_t(), kind, x, ctx) ==
                      doctest::Approx(v_n(x, n, ctx)).epsilon(1e-9));
            }
            // degenerate rule at x = 0
            CHECK(cai_operator(corpus_function("exp(-t)"), kind, 0.0, ctx) == 1.0);
            CHECK(cai_operator(f_tsq(), kind, 0.0, ctx) == 0.0);
        }
    }
}

TEST_CASE("central moments: algebraic identity with the explicit form") {
    const OperatorKind kind = OperatorKind::cai_preserving(10, 0.9);
    const QContext ctx = make_context(kind);
    auto cm0 = central_moments(kind, 0.0, ctx);
    CHECK(cm0.alpha == 0.0);
    CHECK(cm0.delta == 0.0);

    // frozen: delta_10(1) = 2 - 2 v - 1/[10] route at q = 0.9
    auto cm1 = central_moments(kind, 1.0, ctx);
    CHECK(cm1.delta == doctest::Approx(0.401149814142071301).epsilon(1e-13));
    CHECK(cm1.alpha == doctest::Approx(v_n(1.0, 10, ctx) - 1.0).epsilon(1e-15));

    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dn(2, 100);
    std::uniform_real_distribution<double> dq(0.05, 0.999), dx(0.0, 10.0);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = dn(rng);
        const double q = dq(rng);
        const double x = dx(rng);
        const QContext c(q);
        const OperatorKind k = OperatorKind::cai_preserving(n, q);
        const CentralMoments cm = central_moments(k, x, c);
        const double m = q_integer(static_cast<unsigned>(n), c);
        const double expl = 2.0 * x * x -
                            2.0 * x * std::sqrt(q * (m - 1.0) / m * x * x +
                                                1.0 / (4.0 * m * m)) +
                            x / m;
        CHECK(std::fabs(cm.delta - expl) < 1e-12);
        CHECK(cm.delta >= -1e-12);
    }
    CHECK_THROWS_AS(central_moments(OperatorKind::modified_q(10, 0.9), 1.0, ctx),
                    std::invalid_argument);
}

TEST_CASE("operators are positive and linear on the corpus") {
    const OperatorKind kind = OperatorKind::cai_preserving(10, 0.9);
    const QContext ctx = make_context(kind);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dc(-2.0, 2.0);
    const auto& fns = corpus();
    for (int rep = 0; rep < 25; ++rep) {
        const auto& f = fns[rep % fns.size()];
        const auto& g = fns[(rep * 3 + 1) % fns.size()];
        const double a = dc(rng), b = dc(rng);
        TestFunction combo{"combo",
                           [&, a, b](double t) { return a * f.eval(t) + b * g.eval(t); },
                           std::nullopt, std::nullopt, false};
        const double x = 0.5 + (rep % 4);
        const double lhs = cai_operator(combo, kind, x, ctx);
        const double rhs = a * cai_operator(f, kind, x, ctx) +
                           b * cai_operator(g, kind, x, ctx);
        CHECK(std::fabs(lhs - rhs) < 1e-10);
    }
    // positivity: nonnegative corpus members stay nonnegative
    for (const char* name : {"1", "t", "t^2", "exp(-t)", "1/(1+t^2)", "sqrt(t)",
                             "abs(t-1)"}) {
        for (double x : {0.25, 1.0, 4.0}) {
            CHECK(cai_operator(corpus_function(name), kind, x, ctx) >= 0.0);
        }
    }
}

TEST_CASE("normalize_to_unit: reciprocal, homogeneity, end-to-end mean") {
    const QContext ctx(0.5);
    auto g = [](double u) { return u / std::pow(1.0 + u, 6.0); };
    const double integral = q_improper_integral(g, 1.0, ctx);
    const double k = normalize_to_unit(g, 1.0, ctx);
    CHECK(k * integral == doctest::Approx(1.0).epsilon(1e-15));
    auto g3 = [&](double u) { return 3.0 * g(u); };
    CHECK(normalize_to_unit(g3, 1.0, ctx) == doctest::Approx(k / 3.0).epsilon(1e-14));
    auto neg = [](double u) { return -u / std::pow(1.0 + u, 6.0); };
    CHECK_THROWS_AS(normalize_to_unit(neg, 1.0, ctx), NumericsError);
}

TEST_CASE("public normalization route assembles the operator with mean x") {
    // same kernel family the operator engine uses, assembled through
    // normalize_to_unit and q_improper_integral at desk-scale parameters
    const int n = 5;
    const double q = 0.5, x = 1.0;
    const QContext ctx(q, 1e-12, 100000, 300);
    const OperatorKind kind = OperatorKind::q_stancu_beta(n, q);
    const double direct_t = q_stancu_beta(corpus_function("t"), kind, x, ctx);
    CHECK(direct_t == doctest::Approx(x).epsilon(1e-9));

    const double direct_one = q_stancu_beta(corpus_function("1"), kind, x, ctx);
    CHECK(direct_one == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("context/kind mismatch is rejected") {
    const OperatorKind kind = OperatorKind::q_stancu_beta(10, 0.9);
    const QContext wrong(0.5);
    CHECK_THROWS_AS(q_stancu_beta(f_t(), kind, 1.0, wrong), std::invalid_argument);
    CHECK_THROWS_AS(moments(kind, 1.0, wrong), std::invalid_argument);
}
