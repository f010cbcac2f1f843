#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsb/cli.hpp"
#include "qsb/convergence.hpp"
#include "qsb/operators.hpp"
#include "qsb/statconv.hpp"

namespace py = pybind11;
using namespace qsb;

namespace {

TestFunction make_function(const std::string& name,
                           const std::function<double(double)>& eval,
                           std::optional<double> bound,
                           std::optional<std::pair<double, double>> lipschitz,
                           bool nondecreasing) {
    std::optional<LipschitzDecl> lip;
    if (lipschitz) lip = LipschitzDecl{lipschitz->first, lipschitz->second};
    return TestFunction{name, eval, bound, lip, nondecreasing};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stancu-Beta operator family: q-calculus, operators, convergence "
              "analysis and statistical-convergence checks";

    py::register_exception<NumericsError>(m, "NumericsError", PyExc_ArithmeticError);

    py::class_<QContext>(m, "QContext")
        .def(py::init<double, double, std::size_t, int>(), py::arg("q"),
             py::arg("series_tol") = 1e-12, py::arg("max_terms") = 100000,
             py::arg("bilateral_range") = 300)
        .def_readonly("q", &QContext::q)
        .def_readonly("series_tol", &QContext::series_tol)
        .def_readonly("max_terms", &QContext::max_terms)
        .def_readonly("bilateral_range", &QContext::bilateral_range)
        .def("__repr__", [](const QContext& c) {
            return "QContext(q=" + format_sig15(c.q) + ")";
        });

    m.def("q_integer", &q_integer, py::arg("k"), py::arg("ctx"));
    m.def("q_real_bracket", &q_real_bracket, py::arg("t"), py::arg("ctx"));
    m.def("q_factorial", &q_factorial, py::arg("k"), py::arg("ctx"));
    m.def("q_binomial", &q_binomial, py::arg("n"), py::arg("k"), py::arg("ctx"));
    m.def("q_pochhammer_real", &q_pochhammer_real, py::arg("u"), py::arg("t"),
          py::arg("ctx"));
    m.def("q_gamma", &q_gamma, py::arg("t"), py::arg("ctx"));
    m.def("q_beta", &q_beta, py::arg("t"), py::arg("s"), py::arg("ctx"));
    m.def("q_improper_integral", &q_improper_integral, py::arg("f"), py::arg("A"),
          py::arg("ctx"));
    m.def("q_jackson_integral", &q_jackson_integral, py::arg("f"), py::arg("a"),
          py::arg("b"), py::arg("ctx"));

    py::class_<TestFunction>(m, "TestFunction")
        .def_readonly("name", &TestFunction::name)
        .def_readonly("nondecreasing", &TestFunction::nondecreasing)
        .def("__call__", [](const TestFunction& f, double x) { return f.eval(x); });
    m.def("make_function", &make_function, py::arg("name"), py::arg("eval"),
          py::arg("bound") = std::nullopt, py::arg("lipschitz") = std::nullopt,
          py::arg("nondecreasing") = false);
    m.def("corpus", [] { return corpus(); });
    m.def("corpus_function", &corpus_function, py::arg("name"),
          py::return_value_policy::reference);

    py::enum_<OperatorFamily>(m, "OperatorFamily")
        .value("Classical", OperatorFamily::Classical)
        .value("QStancuBeta", OperatorFamily::QStancuBeta)
        .value("ModifiedQ", OperatorFamily::ModifiedQ)
        .value("CaiPreserving", OperatorFamily::CaiPreserving);

    py::class_<OperatorKind>(m, "OperatorKind")
        .def_static("classical", &OperatorKind::classical, py::arg("n"))
        .def_static("q_stancu_beta", &OperatorKind::q_stancu_beta, py::arg("n"),
                    py::arg("q"))
        .def_static("modified_q", &OperatorKind::modified_q, py::arg("n"), py::arg("q"))
        .def_static("cai_preserving", &OperatorKind::cai_preserving, py::arg("n"),
                    py::arg("q"))
        .def_readonly("family", &OperatorKind::family)
        .def_readonly("n", &OperatorKind::n)
        .def_readonly("q", &OperatorKind::q);

    py::class_<MomentTriple>(m, "MomentTriple")
        .def_readonly("m0", &MomentTriple::m0)
        .def_readonly("m1", &MomentTriple::m1)
        .def_readonly("m2", &MomentTriple::m2);
    py::class_<CentralMoments>(m, "CentralMoments")
        .def_readonly("alpha", &CentralMoments::alpha)
        .def_readonly("delta", &CentralMoments::delta);

    m.def("make_context", &make_context, py::arg("kind"),
          py::arg("series_tol") = 1e-12, py::arg("max_terms") = 100000,
          py::arg("bilateral_range") = 300);
    m.def("classical_stancu_beta", &classical_stancu_beta, py::arg("f"), py::arg("n"),
          py::arg("x"));
    m.def("q_stancu_beta", &q_stancu_beta, py::arg("f"), py::arg("kind"), py::arg("x"),
          py::arg("ctx"), py::arg("A") = 1.0);
    m.def("modified_q_stancu_beta", &modified_q_stancu_beta, py::arg("f"),
          py::arg("kind"), py::arg("x"), py::arg("ctx"), py::arg("A") = 1.0);
    m.def("v_n", &v_n, py::arg("x"), py::arg("n"), py::arg("ctx"));
    m.def("cai_operator", &cai_operator, py::arg("f"), py::arg("kind"), py::arg("x"),
          py::arg("ctx"), py::arg("A") = 1.0);
    m.def("moments", &moments, py::arg("kind"), py::arg("x"), py::arg("ctx"));
    m.def("central_moments", &central_moments, py::arg("kind"), py::arg("x"),
          py::arg("ctx"));
    m.def("apply_operator", &apply_operator, py::arg("f"), py::arg("kind"),
          py::arg("x"), py::arg("ctx"));

    py::class_<Grid>(m, "Grid")
        .def(py::init<double, double, int>(), py::arg("x_min"), py::arg("x_max"),
             py::arg("points"))
        .def_readonly("x_min", &Grid::x_min)
        .def_readonly("x_max", &Grid::x_max)
        .def_readonly("points", &Grid::points)
        .def("spacing", &Grid::spacing)
        .def("values", &Grid::values);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("x", &BoundReport::x)
        .def_readonly("lhs", &BoundReport::lhs)
        .def_readonly("rhs", &BoundReport::rhs)
        .def_readonly("slack", &BoundReport::slack)
        .def_readonly("holds", &BoundReport::holds);

    py::class_<LipschitzClass>(m, "LipschitzClass")
        .def(py::init([](double alpha, double M, std::vector<double> E) {
                 return LipschitzClass{alpha, M, std::move(E)};
             }),
             py::arg("alpha"), py::arg("M"), py::arg("E"));

    py::enum_<NormKind>(m, "NormKind")
        .value("Sup", NormKind::Sup)
        .value("Weighted", NormKind::Weighted);

    m.def("modulus_of_continuity", &modulus_of_continuity, py::arg("f"),
          py::arg("delta"), py::arg("grid"));
    m.def("check_pointwise_inequality", &check_pointwise_inequality, py::arg("f"),
          py::arg("t"), py::arg("x"), py::arg("delta"), py::arg("grid"));
    m.def("rate_bound_theorem5", &rate_bound_theorem5, py::arg("f"), py::arg("kind"),
          py::arg("x"), py::arg("ctx"), py::arg("grid"));
    m.def("lipschitz_maximal", &lipschitz_maximal, py::arg("f"), py::arg("x"),
          py::arg("alpha"), py::arg("grid"));
    m.def("distance_to_set", &distance_to_set, py::arg("x"), py::arg("E"));
    m.def("rate_bound_theorem6", &rate_bound_theorem6, py::arg("f"), py::arg("lip"),
          py::arg("kind"), py::arg("x"), py::arg("ctx"));
    m.def("weighted_norm", &weighted_norm, py::arg("f"), py::arg("grid"));

    py::class_<KorovkinProfile>(m, "KorovkinProfile")
        .def_readonly("error_one", &KorovkinProfile::error_one)
        .def_readonly("error_t", &KorovkinProfile::error_t)
        .def_readonly("error_tsq", &KorovkinProfile::error_tsq)
        .def_readonly("t_error_bound", &KorovkinProfile::t_error_bound);
    m.def("korovkin_error_profile", &korovkin_error_profile, py::arg("kind"),
          py::arg("grid"), py::arg("ctx"), py::arg("norm"));

    py::class_<IndexSet>(m, "IndexSet")
        .def(py::init([](std::function<bool(std::uint64_t)> f, std::string d) {
                 return IndexSet{std::move(f), std::move(d)};
             }),
             py::arg("contains"), py::arg("description"));
    m.def("perfect_squares", [] {
        return IndexSet{[](std::uint64_t j) {
                            const auto r = static_cast<std::uint64_t>(
                                std::llround(std::sqrt(static_cast<double>(j))));
                            return r * r == j;
                        },
                        "perfect squares"};
    });
    m.def("natural_density", &natural_density, py::arg("K"), py::arg("horizon"));
    m.def("statistical_limit_estimate",
          [](const std::vector<double>& prefix, double L, double eps,
             std::uint64_t horizon) {
              return statistical_limit_estimate(prefix, L, eps, horizon);
          },
          py::arg("prefix"), py::arg("L"), py::arg("eps"), py::arg("horizon"));
    m.def("qn_standard", &qn_standard, py::arg("n"));
    m.def("qn_statistical_only", &qn_statistical_only, py::arg("n"));

    py::class_<SequenceSpec>(m, "SequenceSpec")
        .def_readonly("name", &SequenceSpec::name)
        .def_readonly("ordinary_convergent", &SequenceSpec::ordinary_convergent)
        .def("__call__",
             [](const SequenceSpec& s, std::uint64_t n) { return s.generator(n); });
    m.def("standard_sequence", &standard_sequence);
    m.def("statistical_only_sequence", &statistical_only_sequence);
    m.def("constant_sequence", &constant_sequence, py::arg("c"));
    m.def("ordinary_convergence_check", &ordinary_convergence_check, py::arg("seq"),
          py::arg("L"), py::arg("eps"), py::arg("horizon"), py::arg("window"));

    py::class_<ConditionLadder>(m, "ConditionLadder")
        .def_readonly("name", &ConditionLadder::name)
        .def_readonly("declared_limit", &ConditionLadder::declared_limit)
        .def_readonly("horizons", &ConditionLadder::horizons)
        .def_readonly("densities_eps_coarse", &ConditionLadder::densities_eps_coarse)
        .def_readonly("densities_eps_fine", &ConditionLadder::densities_eps_fine)
        .def_readonly("monotone", &ConditionLadder::monotone)
        .def_readonly("pass_", &ConditionLadder::pass);
    py::class_<Conditions7Report>(m, "Conditions7Report")
        .def_readonly("conditions", &Conditions7Report::conditions)
        .def_readonly("a_estimate", &Conditions7Report::a_estimate)
        .def_readonly("a_within_tolerance", &Conditions7Report::a_within_tolerance)
        .def_readonly("indeterminate", &Conditions7Report::indeterminate)
        .def_readonly("pass_", &Conditions7Report::pass);
    m.def("verify_conditions7", &verify_conditions7, py::arg("spec"),
          py::arg("horizon"), py::arg("density_threshold") = 1e-2,
          py::arg("a_rel_tol") = 0.01);

    py::enum_<Command>(m, "Command")
        .value("Moments", Command::Moments)
        .value("Converge", Command::Converge)
        .value("Bounds", Command::Bounds)
        .value("Statistical", Command::Statistical)
        .value("Compare", Command::Compare);
    py::enum_<OutputFormat>(m, "OutputFormat")
        .value("Csv", OutputFormat::Csv)
        .value("Json", OutputFormat::Json);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("command", &RunConfig::command)
        .def_readwrite("op_family", &RunConfig::op_family)
        .def_readwrite("n_ladder", &RunConfig::n_ladder)
        .def_readwrite("q_values", &RunConfig::q_values)
        .def_readwrite("x_cells", &RunConfig::x_cells)
        .def_readwrite("sequence", &RunConfig::sequence)
        .def_readwrite("grid_max", &RunConfig::grid_max)
        .def_readwrite("grid_points", &RunConfig::grid_points)
        .def_readwrite("moment_tol", &RunConfig::moment_tol);

    py::class_<Report>(m, "Report")
        .def("to_csv", &Report::to_csv)
        .def("to_json", [](const Report& r) { return r.to_json().dump(2); })
        .def("all_pass", &Report::all_pass)
        .def("row_count", [](const Report& r) { return r.rows().size(); });
    m.def("run", &run, py::arg("config"));
}
