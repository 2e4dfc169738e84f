#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "artifact/errors.hpp"
#include "artifact/experiments.hpp"

namespace py = pybind11;
using namespace artifact;

namespace {

const Eigenform& builtin_eigenform(int weight) {
    static std::map<int, Eigenform> cache;
    auto it = cache.find(weight);
    if (it == cache.end())
        it = cache.emplace(weight, weight == 12 ? delta_eigenform(2000) : level1_eigenform(weight)).first;
    return it->second;
}

py::dict class_group_py(int64_t D) {
    const ClassGroup cg = class_group(D);
    std::vector<std::tuple<int64_t, int64_t, int64_t>> forms;
    for (const auto& q : cg.reduced_forms) forms.emplace_back(q.a, q.b, q.c);
    py::dict d;
    d["D"] = D;
    d["h"] = cg.h();
    d["forms"] = forms;
    d["invariants"] = decompose(cg).group.divisors();
    return d;
}

py::dict heegner_py(int64_t D, int64_t N) {
    const int64_t r = orientations(D, N).front();
    const ExplicitRepresentatives rep = explicit_representatives(D, N, r, base_heegner_form(D, N, r));
    py::list reps;
    for (const auto& e : rep.entries) {
        py::dict x;
        x["p"] = e.p;
        x["form"] = std::make_tuple(e.Q.form.a, e.Q.form.b, e.Q.form.c);
        x["class"] = e.cls;
        x["z"] = heegner_point(e.Q).z();
        reps.append(x);
    }
    py::dict d;
    d["D"] = D;
    d["N"] = N;
    d["r"] = r;
    d["representatives"] = reps;
    d["lemma41"] = lemma41_check(rep);
    return d;
}

py::dict lvalue_py(int64_t D, int chi, int weight, std::optional<int> infty_type, double s) {
    auto f = std::make_shared<const Eigenform>(builtin_eigenform(weight));
    const HeckeCharacter om = twist(base_hecke_character(make_field(D), infty_type.value_or(weight)), chi);
    const RSLfunction L = make_rs_lfunction(f, om);
    const AfeResult r = s == 0.5 ? afe_central_value(L) : afe_eval(L, s);
    py::dict d;
    d["value"] = r.value;
    d["error"] = r.error_estimate;
    d["terms_used"] = r.terms_used;
    return d;
}

py::dict waldspurger_py(int64_t D, int weight) {
    const WaldspurgerReport r = waldspurger_check(D, builtin_eigenform(weight));
    py::list rows;
    for (const auto& row : r.rows) {
        py::dict x;
        x["chi"] = row.chi;
        x["period_sq"] = row.period_sq;
        x["value"] = row.l_value;
        x["error"] = row.l_error;
        x["ratio"] = row.ratio;
        x["inconsistent"] = row.inconsistent;
        rows.append(x);
    }
    py::dict d;
    d["D"] = r.D;
    d["rows"] = rows;
    d["dispersion"] = r.dispersion;
    d["normalized_ratio"] = r.normalized_ratio;
    d["c_inf"] = std::make_pair(r.c_inf.variantA, r.c_inf.variantB);
    return d;
}

py::dict moment_py(int64_t D, int n, bool diagonal, double tol) {
    const auto pv = flagship_periods(D, n);
    const MomentCheck m = diagonal ? diagonal_moment_check(pv, tol) : wide_moment_assembly(pv, tol);
    py::dict d;
    d["lhs"] = m.lhs;
    d["rhs"] = m.rhs;
    d["delta"] = m.rel_error;
    d["agree"] = m.agree;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Heegner periods, Rankin-Selberg L-values and wide moments";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
    py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_ArithmeticError);

    m.def("is_fundamental", &is_fundamental, py::arg("D"));
    m.def("class_group", &class_group_py, py::arg("D"));
    m.def("heegner", &heegner_py, py::arg("D"), py::arg("N") = 1);
    m.def("tau", [](int64_t n_max) {
        std::vector<py::int_> out;
        for (const auto& t : delta_qexp(n_max)) out.emplace_back(py::int_(py::str(t.get_str())));
        return out;
    }, py::arg("n_max"));
    m.def("theta", [](int64_t D, int k, int chi, int64_t terms) {
        return theta_coefficients(twist(base_hecke_character(make_field(D), k), chi), terms).lambda;
    }, py::arg("D"), py::arg("k") = 0, py::arg("chi") = 0, py::arg("terms") = 20);
    m.def("whittaker", [](double kappa, cplx mu, double y) {
        const WhittakerEval w = whittaker(kappa, mu, y);
        return std::make_pair(w.value, w.error_bound);
    }, py::arg("kappa"), py::arg("mu"), py::arg("y"));
    m.def("petersson_norm", [](int weight) { return petersson_norm(builtin_eigenform(weight)); }, py::arg("weight") = 12);
    m.def("lvalue", &lvalue_py, py::arg("D"), py::arg("chi") = 0, py::arg("weight") = 12,
          py::arg("infty_type") = py::none(), py::arg("s") = 0.5);
    m.def("waldspurger", &waldspurger_py, py::arg("D"), py::arg("weight") = 12);
    m.def("wide_moment", [](int64_t D, int n, double tol) { return moment_py(D, n, false, tol); }, py::arg("D"),
          py::arg("n"), py::arg("tol") = 1e-9);
    m.def("diagonal_moment", [](int64_t D, int n, double tol) { return moment_py(D, n, true, tol); }, py::arg("D"),
          py::arg("n"), py::arg("tol") = 1e-9);
    m.def("equidistribution", [](const std::vector<int64_t>& discs) {
        std::vector<std::tuple<int64_t, int, double, double, double>> out;
        for (const auto& r : equidistribution_scan(normalized_series(builtin_eigenform(12)), discs))
            out.emplace_back(r.D, r.h, r.mean_sq, r.deviation, r.weyl);
        return out;
    }, py::arg("discs"), "Rows (D, h, mean |f|^2, deviation from 3/pi, Weyl sum) for f = y^6 Delta normalized.");
}
