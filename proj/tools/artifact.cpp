#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "artifact/errors.hpp"
#include "artifact/experiments.hpp"

using namespace artifact;
using nlohmann::json;

namespace {

struct Options {
    int64_t disc = -23;
    int64_t level = 1;
    int weight = 12;
    std::optional<int> infty_type;
    int n = 2;
    int64_t terms = 20;
    std::string out;
    double tol = 1e-9;
    int chi = 0;
    double s = 0.5;
    std::string coeffs;
    int64_t to = -23;
};

// rounds to 15 significant digits so json dumps the same digits as the csv writer
double num(double v) { return std::stod(format_double(v)); }

json cnum(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

json form_json(const QuadForm& q) { return json::array({q.a, q.b, q.c}); }

Eigenform select_eigenform(const Options& o) {
    if (!o.coeffs.empty()) return load_eigenform(o.coeffs, o.weight, o.level);
    if (o.level != 1) throw PreconditionError("no built-in eigenform of level " + std::to_string(o.level) + "; pass --coeffs");
    if (o.weight == 12) return delta_eigenform(2000);
    return level1_eigenform(o.weight);
}

bool csv(const Options& o, const char* fallback) { return (o.out.empty() ? fallback : o.out) == std::string("csv"); }

int run_classgroup(const Options& o) {
    const ClassGroup cg = class_group(o.disc);
    const Decomposition dec = decompose(cg);
    if (csv(o, "json")) {
        std::cout << "index,a,b,c\n";
        for (int i = 0; i < cg.h(); ++i) {
            const QuadForm& q = cg.reduced_forms[i];
            std::cout << i << ',' << q.a << ',' << q.b << ',' << q.c << '\n';
        }
        return 0;
    }
    json j{{"D", cg.D}, {"h", cg.h()}, {"invariants", dec.group.divisors()}, {"forms", json::array()}};
    for (const auto& q : cg.reduced_forms) j["forms"].push_back(form_json(q));
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_heegner(const Options& o) {
    const auto rs = orientations(o.disc, o.level);
    const int64_t r = rs.front();
    const ExplicitRepresentatives rep = explicit_representatives(o.disc, o.level, r, base_heegner_form(o.disc, o.level, r));
    const Lemma41Report l41 = lemma41_report(rep);
    if (csv(o, "json")) {
        std::cout << "i,p,a,b,c,class,x,y\n";
        for (size_t i = 0; i < rep.entries.size(); ++i) {
            const auto& e = rep.entries[i];
            const HeegnerPoint z = heegner_point(e.Q);
            std::cout << i << ',' << e.p << ',' << e.Q.form.a << ',' << e.Q.form.b << ',' << e.Q.form.c << ',' << e.cls
                      << ',' << format_double(z.x) << ',' << format_double(z.y) << '\n';
        }
    } else {
        json j{{"D", o.disc}, {"N", o.level}, {"orientations", rs}, {"r", r}, {"lemma41", l41.ok}};
        j["representatives"] = json::array();
        for (const auto& e : rep.entries) {
            const HeegnerPoint z = heegner_point(e.Q);
            j["representatives"].push_back(
                {{"p", e.p}, {"form", form_json(e.Q.form)}, {"class", e.cls}, {"z", {num(z.x), num(z.y)}}});
        }
        if (!l41.ok) j["failing"] = l41.failing;
        std::cout << j.dump(2) << '\n';
    }
    return l41.ok ? 0 : 2;
}

int run_theta(const Options& o) {
    auto F = make_field(o.disc);
    const HeckeCharacter om = twist(base_hecke_character(F, o.infty_type.value_or(0)), o.chi);
    const ThetaSeries th = theta_coefficients(om, o.terms);
    if (csv(o, "csv")) {
        std::cout << "n,lambda_re,lambda_im\n";
        for (int64_t n = 1; n <= th.n_max(); ++n)
            std::cout << n << ',' << format_double(th.lambda[n].real()) << ',' << format_double(th.lambda[n].imag()) << '\n';
        return 0;
    }
    json j{{"D", o.disc}, {"k", om.k}, {"chi", o.chi}, {"weight", th.weight}, {"cuspidal", th.cuspidal}};
    j["lambda"] = json::array();
    for (int64_t n = 1; n <= th.n_max(); ++n) j["lambda"].push_back(cnum(th.lambda[n]));
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_lvalue(const Options& o) {
    auto f = std::make_shared<const Eigenform>(select_eigenform(o));
    auto F = make_field(o.disc);
    const HeckeCharacter om = twist(base_hecke_character(F, o.infty_type.value_or(f->weight)), o.chi);
    const RSLfunction L = make_rs_lfunction(f, om);
    const AfeResult r = o.s == 0.5 ? afe_central_value(L) : afe_eval(L, o.s);
    if (csv(o, "json")) {
        std::cout << "D,chi,k,s,value_re,value_im,error,terms_used\n"
                  << o.disc << ',' << o.chi << ',' << om.k << ',' << format_double(o.s) << ','
                  << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ','
                  << format_double(r.error_estimate) << ',' << r.terms_used << '\n';
        return 0;
    }
    json j{{"D", o.disc}, {"chi", o.chi}, {"k", om.k}, {"s", o.s}, {"value", cnum(r.value)},
           {"error", num(r.error_estimate)}, {"terms_used", r.terms_used}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_waldspurger(const Options& o) {
    const WaldspurgerReport rep = waldspurger_check(o.disc, select_eigenform(o));
    bool bad = rep.dispersion > 1e-3;
    for (const auto& r : rep.rows) bad |= r.inconsistent;
    if (csv(o, "csv")) {
        write_csv(std::cout, rep);
        std::cerr << "dispersion " << format_double(rep.dispersion) << "\nnormalized_ratio "
                  << format_double(rep.normalized_ratio) << "\nc_inf_A " << format_double(rep.c_inf.variantA)
                  << "\nc_inf_B " << format_double(rep.c_inf.variantB) << '\n';
    } else {
        json j{{"D", rep.D},
               {"k", rep.k},
               {"dispersion", num(rep.dispersion)},
               {"mean_ratio", num(rep.mean_ratio)},
               {"petersson", num(rep.petersson)},
               {"sym2_at_1", num(rep.sym2)},
               {"base_constant", num(rep.base_constant)},
               {"normalized_ratio", num(rep.normalized_ratio)},
               {"c_inf", {{"A", num(rep.c_inf.variantA)}, {"B", num(rep.c_inf.variantB)}}},
               {"match", {{"A", num(rep.match_A)}, {"B", num(rep.match_B)}}},
               {"rows", json::array()}};
        for (const auto& r : rep.rows)
            j["rows"].push_back({{"chi", r.chi}, {"period_sq", num(r.period_sq)}, {"value", num(r.l_value)},
                                 {"error", num(r.l_error)}, {"terms_used", r.terms}, {"ratio", num(r.ratio)},
                                 {"inconsistent", r.inconsistent}});
        std::cout << j.dump(2) << '\n';
    }
    return bad ? 2 : 0;
}

int run_moment(const Options& o, bool diagonal) {
    const auto pv = flagship_periods(o.disc, o.n);
    const MomentCheck m = diagonal ? diagonal_moment_check(pv, o.tol) : wide_moment_assembly(pv, o.tol);
    if (csv(o, "csv")) {
        std::cout << "D,n,lhs_re,lhs_im,rhs_re,rhs_im,delta,agree\n"
                  << o.disc << ',' << o.n << ',' << format_double(m.lhs.real()) << ',' << format_double(m.lhs.imag())
                  << ',' << format_double(m.rhs.real()) << ',' << format_double(m.rhs.imag()) << ','
                  << format_double(m.rel_error) << ',' << (m.agree ? 1 : 0) << '\n';
    } else {
        json j{{"D", o.disc}, {"n", o.n}, {"lhs", cnum(m.lhs)}, {"rhs", cnum(m.rhs)}, {"delta", num(m.rel_error)},
               {"agree", m.agree}};
        std::cout << j.dump(2) << '\n';
    }
    return m.agree ? 0 : 2;
}

int run_equidist(const Options& o) {
    const QSeries f = normalized_series(select_eigenform(o));
    const auto rows = equidistribution_scan(f, fundamental_discriminants(std::min(o.disc, o.to), std::max(o.disc, o.to)));
    std::vector<BlockSummary> blocks;
    for (double lo = 8; lo < 1e7; lo *= 2) {
        BlockSummary b = summarize_block(rows, lo, 2 * lo);
        if (b.count) blocks.push_back(b);
    }
    if (csv(o, "csv")) {
        write_csv(std::cout, rows);
        for (const auto& b : blocks)
            std::cerr << "block [" << b.lo << ',' << b.hi << "] count " << b.count << " median_deviation "
                      << format_double(b.median_deviation) << " median_weyl " << format_double(b.median_weyl) << '\n';
        return 0;
    }
    json j{{"rows", json::array()}, {"blocks", json::array()}};
    for (const auto& r : rows)
        j["rows"].push_back({{"D", r.D}, {"h", r.h}, {"mean_sq", num(r.mean_sq)}, {"deviation", num(r.deviation)},
                             {"weyl", num(r.weyl)}});
    for (const auto& b : blocks)
        j["blocks"].push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count},
                               {"median_deviation", num(b.median_deviation)}, {"median_weyl", num(b.median_weyl)}});
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heegner periods, Rankin-Selberg L-values and wide moments"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--disc", o.disc, "fundamental discriminant D < 0");
        sub->add_option("--level", o.level, "level N");
        sub->add_option("--weight", o.weight, "weight of the eigenform");
        sub->add_option("--infty-type", o.infty_type, "infinity type k of the Hecke character");
        sub->add_option("--n", o.n, "number of factors");
        sub->add_option("--terms", o.terms, "number of coefficients");
        sub->add_option("--out", o.out, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tol", o.tol, "relative tolerance");
        return sub;
    };
    common(app.add_subcommand("classgroup", "reduced forms and group structure"));
    common(app.add_subcommand("heegner", "Heegner forms, explicit representatives, CM points"));
    common(app.add_subcommand("theta", "theta series coefficients of a Hecke character"))
        ->add_option("--chi", o.chi, "class group character index");
    auto* lv = common(app.add_subcommand("lvalue", "Rankin-Selberg L-value"));
    lv->add_option("--chi", o.chi, "class group character index");
    lv->add_option("--s", o.s, "real point s");
    lv->add_option("--coeffs", o.coeffs, "file of 'n a(n)' lines");
    common(app.add_subcommand("waldspurger", "period / L-value ratio table"))
        ->add_option("--coeffs", o.coeffs, "file of 'n a(n)' lines");
    common(app.add_subcommand("widemoment", "Fourier assembly identity"));
    common(app.add_subcommand("diagmoment", "diagonal moment identity"));
    common(app.add_subcommand("equidist", "CM point scan from --disc to --to"))
        ->add_option("--to", o.to, "other end of the discriminant range");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 64;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "classgroup") return run_classgroup(o);
        if (cmd == "heegner") return run_heegner(o);
        if (cmd == "theta") return run_theta(o);
        if (cmd == "lvalue") return run_lvalue(o);
        if (cmd == "waldspurger") return run_waldspurger(o);
        if (cmd == "widemoment") return run_moment(o, false);
        if (cmd == "diagmoment") return run_moment(o, true);
        if (cmd == "equidist") return run_equidist(o);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return 1;
    } catch (const AccuracyError& e) {
        std::cerr << "accuracy: " << e.what() << '\n';
        return 2;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity: " << e.what() << '\n';
        return 2;
    }
    return 64;
}
