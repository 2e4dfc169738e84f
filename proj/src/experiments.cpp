#include "artifact/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <thread>

#include "artifact/errors.hpp"

namespace artifact {

AutomorphicFunction from_series(const QSeries& f, std::string name) {
    return {f.invariant_weight(), [f](const QuadForm& q) { return evaluate_at_form(f, q); }, std::move(name)};
}

AutomorphicFunction product(const AutomorphicFunction& a, const AutomorphicFunction& b) {
    return {a.weight + b.weight, [a, b](const QuadForm& q) { return a.at_form(q) * b.at_form(q); },
            a.name + "*" + b.name};
}

AutomorphicFunction conj(const AutomorphicFunction& a) {
    return {-a.weight, [a](const QuadForm& q) { return std::conj(a.at_form(q)); }, "conj(" + a.name + ")"};
}

PeriodVector compute_periods(int64_t N, const AutomorphicFunction& f, const HeckeCharacter& omega) {
    const int64_t D = omega.disc();
    check_heegner_hypothesis(D, N);
    if (omega.k != f.weight)
        throw PreconditionError("compute_periods: infinity type " + std::to_string(omega.k) + " does not match weight " +
                                std::to_string(f.weight));
    PeriodVector pv;
    pv.D = D;
    pv.N = N;
    pv.k = f.weight;
    pv.field = omega.field;
    pv.omega = omega;
    const int64_t r = orientations(D, N).front();
    pv.reps = explicit_representatives(D, N, r, base_heegner_form(D, N, r));
    const FinAbGroup& G = pv.field->dec.group;
    pv.sequence.assign(G.order(), 0.0);
    for (size_t i = 0; i < pv.reps.entries.size(); ++i) {
        const RepresentativeEntry& e = pv.reps.entries[i];
        const cplx v = f.at_form(e.Q.form);
        const cplx w = omega(representative_prime(pv.reps, i));
        pv.point_values.push_back(v);
        pv.omega_values.push_back(w);
        pv.sequence[pv.field->dec.to_group[e.cls]] = v * std::conj(w);
    }
    pv.periods = fourier_transform(G, pv.sequence);
    double lhs = 0.0, rhs = 0.0;
    for (cplx p : pv.periods) lhs += std::norm(p);
    for (cplx s : pv.sequence) rhs += std::norm(s);
    rhs *= pv.h();
    pv.plancherel_error = std::abs(lhs - rhs) / std::max(rhs, 1e-300);
    if (rhs > 0 && pv.plancherel_error > 1e-10) throw IntegrityError("compute_periods: Plancherel identity violated");
    return pv;
}

QSeries normalized_series(const Eigenform& f) { return to_qseries(f, 1.0 / std::sqrt(petersson_norm(f))); }

WaldspurgerReport waldspurger_check(int64_t D, const Eigenform& f) {
    WaldspurgerReport rep;
    rep.D = D;
    rep.k = f.weight;
    check_heegner_hypothesis(D, f.level);
    auto F = make_field(D);
    const HeckeCharacter omega = base_hecke_character(F, f.weight);
    rep.petersson = petersson_norm(f);
    const QSeries fs = to_qseries(f, 1.0 / std::sqrt(rep.petersson));
    const PeriodVector pv = compute_periods(f.level, from_series(fs, f.name), omega);
    auto fp = std::make_shared<const Eigenform>(f);
    double pmax = 0.0;
    for (cplx p : pv.periods) pmax = std::max(pmax, std::norm(p));
    for (int chi = 0; chi < pv.h(); ++chi) {
        WaldspurgerRow row;
        row.chi = chi;
        row.period_sq = std::norm(pv.periods[chi]);
        const RSLfunction L = make_rs_lfunction(fp, twist(omega, chi));
        const AfeResult c = afe_eval(L, 0.5);
        row.l_value = c.value.real();
        row.l_error = c.error_estimate + std::abs(c.value.imag());
        row.terms = c.terms_used;
        const bool l_zero = std::abs(row.l_value) <= row.l_error;
        const bool p_zero = row.period_sq <= 1e-12 * std::max(pmax, 1e-300);
        row.inconsistent = l_zero != p_zero || row.l_value < -row.l_error;
        row.ratio = l_zero ? 0.0 : row.period_sq / row.l_value;
        rep.rows.push_back(row);
    }
    double lo = INFINITY, hi = 0.0, sum = 0.0;
    int cnt = 0;
    for (const auto& r : rep.rows) {
        if (r.inconsistent || r.ratio <= 0) continue;
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
        sum += r.ratio;
        ++cnt;
    }
    rep.mean_ratio = cnt ? sum / cnt : 0.0;
    rep.dispersion = cnt ? hi / lo - 1.0 : INFINITY;
    rep.sym2 = sym_square_at_1(f).value;
    rep.base_constant = std::sqrt(static_cast<double>(-D)) / (8.0 * static_cast<double>(f.level) * rep.sym2);
    rep.normalized_ratio = rep.mean_ratio / rep.base_constant;
    rep.c_inf = c_infinity(ArchimedeanKind::Discrete, f.weight, f.weight);
    rep.match_A = rep.normalized_ratio / rep.c_inf.variantA;
    rep.match_B = rep.c_inf.variantB > 0 ? rep.normalized_ratio / rep.c_inf.variantB : 0.0;
    return rep;
}

namespace {

void check_compatible(const std::vector<PeriodVector>& pv) {
    for (const auto& p : pv)
        if (p.D != pv.front().D || p.N != pv.front().N) throw PreconditionError("period vectors of different D or N");
}

}  // namespace

MomentCheck wide_moment_assembly(const std::vector<PeriodVector>& pv, double tol) {
    if (pv.empty()) return {0.0, 0.0, true, 0.0};
    check_compatible(pv);
    HeckeCharacter prod = pv.front().omega;
    for (size_t i = 1; i < pv.size(); ++i) prod = product(prod, pv[i].omega);
    const IdealHNF probe = principal_ideal(pv.front().D, KElt{1, 1});
    if (!is_trivial(prod) || std::abs(prod(probe) - 1.0) > 1e-10)
        throw PreconditionError("wide_moment_assembly: product of the Hecke characters is not trivial");
    const FinAbGroup& G = pv.front().field->dec.group;
    const int n = static_cast<int>(pv.size());
    const double h = G.order();

    WideTuples it(n, G);
    std::vector<int> t;
    CompensatedSum<cplx> lhs;
    while (it.next(t)) {
        cplx p = 1.0;
        for (int i = 0; i < n; ++i) p *= pv[i].periods[t[i]];
        lhs.add(p);
    }
    CompensatedSum<cplx> rhs;
    double scale = 0.0;
    for (int g = 0; g < G.order(); ++g) {
        cplx p = 1.0;
        for (int i = 0; i < n; ++i) p *= pv[i].sequence[g];
        rhs.add(p);
        scale += std::abs(p);
    }
    const IdentityCheck c = compare(lhs.value() / std::pow(h, n), rhs.value() / h, tol, scale / h);
    return {c.lhs, c.rhs, c.agree, c.rel_error};
}

MomentCheck diagonal_moment_check(const std::vector<PeriodVector>& pv, double tol) {
    if (pv.empty()) return {0.0, 0.0, true, 0.0};
    check_compatible(pv);
    const FinAbGroup& G = pv.front().field->dec.group;
    const int n = static_cast<int>(pv.size());
    const double h = G.order();
    std::vector<double> norm2(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (cplx v : pv[i].sequence) norm2[i] += std::norm(v);

    CompensatedSum<double> lhs;
    double scale = 0.0;
    for (int M = 0; M < (1 << n); ++M) {
        const int msize = __builtin_popcount(M);
        double inner = 0.0;
        for (int g = 0; g < G.order(); ++g) {
            double p = 1.0;
            for (int i = 0; i < n; ++i)
                if (!(M >> i & 1)) p *= std::norm(pv[i].sequence[g]);
            inner += p;
        }
        double term = std::pow(h, 2 * n - 1 - msize) * inner;
        for (int i = 0; i < n; ++i)
            if (M >> i & 1) term *= norm2[i];
        scale = std::max(scale, std::abs(term));
        lhs.add(msize % 2 ? -term : term);
    }
    DiagonalWideTuples it(n, G);
    std::vector<int> t;
    CompensatedSum<cplx> rhs;
    while (it.next(t)) {
        cplx p = 1.0;
        for (int i = 0; i < n; ++i) p *= pv[i].periods[t[2 * i]] * std::conj(pv[i].periods[t[2 * i + 1]]);
        rhs.add(p);
    }
    const IdentityCheck c = compare(lhs.value(), rhs.value(), tol, scale);
    return {c.lhs, c.rhs, c.agree, c.rel_error};
}

std::vector<PeriodVector> flagship_periods(int64_t D, int n) {
    auto F = make_field(D);
    static const Eigenform delta = delta_eigenform(2000);
    const QSeries fs = normalized_series(delta);
    const AutomorphicFunction Fk = from_series(fs, "F");
    const HeckeCharacter omega = base_hecke_character(F, 12);
    std::vector<PeriodVector> out;
    switch (n) {
        case 1:
            out.push_back(compute_periods(1, product(Fk, conj(Fk)), base_hecke_character(F, 0)));
            break;
        case 2:
            out.push_back(compute_periods(1, Fk, omega));
            out.push_back(compute_periods(1, conj(Fk), conjugate(omega)));
            break;
        case 3: {
            const AutomorphicFunction d2 = from_series(multiply(to_qseries(delta), to_qseries(delta)), "Delta^2");
            out.push_back(compute_periods(1, Fk, omega));
            out.push_back(compute_periods(1, Fk, omega));
            out.push_back(compute_periods(1, conj(d2), conjugate(product(omega, omega))));
            break;
        }
        default:
            throw DomainError("flagship_periods: n must be 1, 2 or 3");
    }
    return out;
}

std::vector<int64_t> fundamental_discriminants(int64_t lo, int64_t hi) {
    std::vector<int64_t> out;
    for (int64_t D = hi; D >= lo; --D)
        if (D < 0 && is_fundamental(D)) out.push_back(D);
    return out;
}

namespace {

EquidistRow equidist_row(const QSeries& f, int64_t D) {
    if (D >= -6 || !is_fundamental(D)) throw DomainError("equidistribution_scan: D must be fundamental and < -6");
    const std::vector<QuadForm> forms = enumerate_reduced(D);
    const double sd = std::sqrt(static_cast<double>(-D));
    CompensatedSum<double> sq;
    CompensatedSum<cplx> sum;
    for (const QuadForm& q : forms) {
        // reduced forms already give points in the fundamental domain
        const cplx z(-0.5 * q.b / static_cast<double>(q.a), 0.5 * sd / static_cast<double>(q.a));
        const cplx v = evaluate_series(f, z).value;
        sq.add(std::norm(v));
        sum.add(v);
    }
    EquidistRow r;
    r.D = D;
    r.h = static_cast<int>(forms.size());
    r.mean_sq = sq.value() / r.h;
    r.deviation = std::abs(r.mean_sq - 3.0 / kPi);
    r.weyl = std::abs(sum.value()) / r.h;
    return r;
}

}  // namespace

std::vector<EquidistRow> equidistribution_scan(const QSeries& f, const std::vector<int64_t>& discs) {
    std::vector<EquidistRow> rows(discs.size());
    const size_t workers = std::max(1u, std::thread::hardware_concurrency());
    const size_t chunk = (discs.size() + workers - 1) / workers;
    std::vector<std::future<void>> tasks;
    for (size_t lo = 0; lo < discs.size(); lo += chunk)
        tasks.push_back(std::async(std::launch::async, [&, lo] {
            for (size_t i = lo; i < std::min(discs.size(), lo + chunk); ++i) rows[i] = equidist_row(f, discs[i]);
        }));
    for (auto& t : tasks) t.get();
    return rows;
}

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return NAN;
    std::sort(v.begin(), v.end());
    const size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

BlockSummary summarize_block(const std::vector<EquidistRow>& rows, double abs_lo, double abs_hi) {
    BlockSummary b;
    b.lo = abs_lo;
    b.hi = abs_hi;
    std::vector<double> dev, weyl;
    for (const auto& r : rows) {
        const double a = static_cast<double>(-r.D);
        if (a < abs_lo || a > abs_hi) continue;
        dev.push_back(r.deviation);
        weyl.push_back(r.weyl);
    }
    b.count = dev.size();
    b.median_deviation = median(dev);
    b.median_weyl = median(weyl);
    return b;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<EquidistRow>& rows) {
    os << "D,h,mean_sq,deviation,weyl,log_abs_D\n";
    for (const auto& r : rows)
        os << r.D << ',' << r.h << ',' << format_double(r.mean_sq) << ',' << format_double(r.deviation) << ','
           << format_double(r.weyl) << ',' << format_double(std::log(static_cast<double>(-r.D))) << '\n';
}

void write_csv(std::ostream& os, const WaldspurgerReport& rep) {
    os << "D,chi,k,period_sq,value,error,terms_used,ratio,inconsistent\n";
    for (const auto& r : rep.rows)
        os << rep.D << ',' << r.chi << ',' << rep.k << ',' << format_double(r.period_sq) << ',' << format_double(r.l_value)
           << ',' << format_double(r.l_error) << ',' << r.terms << ',' << format_double(r.ratio) << ','
           << (r.inconsistent ? 1 : 0) << '\n';
}

}  // namespace artifact
