#include "artifact/hecke.hpp"

#include <cmath>

#include "artifact/errors.hpp"

namespace artifact {

namespace {

// Lattice spanned by integer vectors (x, y) in the basis (1, w), in normal form.
IdealHNF hnf(int64_t D, const std::vector<std::pair<i128, i128>>& vecs) {
    i128 n = 0, t = 0, u = 0;
    for (auto [x, y] : vecs) {
        i128 p, q;
        const i128 g = ext_gcd(u, y, p, q);
        if (g != 0) {
            const i128 nt = p * t + q * x;
            const i128 r = (y / g) * t - (u / g) * x;  // y-component cancels
            t = nt;
            u = g;
            i128 a, b;
            n = ext_gcd(n, r, a, b);
        } else {
            i128 a, b;
            n = ext_gcd(n, x, a, b);
        }
        if (n != 0) t = mod_floor(t, n);
    }
    if (n == 0 || u == 0) throw DomainError("hnf: lattice is not of full rank");
    auto fit = [](i128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw DomainError("ideal arithmetic exceeds 64-bit range");
        return static_cast<int64_t>(v);
    };
    return {D, fit(n), fit(mod_floor(t, n)), fit(u)};
}

std::pair<i128, i128> kmul(int64_t D, i128 x1, i128 y1, i128 x2, i128 y2) {
    // w^2 = D w - (D^2 - D)/4
    const i128 d = D;
    const i128 yy = y1 * y2;
    return {x1 * x2 - yy * ((d * d - d) / 4), x1 * y2 + x2 * y1 + yy * d};
}

}  // namespace

std::shared_ptr<const Field> make_field(int64_t D) {
    auto F = std::make_shared<Field>();
    F->D = D;
    F->cg = class_group(D);
    F->dec = decompose(F->cg);
    for (const QuadForm& q : F->cg.reduced_forms) F->reduced_ideals.push_back(form_to_ideal(q));
    return F;
}

int kronecker_chi_K(int64_t D, int64_t n) { return kronecker(D, n); }

IdealHNF unit_ideal(int64_t D) { return {D, 1, 0, 1}; }

IdealHNF principal_ideal(int64_t D, const KElt& alpha) {
    auto aw = kmul(D, alpha.x, alpha.y, 0, 1);
    return hnf(D, {{alpha.x, alpha.y}, aw});
}

IdealHNF ideal_mul(const IdealHNF& I, const IdealHNF& J) {
    if (I.D != J.D) throw DomainError("ideal_mul: ideals of different fields");
    const int64_t D = I.D;
    std::vector<std::pair<i128, i128>> v;
    v.push_back({static_cast<i128>(I.n) * J.n, 0});
    v.push_back({static_cast<i128>(I.n) * J.t, static_cast<i128>(I.n) * J.u});
    v.push_back({static_cast<i128>(J.n) * I.t, static_cast<i128>(J.n) * I.u});
    v.push_back(kmul(D, I.t, I.u, J.t, J.u));
    return hnf(D, v);
}

IdealHNF ideal_conj(const IdealHNF& I) {
    // conj(w) = D - w
    return hnf(I.D, {{I.n, 0}, {static_cast<i128>(I.t) + static_cast<i128>(I.u) * I.D, -static_cast<i128>(I.u)}});
}

int64_t ideal_norm(const IdealHNF& I) { return I.norm(); }

bool ideal_contains(const IdealHNF& I, const KElt& alpha) {
    if (alpha.y % I.u != 0) return false;
    const i128 rest = static_cast<i128>(alpha.x) - static_cast<i128>(alpha.y / I.u) * I.t;
    return rest % I.n == 0;
}

IdealHNF prime_ideal_above(int64_t D, int64_t p) {
    const int chi = kronecker(D, p);
    if (chi == -1) throw DomainError("prime_ideal_above: " + std::to_string(p) + " is inert");
    int64_t b = -1;
    if (p == 2 || chi == 0) {
        for (int64_t cand = 0; cand < 2 * p; ++cand)
            if ((static_cast<i128>(cand) * cand - D) % (4 * p) == 0) {
                b = cand;
                break;
            }
    } else {
        int64_t r = sqrt_mod_prime(D, p);
        if (mod_floor(r - D, 2) != 0) r = p - r;
        b = r;
    }
    if (b < 0) throw IntegrityError("prime_ideal_above: no square root of D");
    const i128 c = (static_cast<i128>(b) * b - D) / (4 * p);
    return form_to_ideal({p, b, static_cast<int64_t>(c)});
}

IdealReduction reduce_ideal(const Field& F, const IdealHNF& I) {
    if (I.D != F.D) throw DomainError("reduce_ideal: ideal of a different field");
    const QuadForm q = ideal_to_form(I);
    const Reduction r = reduce(q);
    const cplx w2 = cplx(-0.5 * static_cast<double>(q.b), 0.5 * std::sqrt(static_cast<double>(-F.D)));
    const cplx w1p = static_cast<double>(r.transform.m11) * static_cast<double>(q.a) -
                     static_cast<double>(r.transform.m21) * w2;
    IdealReduction out;
    out.cls = F.cg.index_of_reduced(r.form);
    out.lambda = static_cast<double>(I.u) * w1p / static_cast<double>(r.form.a);
    return out;
}

std::optional<KElt> is_principal_with_generator(const IdealHNF& I) {
    const QuadForm q = ideal_to_form(I);
    const Reduction r = reduce(q);
    if (!(r.form == principal_form(I.D))) return std::nullopt;
    // w1' = m11 a - m21 (w - (b + D)/2)
    const i128 m11 = r.transform.m11, m21 = r.transform.m21;
    const i128 x = I.u * (m11 * q.a + m21 * ((static_cast<i128>(q.b) + I.D) / 2));
    const i128 y = -static_cast<i128>(I.u) * m21;
    KElt alpha{static_cast<int64_t>(x), static_cast<int64_t>(y)};
    if (kelt_norm(I.D, alpha) != static_cast<i128>(I.norm()))
        throw IntegrityError("is_principal_with_generator: generator norm mismatch for " + I.str());
    if (!(principal_ideal(I.D, alpha) == I))
        throw IntegrityError("is_principal_with_generator: generator does not generate " + I.str());
    return alpha;
}

cplx infinity_type_value(cplx alpha, int k) { return std::polar(1.0, -static_cast<double>(k) * std::arg(alpha)); }

cplx HeckeCharacter::operator()(const IdealHNF& I) const {
    const IdealReduction r = reduce_ideal(*field, I);
    return infinity_type_value(r.lambda, k) * class_values[r.cls];
}

cplx HeckeCharacter::on_principal(const KElt& alpha) const { return infinity_type_value(embed(field->D, alpha), k); }

HeckeCharacter base_hecke_character(std::shared_ptr<const Field> F, int k) {
    if (k % 2 != 0) throw DomainError("base_hecke_character: infinity type must be even");
    if (F->D >= -6) throw DomainError("base_hecke_character: D must be < -6");
    const Field& f = *F;
    HeckeCharacter omega;
    omega.field = F;
    omega.k = k;
    omega.class_character_twist.exponents.assign(f.dec.group.rank(), 0);
    const int e = f.cg.principal_index;

    // multiply R_cur by R_g and renormalise; returns the new class and the scalar lambda
    auto step = [&](int cur, int g) {
        const IdealReduction r = reduce_ideal(f, ideal_mul(f.reduced_ideals[cur], f.reduced_ideals[g]));
        return r;
    };

    for (size_t j = 0; j < f.dec.generators.size(); ++j) {
        const int g = f.dec.generators[j];
        const int d = f.dec.group.divisors()[j];
        cplx acc = 1.0;
        int cur = e;
        for (int i = 0; i < d; ++i) {
            const IdealReduction r = step(cur, g);
            acc *= r.lambda / std::abs(r.lambda);
            cur = r.cls;
        }
        if (cur != e) throw IntegrityError("base_hecke_character: generator order mismatch");
        // principal d-th root of (rho/|rho|)^{-k}
        double theta = std::fmod(-static_cast<double>(k) * std::arg(acc), 2.0 * kPi);
        if (theta < 0) theta += 2.0 * kPi;
        omega.generator_ideals.push_back(f.reduced_ideals[g]);
        omega.generator_values.push_back(std::polar(1.0, theta / d));
    }

    omega.class_values.assign(f.h(), 0.0);
    omega.class_values[e] = 1.0;
    for (int idx = 1; idx < f.dec.group.order(); ++idx) {
        const std::vector<int> c = f.dec.group.coords(idx);
        int cur = e;
        cplx val = 1.0;
        for (size_t j = 0; j < c.size(); ++j) {
            for (int s = 0; s < c[j]; ++s) {
                const IdealReduction r = step(cur, f.dec.generators[j]);
                val *= omega.generator_values[j] * std::conj(infinity_type_value(r.lambda, k));
                cur = r.cls;
            }
        }
        omega.class_values[cur] = val;
    }
    return omega;
}

HeckeCharacter twist(const HeckeCharacter& base, int chi) {
    const Field& f = *base.field;
    HeckeCharacter out = base;
    const FinAbGroup& G = f.dec.group;
    const std::vector<int> ex = G.coords(chi);
    for (int j = 0; j < G.rank(); ++j) {
        out.class_character_twist.exponents[j] = static_cast<int>(mod_floor(int64_t(base.class_character_twist.exponents[j] + ex[j]), int64_t(G.divisors()[j])));
        out.generator_values[j] *= character_value(G, chi, f.dec.to_group[f.dec.generators[j]]);
    }
    for (int c = 0; c < f.h(); ++c) out.class_values[c] *= character_value(G, chi, f.dec.to_group[c]);
    return out;
}

HeckeCharacter twist(const HeckeCharacter& base, const Character& chi) {
    if (static_cast<int>(chi.exponents.size()) != base.field->dec.group.rank())
        throw DomainError("twist: character of a different group");
    return twist(base, base.field->dec.group.index(chi.exponents));
}

HeckeCharacter conjugate(const HeckeCharacter& omega) {
    HeckeCharacter out = omega;
    out.k = -omega.k;
    const FinAbGroup& G = omega.field->dec.group;
    for (int j = 0; j < G.rank(); ++j) {
        out.class_character_twist.exponents[j] = static_cast<int>(mod_floor(int64_t(-omega.class_character_twist.exponents[j]), int64_t(G.divisors()[j])));
        out.generator_values[j] = std::conj(omega.generator_values[j]);
    }
    for (auto& v : out.class_values) v = std::conj(v);
    return out;
}

HeckeCharacter product(const HeckeCharacter& a, const HeckeCharacter& b) {
    if (a.field->D != b.field->D) throw DomainError("product: characters of different fields");
    HeckeCharacter out = a;
    out.k = a.k + b.k;
    const FinAbGroup& G = a.field->dec.group;
    for (int j = 0; j < G.rank(); ++j) {
        out.class_character_twist.exponents[j] = static_cast<int>(mod_floor(int64_t(a.class_character_twist.exponents[j] + b.class_character_twist.exponents[j]), int64_t(G.divisors()[j])));
        out.generator_values[j] = a.generator_values[j] * b.generator_values[j];
    }
    for (size_t c = 0; c < out.class_values.size(); ++c) out.class_values[c] = a.class_values[c] * b.class_values[c];
    return out;
}

bool is_trivial(const HeckeCharacter& omega, double tol) {
    if (omega.k != 0) return false;
    for (cplx v : omega.class_values)
        if (std::abs(v - 1.0) > tol) return false;
    return true;
}

int64_t representation_count(const QuadForm& q, int64_t n) {
    // 4 a n = (2 a x + b y)^2 + |D| y^2
    const i128 D = q.disc();
    const i128 four_an = static_cast<i128>(4) * q.a * n;
    int64_t count = 0;
    const int64_t ymax = static_cast<int64_t>(std::sqrt(static_cast<double>(four_an) / static_cast<double>(-D))) + 1;
    for (int64_t y = -ymax; y <= ymax; ++y) {
        const i128 rest = four_an + D * y * y;
        if (rest < 0) continue;
        i128 s = static_cast<i128>(std::llround(std::sqrt(static_cast<double>(rest))));
        while (s * s > rest) --s;
        while ((s + 1) * (s + 1) <= rest) ++s;
        if (s * s != rest) continue;
        for (int sign : {1, -1}) {
            if (sign == -1 && s == 0) continue;
            const i128 num = sign * s - static_cast<i128>(q.b) * y;
            if (num % (2 * q.a) == 0) ++count;
        }
    }
    return count;
}

std::vector<int64_t> ideal_counts_by_class(const Field& F, int64_t n) {
    if (n < 1) throw DomainError("ideal_counts_by_class: n must be >= 1");
    std::vector<int64_t> out(F.h(), 0);
    for (int c = 0; c < F.h(); ++c) {
        const int64_t r = representation_count(F.cg.reduced_forms[c], n);
        if (r % 2 != 0) throw IntegrityError("ideal_counts_by_class: odd representation count");
        // alpha in R_c with N(alpha) = n N(R_c) gives the ideal (alpha) R_c^{-1}
        out[F.cg.inverse_index(c)] += r / 2;
    }
    return out;
}

LocalRoots theta_local_roots(const HeckeCharacter& omega, int64_t p) {
    const int chi = kronecker(omega.disc(), p);
    if (chi == -1) return {1.0, -1.0};
    const cplx g = omega(prime_ideal_above(omega.disc(), p));
    if (chi == 0) return {g, 0.0};
    return {g, std::conj(g)};
}

cplx ThetaSeries::raw(int64_t n) const {
    return lambda.at(n) * std::pow(static_cast<double>(n), 0.5 * character.k);
}

ThetaSeries theta_coefficients(const HeckeCharacter& omega, int64_t n_max) {
    if (n_max < 1) throw DomainError("theta_coefficients: n_max must be >= 1");
    ThetaSeries th;
    th.character = omega;
    th.weight = omega.k + 1;
    th.level = -omega.disc();
    th.lambda.assign(n_max + 1, 0.0);
    th.lambda[1] = 1.0;
    const std::vector<int32_t> spf = spf_table(n_max);
    std::vector<LocalRoots> roots(n_max + 1);
    for (int64_t p = 2; p <= n_max; ++p)
        if (spf[p] == p) roots[p] = theta_local_roots(omega, p);
    for (int64_t n = 2; n <= n_max; ++n) {
        const int64_t p = spf[n];
        int64_t m = n;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        // complete homogeneous polynomial h_e(g1, g2)
        const cplx g1 = roots[p].g1, g2 = roots[p].g2;
        cplx he = 0.0, p1 = 1.0;
        for (int i = 0; i <= e; ++i) {
            cplx term = p1;
            for (int j = 0; j < e - i; ++j) term *= g2;
            he += term;
            p1 *= g1;
        }
        th.lambda[n] = th.lambda[m] * he;
    }
    bool genus = true;
    for (cplx v : omega.class_values)
        if (std::abs(v * v - 1.0) > 1e-9) genus = false;
    th.cuspidal = !(omega.k == 0 && genus);
    return th;
}

}  // namespace artifact
