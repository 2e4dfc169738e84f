#include "artifact/heegner.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "artifact/errors.hpp"

namespace artifact {

RealMat2 RealMat2::operator*(const RealMat2& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22, m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
}

void check_heegner_hypothesis(int64_t D, int64_t N) {
    if (D >= 0 || !is_fundamental(D)) throw PreconditionError("D = " + std::to_string(D) + " is not a negative fundamental discriminant");
    if (N < 1) throw PreconditionError("level must be positive");
    if (!is_squarefree(N)) throw PreconditionError("level " + std::to_string(N) + " is not square-free");
    if (N > 1 && gcd64(D, 2 * N) != 1) throw PreconditionError("gcd(D, 2N) != 1");
    for (int64_t p : prime_factors(N))
        if (kronecker(D, p) != 1)
            throw PreconditionError("prime " + std::to_string(p) + " dividing the level does not split in K");
}

std::vector<int64_t> orientations(int64_t D, int64_t N) {
    check_heegner_hypothesis(D, N);
    std::vector<int64_t> out;
    for (int64_t r = 0; r < 2 * N; ++r)
        if (mod_floor(r * r - D, 4 * N) == 0) out.push_back(r);
    return out;
}

bool is_heegner_form(const QuadForm& q, const Orientation& o) {
    if (q.a <= 0 || q.a % o.N != 0) return false;
    if (mod_floor(q.b - o.r, 2 * o.N) != 0) return false;
    return gcd64(gcd64(q.a, q.b), q.c) == 1;
}

HeegnerForm base_heegner_form(int64_t D, int64_t N, int64_t r, int64_t max_multiplier) {
    check_heegner_hypothesis(D, N);
    if (mod_floor(r * r - D, 4 * N) != 0) throw PreconditionError("r^2 != D mod 4N");
    const QuadForm principal = principal_form(D);
    for (int64_t m = 1; m <= max_multiplier; ++m) {
        const int64_t a = N * m;
        // b in (-a, a], b = r mod 2N
        int64_t b = -a + 1 + mod_floor(r - (-a + 1), 2 * N);
        for (; b <= a; b += 2 * N) {
            const i128 num = static_cast<i128>(b) * b - D;
            if (num % (4 * a) != 0) continue;
            const QuadForm q{a, b, static_cast<int64_t>(num / (4 * a))};
            if (gcd64(gcd64(q.a, q.b), q.c) != 1) continue;
            if (reduce(q).form == principal) return {q, {N, mod_floor(r, 2 * N)}};
        }
    }
    throw PreconditionError("base_heegner_form: no principal Heegner form with a <= " + std::to_string(N * max_multiplier));
}

HeegnerPoint heegner_point(const HeegnerForm& Q) {
    const double a = static_cast<double>(Q.form.a);
    HeegnerPoint p;
    p.x = -static_cast<double>(Q.form.b) / (2.0 * a);
    p.y = std::sqrt(static_cast<double>(-Q.form.disc())) / (2.0 * a);
    p.source = Q;
    return p;
}

namespace {

// Smaller non-negative solution of x = b mod 2a, x^2 = D mod p.
int64_t lift_b(int64_t D, int64_t b, int64_t a, int64_t p) {
    const int64_t s = sqrt_mod_prime(mod_floor(D, p), p);
    if (s < 0) throw IntegrityError("lift_b: D is not a square mod p");
    const int64_t m = 2 * a;
    const i128 M = static_cast<i128>(m) * p;
    i128 x, y;
    ext_gcd(m, p, x, y);  // m x + p y = 1
    int64_t best = -1;
    for (int64_t root : {s, mod_floor(-s, p)}) {
        // t = b + m k with t = root mod p
        const i128 k = mod_floor(static_cast<i128>(root - b) * x, static_cast<i128>(p));
        const int64_t t = static_cast<int64_t>(mod_floor(static_cast<i128>(b) + m * k, M));
        if (best < 0 || t < best) best = t;
    }
    return best;
}

}  // namespace

ExplicitRepresentatives explicit_representatives(int64_t D, int64_t N, int64_t r, const HeegnerForm& base,
                                                 int64_t prime_bound) {
    check_heegner_hypothesis(D, N);
    if (base.form.disc() != D || !is_heegner_form(base.form, {N, r}))
        throw PreconditionError("explicit_representatives: base is not a Heegner form of this orientation");
    const ClassGroup cg = class_group(D);
    if (cg.index_of(base.form) != cg.principal_index)
        throw PreconditionError("explicit_representatives: base is not in the principal class");
    ExplicitRepresentatives rep;
    rep.D = D;
    rep.base = base;
    rep.entries.push_back({1, base.form.b, base, cg.principal_index});
    std::vector<bool> covered(cg.h(), false);
    covered[cg.principal_index] = true;
    int remaining = cg.h() - 1;
    const int64_t a = base.form.a;
    for (int64_t p = 3; remaining > 0; p += 2) {
        if (p > prime_bound) throw PreconditionError("explicit_representatives: prime search exhausted");
        if (!is_prime(p) || (2 * N * a) % p == 0 || kronecker(D, p) != 1) continue;
        const int64_t bi = lift_b(D, base.form.b, a, p);
        const i128 num = static_cast<i128>(bi) * bi - D;
        const i128 den = static_cast<i128>(4) * a * p;
        if (num % den != 0) throw IntegrityError("explicit_representatives: c_i not integral");
        const QuadForm qi{a * p, bi, static_cast<int64_t>(num / den)};
        const int cls = cg.index_of(qi);
        if (covered[cls]) continue;
        covered[cls] = true;
        --remaining;
        rep.entries.push_back({p, bi, {qi, base.orientation}, cls});
    }
    return rep;
}

IdealHNF representative_prime(const ExplicitRepresentatives& rep, size_t i) {
    const RepresentativeEntry& e = rep.entries.at(i);
    if (e.p == 1) return unit_ideal(rep.D);
    return IdealHNF{rep.D, e.p, mod_floor((-e.b - rep.D) / 2, e.p), 1};
}

Lemma41Report lemma41_report(const ExplicitRepresentatives& rep) {
    Lemma41Report out;
    const int64_t D = rep.D;
    const QuadForm& base = rep.base.form;
    const ClassGroup cg = class_group_light(D);
    const IdealHNF base_ideal = form_to_ideal(base);
    std::set<QuadForm, bool (*)(const QuadForm&, const QuadForm&)> seen(
        [](const QuadForm& x, const QuadForm& y) { return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c); });
    auto fail = [&](size_t i, const std::string& why) {
        out.ok = false;
        out.failing.push_back(i);
        out.diagnostics.push_back("entry " + std::to_string(i) + ": " + why);
    };
    for (size_t i = 0; i < rep.entries.size(); ++i) {
        const RepresentativeEntry& e = rep.entries[i];
        const QuadForm& q = e.Q.form;
        if (q.disc() != D) {
            fail(i, "wrong discriminant");
            continue;
        }
        if (!seen.insert(reduce(q).form).second) fail(i, "class repeated");
        if (e.p == 1) {
            if (!(q == base)) fail(i, "first entry is not the base form");
            continue;
        }
        if (!is_prime(e.p) || kronecker(D, e.p) != 1 || gcd64(2 * rep.base.orientation.N * base.a, e.p) != 1)
            fail(i, "p is not a split prime coprime to 2Na");
        if (mod_floor(e.b - base.b, 2 * base.a) != 0) fail(i, "b_i != b mod 2a");
        if (mod_floor(static_cast<int64_t>(mod_floor(static_cast<i128>(e.b) * e.b - D, static_cast<i128>(e.p))), e.p) != 0)
            fail(i, "b_i^2 != D mod p_i");
        if (q.a != base.a * e.p || q.b != e.b) fail(i, "Q_i is not [a p_i, b_i, c_i]");
        // class equality through the form-ideal bijection
        const IdealHNF P = representative_prime(rep, i);
        const QuadForm rhs = compose(ideal_to_form(P), base);
        if (!(reduce(q).form == rhs)) fail(i, "class of Q_i differs from [p_i][base]");
        const IdealHNF lhs_ideal = form_to_ideal(q);
        const IdealHNF prod = ideal_mul(P, base_ideal);
        if (!(prod == lhs_ideal)) {
            out.exact_ideal_identity = false;
            out.diagnostics.push_back("entry " + std::to_string(i) + ": ideal product " + prod.str() + " vs " + lhs_ideal.str());
        }
    }
    if (static_cast<int>(seen.size()) != cg.h()) {
        out.ok = false;
        out.diagnostics.push_back("classes covered: " + std::to_string(seen.size()) + " of " + std::to_string(cg.h()));
    }
    return out;
}

bool lemma41_check(const ExplicitRepresentatives& rep) { return lemma41_report(rep).ok; }

OptimalEmbedding embedding_matrix(const HeegnerForm& Q) {
    const QuadForm& q = Q.form;
    OptimalEmbedding e{{q.b, 2 * q.c, -2 * q.a, -q.b}, q};
    if (e.matrix.m11 + e.matrix.m22 != 0 || e.matrix.det() != -q.disc())
        throw IntegrityError("embedding_matrix: trace or determinant check failed");
    return e;
}

RealMat2 embed_real(const HeegnerForm& Q, cplx x) {
    const OptimalEmbedding e = embedding_matrix(Q);
    const double v = x.imag() / std::sqrt(static_cast<double>(-Q.form.disc()));
    const double u = x.real();
    return {u + v * e.matrix.m11, v * e.matrix.m12, v * e.matrix.m21, u + v * e.matrix.m22};
}

RealMat2 gamma_infinity(const HeegnerForm& Q) {
    const double sd = std::sqrt(static_cast<double>(-Q.form.disc()));
    return {0.5 * sd, -0.5 * static_cast<double>(Q.form.b), 0.0, static_cast<double>(Q.form.a)};
}

RealMat2 conjugated_embedding(const HeegnerForm& Q, double theta) {
    const RealMat2 g = gamma_infinity(Q);
    const double d = g.det();
    const RealMat2 ginv{g.m22 / d, -g.m12 / d, -g.m21 / d, g.m11 / d};
    return ginv * embed_real(Q, std::polar(1.0, theta)) * g;
}

}  // namespace artifact
