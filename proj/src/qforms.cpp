#include "artifact/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "artifact/errors.hpp"
#include "artifact/numeric.hpp"

namespace artifact {

namespace {

i128 floor_div(i128 x, i128 y) {
    i128 q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
}

int64_t narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
        throw DomainError(std::string(what) + ": value exceeds 64-bit range");
    return static_cast<int64_t>(v);
}

Mat2 mat_mul_checked(const Mat2& l, i128 r11, i128 r12, i128 r21, i128 r22) {
    Mat2 m;
    m.m11 = narrow(l.m11 * r11 + l.m12 * r21, "reduce");
    m.m12 = narrow(l.m11 * r12 + l.m12 * r22, "reduce");
    m.m21 = narrow(l.m21 * r11 + l.m22 * r21, "reduce");
    m.m22 = narrow(l.m21 * r12 + l.m22 * r22, "reduce");
    return m;
}

Reduction reduce_wide(i128 a, i128 b, i128 c) {
    const i128 D = b * b - 4 * a * c;
    Mat2 M;
    for (;;) {
        if (b <= -a || b > a) {
            const i128 k = floor_div(a - b, 2 * a);
            b += 2 * a * k;
            c = (b * b - D) / (4 * a);
            M = mat_mul_checked(M, 1, k, 0, 1);
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            M = mat_mul_checked(M, 0, -1, 1, 0);
            continue;
        }
        if (a == c && b < 0) {
            b = -b;
            M = mat_mul_checked(M, 0, -1, 1, 0);
        }
        break;
    }
    return {QuadForm{narrow(a, "reduce"), narrow(b, "reduce"), narrow(c, "reduce")}, M};
}

}  // namespace

int64_t QuadForm::disc() const {
    return narrow(static_cast<i128>(b) * b - static_cast<i128>(4) * a * c, "disc");
}

std::string QuadForm::str() const {
    return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

int64_t Mat2::det() const { return m11 * m22 - m12 * m21; }

Mat2 Mat2::operator*(const Mat2& o) const { return mat_mul_checked(*this, o.m11, o.m12, o.m21, o.m22); }

QuadForm act(const QuadForm& q, const Mat2& m) {
    const i128 a = q.a, b = q.b, c = q.c;
    const i128 p = m.m11, r = m.m12, s = m.m21, t = m.m22;
    const i128 na = a * p * p + b * p * s + c * s * s;
    const i128 nb = 2 * a * p * r + b * (p * t + r * s) + 2 * c * s * t;
    const i128 nc = a * r * r + b * r * t + c * t * t;
    return {narrow(na, "act"), narrow(nb, "act"), narrow(nc, "act")};
}

bool is_fundamental(int64_t D) {
    if (D >= 0) throw DomainError("is_fundamental: D must be negative");
    const int64_t r = mod_floor(D, 4);
    if (r == 1) return is_squarefree(D);
    if (r != 0) return false;
    const int64_t m = D / 4;
    const int64_t rm = mod_floor(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

bool is_reduced(const QuadForm& q) {
    if (!(std::abs(q.b) <= q.a && q.a <= q.c)) return false;
    if ((std::abs(q.b) == q.a || q.a == q.c) && q.b < 0) return false;
    return true;
}

void validate_form(const QuadForm& q) {
    if (q.a <= 0) throw DomainError("form " + q.str() + " is not positive definite");
    if (static_cast<i128>(q.b) * q.b - static_cast<i128>(4) * q.a * q.c >= 0)
        throw DomainError("form " + q.str() + " is not positive definite");
    if (gcd64(gcd64(q.a, q.b), q.c) != 1) throw DomainError("form " + q.str() + " is not primitive");
}

Reduction reduce(const QuadForm& q) {
    validate_form(q);
    return reduce_wide(q.a, q.b, q.c);
}

QuadForm principal_form(int64_t D) {
    const int64_t b = mod_floor(D, 2);
    return {1, b, (b - D) / 4};
}

std::vector<QuadForm> enumerate_reduced(int64_t D) {
    if (D >= 0 || !is_fundamental(D)) throw DomainError("enumerate_reduced: D must be a negative fundamental discriminant");
    std::vector<QuadForm> out;
    const int64_t amax = static_cast<int64_t>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    for (int64_t a = 1; a <= amax; ++a) {
        for (int64_t b = -a + 1; b <= a; ++b) {
            const int64_t num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const int64_t c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (gcd64(gcd64(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

QuadForm inverse(const QuadForm& q) {
    QuadForm r{q.a, -q.b, q.c};
    return reduce(r).form;
}

QuadForm compose(const QuadForm& q1, const QuadForm& q2) {
    validate_form(q1);
    validate_form(q2);
    const i128 D = static_cast<i128>(q1.b) * q1.b - static_cast<i128>(4) * q1.a * q1.c;
    const i128 D2 = static_cast<i128>(q2.b) * q2.b - static_cast<i128>(4) * q2.a * q2.c;
    if (D != D2) throw DomainError("compose: discriminants differ");

    i128 a1 = q1.a, b1 = q1.b, a2 = q2.a, b2 = q2.b, c2 = q2.c;
    if (a1 > a2) {
        std::swap(a1, a2);
        std::swap(b1, b2);
        c2 = q1.c;
    }
    const i128 s = (b1 + b2) / 2;
    const i128 n = b2 - s;
    i128 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        i128 u, v;
        d = ext_gcd(a2, a1, u, v);
        y1 = u;
    }
    i128 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        d1 = ext_gcd(s, d, x2, y2);
        y2 = -y2;
    }
    const i128 v1 = a1 / d1;
    const i128 v2 = a2 / d1;
    const i128 r = mod_floor(y1 * y2 * n - x2 * c2, v1);
    const i128 b3 = b2 + 2 * v2 * r;
    const i128 a3 = v1 * v2;
    const i128 num = b3 * b3 - D;
    if (num % (4 * a3) != 0) throw IntegrityError("compose: non-integral third coefficient");
    return reduce_wide(a3, b3, num / (4 * a3)).form;
}

int ClassGroup::index_of_reduced(const QuadForm& q) const {
    auto key = [](const QuadForm& f) { return std::pair(f.a, f.b); };
    auto it = std::lower_bound(reduced_forms.begin(), reduced_forms.end(), q,
                               [&](const QuadForm& x, const QuadForm& y) { return key(x) < key(y); });
    if (it == reduced_forms.end() || !(*it == q)) throw DomainError("form " + q.str() + " not in class group");
    return static_cast<int>(it - reduced_forms.begin());
}

int ClassGroup::index_of(const QuadForm& q) const {
    if (q.disc() != D) throw DomainError("form " + q.str() + " has the wrong discriminant");
    return index_of_reduced(reduce(q).form);
}

int ClassGroup::inverse_index(int i) const {
    const QuadForm& f = reduced_forms[i];
    return index_of(QuadForm{f.a, -f.b, f.c});
}

ClassGroup class_group_light(int64_t D) {
    ClassGroup g;
    g.D = D;
    g.reduced_forms = enumerate_reduced(D);
    g.principal_index = g.index_of_reduced(principal_form(D));
    return g;
}

ClassGroup class_group(int64_t D) {
    ClassGroup g = class_group_light(D);
    const int h = g.h();
    g.composition_table.assign(h, std::vector<int>(h, 0));
    for (int i = 0; i < h; ++i)
        for (int j = i; j < h; ++j) {
            const int k = g.index_of_reduced(compose(g.reduced_forms[i], g.reduced_forms[j]));
            g.composition_table[i][j] = g.composition_table[j][i] = k;
        }
    for (int i = 0; i < h; ++i) {
        if (g.composition_table[g.principal_index][i] != i)
            throw IntegrityError("class_group: principal form is not the identity");
        if (g.composition_table[i][g.inverse_index(i)] != g.principal_index)
            throw IntegrityError("class_group: [a,-b,c] is not the inverse of " + g.reduced_forms[i].str());
        std::vector<bool> seen(h, false);
        for (int j = 0; j < h; ++j) seen[g.composition_table[i][j]] = true;
        if (std::count(seen.begin(), seen.end(), true) != h)
            throw IntegrityError("class_group: composition table row is not a permutation");
    }
    return g;
}

std::string IdealHNF::str() const {
    return "(" + std::to_string(n) + "," + std::to_string(t) + "," + std::to_string(u) + ")";
}

std::complex<double> omega(int64_t D) {
    return {0.5 * static_cast<double>(D), 0.5 * std::sqrt(static_cast<double>(-D))};
}

std::complex<double> embed(int64_t D, const KElt& e) {
    return static_cast<double>(e.x) + static_cast<double>(e.y) * omega(D);
}

i128 kelt_norm(int64_t D, const KElt& e) {
    const i128 x = e.x, y = e.y, d = D;
    return x * x + d * x * y + y * y * ((d * d - d) / 4);
}

IdealHNF form_to_ideal(const QuadForm& q) {
    validate_form(q);
    const int64_t D = q.disc();
    return {D, q.a, mod_floor((-q.b - D) / 2, q.a), 1};
}

QuadForm ideal_to_form(const IdealHNF& I) {
    if (I.u <= 0 || I.n % I.u != 0 || I.t % I.u != 0) throw DomainError("ideal_to_form: " + I.str() + " is not an ideal");
    const int64_t a = I.n / I.u;
    const int64_t t0 = I.t / I.u;
    int64_t b = mod_floor(-(2 * t0 + I.D), 2 * a);
    if (b > a) b -= 2 * a;
    const i128 num = static_cast<i128>(b) * b - I.D;
    if (num % (4 * a) != 0) throw DomainError("ideal_to_form: " + I.str() + " is not an ideal");
    return {a, b, static_cast<int64_t>(num / (4 * a))};
}

}  // namespace artifact
