#include "artifact/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "artifact/errors.hpp"

namespace artifact {

FinAbGroup::FinAbGroup(std::vector<int> divisors) : divisors_(std::move(divisors)) {
    order_ = 1;
    for (size_t j = 0; j < divisors_.size(); ++j) {
        if (divisors_[j] < 2) throw DomainError("FinAbGroup: elementary divisors must be >= 2");
        if (j > 0 && divisors_[j] % divisors_[j - 1] != 0) throw DomainError("FinAbGroup: divisors must form a chain");
        order_ *= divisors_[j];
    }
}

int FinAbGroup::index(const std::vector<int>& c) const {
    int idx = 0;
    for (int j = rank() - 1; j >= 0; --j) idx = idx * divisors_[j] + static_cast<int>(mod_floor(int64_t(c[j]), int64_t(divisors_[j])));
    return idx;
}

std::vector<int> FinAbGroup::coords(int idx) const {
    std::vector<int> c(rank());
    for (int j = 0; j < rank(); ++j) {
        c[j] = idx % divisors_[j];
        idx /= divisors_[j];
    }
    return c;
}

int FinAbGroup::add(int x, int y) const {
    int idx = 0, mult = 1;
    for (int j = 0; j < rank(); ++j) {
        const int d = divisors_[j];
        idx += ((x % d + y % d) % d) * mult;
        x /= d;
        y /= d;
        mult *= d;
    }
    return idx;
}

int FinAbGroup::neg(int x) const {
    int idx = 0, mult = 1;
    for (int j = 0; j < rank(); ++j) {
        const int d = divisors_[j];
        idx += ((d - x % d) % d) * mult;
        x /= d;
        mult *= d;
    }
    return idx;
}

std::string FinAbGroup::str() const {
    if (divisors_.empty()) return "1";
    std::string s;
    for (size_t j = 0; j < divisors_.size(); ++j) s += (j ? " x Z/" : "Z/") + std::to_string(divisors_[j]);
    return s;
}

cplx character_value(const FinAbGroup& G, int chi, int g) {
    const int L = G.exponent();
    long long num = 0;
    for (int j = 0; j < G.rank(); ++j) {
        const int d = G.divisors()[j];
        num += static_cast<long long>(chi % d) * (g % d) * (L / d);
        chi /= d;
        g /= d;
    }
    num %= L;
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(num) / L);
}

cplx character_value(const FinAbGroup& G, const Character& chi, int g) {
    return character_value(G, G.index(chi.exponents), g);
}

std::vector<Character> characters(const FinAbGroup& G) {
    std::vector<Character> out;
    for (int i = 0; i < G.order(); ++i) out.push_back({G.coords(i)});
    return out;
}

std::vector<std::vector<cplx>> character_table(const FinAbGroup& G) {
    std::vector<std::vector<cplx>> t(G.order(), std::vector<cplx>(G.order()));
    for (int c = 0; c < G.order(); ++c)
        for (int g = 0; g < G.order(); ++g) t[c][g] = character_value(G, c, g);
    return t;
}

Decomposition decompose(const ClassGroup& cg) {
    const int h = cg.h();
    const int e = cg.principal_index;
    auto mul = [&](int x, int y) { return cg.mul(x, y); };
    auto order_of = [&](int x) {
        int k = 1;
        for (int y = x; y != e; y = mul(y, x)) ++k;
        return k;
    };

    std::vector<int> gens, ords;
    std::vector<char> inH(h, 0);
    std::vector<int> H{e};
    inH[e] = 1;
    while (static_cast<int>(H.size()) < h) {
        int best = -1, best_e = 0;
        for (int x = 0; x < h; ++x) {
            if (inH[x]) continue;
            int k = 1;
            for (int y = x; !inH[y]; y = mul(y, x)) ++k;
            if (k > best_e) {
                best_e = k;
                best = x;
            }
        }
        // a lift of the same order exists because earlier generators have maximal order
        int lift = -1;
        for (int hh : H) {
            const int y = mul(best, hh);
            if (order_of(y) == best_e) {
                lift = y;
                break;
            }
        }
        if (lift < 0) throw IntegrityError("decompose: no lift of maximal order");
        gens.push_back(lift);
        ords.push_back(best_e);
        std::vector<int> nextH;
        for (int hh : H) {
            int y = hh;
            for (int j = 0; j < best_e; ++j) {
                nextH.push_back(y);
                y = mul(y, lift);
            }
        }
        for (int y : nextH) inH[y] = 1;
        H = std::move(nextH);
    }
    std::reverse(gens.begin(), gens.end());
    std::reverse(ords.begin(), ords.end());

    Decomposition dec;
    dec.group = FinAbGroup(ords);
    dec.generators = gens;
    dec.to_class.assign(h, -1);
    dec.to_group.assign(h, -1);
    for (int idx = 0; idx < h; ++idx) {
        const std::vector<int> c = dec.group.coords(idx);
        int cls = e;
        for (size_t j = 0; j < gens.size(); ++j)
            for (int k = 0; k < c[j]; ++k) cls = mul(cls, gens[j]);
        if (dec.to_group[cls] >= 0) throw IntegrityError("decompose: map is not injective");
        dec.to_class[idx] = cls;
        dec.to_group[cls] = idx;
    }
    auto check = [&](int x, int y) {
        if (dec.to_class[dec.group.add(x, y)] != mul(dec.to_class[x], dec.to_class[y]))
            throw IntegrityError("decompose: map is not a homomorphism");
    };
    if (h <= 200) {
        for (int x = 0; x < h; ++x)
            for (int y = 0; y < h; ++y) check(x, y);
    } else {
        std::mt19937_64 rng(h);
        std::uniform_int_distribution<int> pick(0, h - 1);
        for (int i = 0; i < 1000; ++i) check(pick(rng), pick(rng));
    }
    return dec;
}

std::vector<FinAbGroup> all_abelian_groups(int max_order) {
    std::vector<FinAbGroup> out{FinAbGroup{}};
    std::function<void(std::vector<int>&, int)> extend = [&](std::vector<int>& chain, int prod) {
        // next divisor must be a multiple of the last one
        const int step = chain.empty() ? 1 : chain.back();
        for (int d = std::max(2, step); prod * d <= max_order; d += step) {
            if (d % step != 0) continue;
            chain.push_back(d);
            out.emplace_back(chain);
            extend(chain, prod * d);
            chain.pop_back();
        }
    };
    std::vector<int> chain;
    extend(chain, 1);
    return out;
}

WideTuples::WideTuples(int n, const FinAbGroup& G) : n_(n), G_(G), free_(n > 0 ? n - 1 : 0, 0) {
    if (n < 1) throw DomainError("wide_tuples: n must be >= 1");
}

long long WideTuples::count() const {
    long long c = 1;
    for (int i = 0; i + 1 < n_; ++i) c *= G_.order();
    return c;
}

bool WideTuples::next(std::vector<int>& out) {
    if (done_) return false;
    out.assign(n_, 0);
    int acc = 0;
    for (int i = 0; i + 1 < n_; ++i) {
        out[i] = free_[i];
        acc = G_.add(acc, free_[i]);
    }
    out[n_ - 1] = G_.neg(acc);
    // lexicographic increment, last free coordinate fastest
    int i = n_ - 2;
    while (i >= 0) {
        if (++free_[i] < G_.order()) break;
        free_[i] = 0;
        --i;
    }
    if (i < 0) done_ = true;
    return true;
}

DiagonalWideTuples::DiagonalWideTuples(int n, const FinAbGroup& G) : n_(n), G_(G), free_(2 * n - 1, 0) {
    if (n < 1) throw DomainError("diagonal_wide_tuples: n must be >= 1");
}

bool DiagonalWideTuples::next(std::vector<int>& out) {
    const int m = 2 * n_ - 1;
    while (!done_) {
        // free_ = (g_1, h_1, ..., g_{n-1}, h_{n-1}, g_n); h_n is solved
        out.assign(2 * n_, 0);
        int sg = 0, sh = 0;
        for (int i = 0; i < m; ++i) {
            out[i] = free_[i];
            if (i % 2 == 0)
                sg = G_.add(sg, free_[i]);
            else
                sh = G_.add(sh, free_[i]);
        }
        out[m] = G_.sub(sg, sh);
        int i = m - 1;
        while (i >= 0) {
            if (++free_[i] < G_.order()) break;
            free_[i] = 0;
            --i;
        }
        if (i < 0) done_ = true;
        bool ok = true;
        for (int k = 0; k < n_ && ok; ++k) ok = out[2 * k] != out[2 * k + 1];
        if (ok) return true;
    }
    return false;
}

GroupMap fourier_transform(const FinAbGroup& G, const GroupMap& L) {
    GroupMap out(G.order());
    for (int c = 0; c < G.order(); ++c) {
        CompensatedSum<cplx> s;
        for (int g = 0; g < G.order(); ++g) s.add(L[g] * std::conj(character_value(G, c, g)));
        out[c] = s.value();
    }
    return out;
}

cplx wide_moment_direct(const FinAbGroup& G, const std::vector<GroupMap>& maps) {
    WideTuples it(static_cast<int>(maps.size()), G);
    std::vector<int> t;
    CompensatedSum<cplx> s;
    while (it.next(t)) {
        cplx p = 1.0;
        for (size_t i = 0; i < maps.size(); ++i) p *= maps[i][t[i]];
        s.add(p);
    }
    return s.value();
}

cplx wide_moment_dual(const FinAbGroup& G, const std::vector<GroupMap>& maps) {
    if (maps.empty()) throw DomainError("wide_moment_dual: n must be >= 1");
    std::vector<GroupMap> hats;
    for (const auto& L : maps) hats.push_back(fourier_transform(G, L));
    CompensatedSum<cplx> s;
    for (int c = 0; c < G.order(); ++c) {
        cplx p = 1.0;
        for (const auto& H : hats) p *= H[c];
        s.add(p);
    }
    return s.value() / static_cast<double>(G.order());
}

IdentityCheck compare(cplx lhs, cplx rhs, double tol, double scale) {
    IdentityCheck r;
    r.lhs = lhs;
    r.rhs = rhs;
    const double denom = std::max({std::abs(lhs), std::abs(rhs), scale});
    r.rel_error = denom > 0 ? std::abs(lhs - rhs) / denom : 0.0;
    r.agree = r.rel_error < tol;
    return r;
}

IdentityCheck lemma61_check(const FinAbGroup& G, const std::vector<GroupMap>& maps, double tol) {
    const int n = static_cast<int>(maps.size());
    if (n < 1) throw DomainError("lemma61_check: n must be >= 1");
    const double order = G.order();
    std::vector<double> norm2(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (cplx v : maps[i]) norm2[i] += std::norm(v);

    CompensatedSum<double> lhs;
    double scale = 0.0;
    for (int M = 0; M < (1 << n); ++M) {
        const int msize = __builtin_popcount(M);
        double inner = 0.0;
        for (int g = 0; g < G.order(); ++g) {
            double p = 1.0;
            for (int i = 0; i < n; ++i)
                if (!(M >> i & 1)) p *= std::norm(maps[i][g]);
            inner += p;
        }
        double term = std::pow(order, 2 * n - 1 - msize) * inner;
        for (int i = 0; i < n; ++i)
            if (M >> i & 1) term *= norm2[i];
        if (msize % 2) term = -term;
        scale = std::max(scale, std::abs(term));
        lhs.add(term);
    }

    std::vector<GroupMap> hats;
    for (const auto& L : maps) hats.push_back(fourier_transform(G, L));
    DiagonalWideTuples it(n, G);
    std::vector<int> t;
    CompensatedSum<cplx> rhs;
    while (it.next(t)) {
        cplx p = 1.0;
        for (int i = 0; i < n; ++i) p *= hats[i][t[2 * i]] * std::conj(hats[i][t[2 * i + 1]]);
        rhs.add(p);
    }
    return compare(lhs.value(), rhs.value(), tol, scale);
}

std::optional<std::vector<int>> weak_nonvanishing_search(const FinAbGroup& G, const std::vector<GroupMap>& maps,
                                                         double threshold) {
    const int n = static_cast<int>(maps.size());
    if (n < 1) throw DomainError("weak_nonvanishing_search: n must be >= 1");
    std::vector<int> cur(n, 0);
    std::function<bool(int, int)> dfs = [&](int i, int acc) {
        if (i == n - 1) {
            const int last = G.neg(acc);
            if (std::abs(maps[i][last]) <= threshold) return false;
            cur[i] = last;
            return true;
        }
        for (int g = 0; g < G.order(); ++g) {
            if (std::abs(maps[i][g]) <= threshold) continue;
            cur[i] = g;
            if (dfs(i + 1, G.add(acc, g))) return true;
        }
        return false;
    };
    if (dfs(0, 0)) return cur;
    return std::nullopt;
}

std::vector<bool> index2_subgroup(const FinAbGroup& G) {
    if (G.order() % 2 != 0) throw DomainError("group of odd order has no index-2 subgroup");
    std::vector<bool> H(G.order());
    const int m = G.rank() - 1;
    for (int g = 0; g < G.order(); ++g) H[g] = G.coords(g)[m] % 2 == 0;
    return H;
}

std::vector<GroupMap> proposition2_counterexample(const FinAbGroup& G, int n) {
    if (n < 2) throw DomainError("proposition2_counterexample: n must be >= 2");
    const std::vector<bool> H = index2_subgroup(G);
    std::vector<GroupMap> maps(n, GroupMap(G.order(), 0.0));
    for (int g = 0; g < G.order(); ++g) {
        for (int i = 0; i + 1 < n; ++i) maps[i][g] = H[g] ? 1.0 : 0.0;
        maps[n - 1][g] = H[g] ? 0.0 : 1.0;
    }
    return maps;
}

}  // namespace artifact
