#include <doctest.h>

#include <random>

#include "artifact/abelian.hpp"

using namespace artifact;

namespace {

GroupMap random_map(const FinAbGroup& G, std::mt19937_64& rng) {
    std::normal_distribution<double> N01;
    GroupMap L(G.order());
    for (auto& v : L) v = {N01(rng), N01(rng)};
    return L;
}

}  // namespace

TEST_SUITE("abelian") {
    TEST_CASE("abelian groups up to order 16") {
        const auto gs = all_abelian_groups(16);
        CHECK(gs.size() == 25);
        int of16 = 0;
        for (const auto& G : gs) of16 += G.order() == 16;
        CHECK(of16 == 5);
    }

    TEST_CASE("characters are orthogonal") {
        for (const FinAbGroup& G : {FinAbGroup({2, 4}), FinAbGroup({3, 3}), FinAbGroup({12})}) {
            const auto T = character_table(G);
            for (int a = 0; a < G.order(); ++a)
                for (int b = 0; b < G.order(); ++b) {
                    cplx s = 0;
                    for (int g = 0; g < G.order(); ++g) s += T[a][g] * std::conj(T[b][g]);
                    CHECK(std::abs(s - (a == b ? cplx(G.order()) : cplx(0))) < 1e-12);
                }
        }
    }

    TEST_CASE("Fourier inversion") {
        std::mt19937_64 rng(1);
        const FinAbGroup G({2, 6});
        const GroupMap L = random_map(G, rng);
        const GroupMap F = fourier_transform(G, L);
        for (int g = 0; g < G.order(); ++g) {
            cplx s = 0;
            for (int chi = 0; chi < G.order(); ++chi) s += F[chi] * character_value(G, chi, g);
            CHECK(std::abs(s / double(G.order()) - L[g]) < 1e-12);
        }
    }

    TEST_CASE("wide tuples") {
        const FinAbGroup G({2, 4});
        for (int n = 1; n <= 4; ++n) {
            WideTuples it(n, G);
            std::vector<int> t;
            long long c = 0;
            while (it.next(t)) {
                int s = 0;
                for (int g : t) s = G.add(s, g);
                CHECK(s == 0);
                ++c;
            }
            CHECK(c == it.count());
            CHECK(c == static_cast<long long>(std::pow(G.order(), n - 1)));
        }
    }

    TEST_CASE("diagonal wide tuples match brute force") {
        const FinAbGroup G({3});
        for (int n = 1; n <= 3; ++n) {
            long long brute = 0;
            const int m = 2 * n;
            std::vector<int> t(m, 0);
            for (long long code = 0; code < static_cast<long long>(std::pow(3, m)); ++code) {
                long long c = code;
                for (int i = 0; i < m; ++i) t[i] = c % 3, c /= 3;
                bool ok = true;
                int s = 0;
                for (int i = 0; i < n; ++i) {
                    ok &= t[2 * i] != t[2 * i + 1];
                    s = G.add(s, G.sub(t[2 * i], t[2 * i + 1]));
                }
                brute += ok && s == 0;
            }
            DiagonalWideTuples it(n, G);
            std::vector<int> out;
            long long c = 0;
            while (it.next(out)) ++c;
            CHECK(c == brute);
        }
    }

    TEST_CASE("wide moment duality on random maps") {
        std::mt19937_64 rng(3);
        for (const auto& G : all_abelian_groups(24)) {
            for (int n = 1; n <= 3; ++n) {
                std::vector<GroupMap> maps;
                for (int i = 0; i < n; ++i) maps.push_back(random_map(G, rng));
                CHECK(compare(wide_moment_direct(G, maps), wide_moment_dual(G, maps), 1e-10).agree);
                CHECK(lemma61_check(G, maps).agree);
            }
        }
    }

    TEST_CASE("class group decomposition is an isomorphism") {
        for (int64_t D : {-23, -84, -191, -420, -5923}) {
            const ClassGroup cg = class_group(D);
            const Decomposition dec = decompose(cg);
            REQUIRE(dec.group.order() == cg.h());
            for (int g = 0; g < cg.h(); ++g) {
                CHECK(dec.to_group[dec.to_class[g]] == g);
                for (int h = 0; h < cg.h(); h += 3)
                    CHECK(dec.to_class[dec.group.add(g, h)] == cg.mul(dec.to_class[g], dec.to_class[h]));
            }
        }
    }

    TEST_CASE("index-two counterexample has no witness") {
        for (const auto& G : all_abelian_groups(16)) {
            if (G.order() % 2) continue;
            for (int n = 2; n <= 4; ++n) CHECK_FALSE(weak_nonvanishing_search(G, proposition2_counterexample(G, n)));
        }
    }

    TEST_CASE("small diagonal cases") {
        std::vector<int> t;
        DiagonalWideTuples one(1, FinAbGroup({5}));
        CHECK_FALSE(one.next(t));
        DiagonalWideTuples two(2, FinAbGroup({2}));
        int c = 0;
        while (two.next(t)) ++c;
        // (0,1,0,1), (0,1,1,0), (1,0,0,1), (1,0,1,0)
        CHECK(c == 4);
        const FinAbGroup G({4});
        const IdentityCheck z = lemma61_check(G, {GroupMap(4, 0.0), GroupMap(4, 0.0)});
        CHECK(z.agree);
        CHECK(z.lhs == cplx(0));
    }
}
