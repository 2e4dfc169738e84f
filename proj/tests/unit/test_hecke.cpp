#include <doctest.h>

#include <numeric>

#include "artifact/hecke.hpp"

using namespace artifact;

TEST_SUITE("hecke") {
    TEST_CASE("trivial theta series counts ideals") {
        for (int64_t D : {-23, -47, -84}) {
            auto F = make_field(D);
            const ThetaSeries th = theta_coefficients(base_hecke_character(F, 0), 300);
            for (int64_t n = 1; n <= 300; ++n) {
                int64_t s = 0;
                for (int64_t d = 1; d <= n; ++d)
                    if (n % d == 0) s += kronecker(D, d);
                CHECK(std::abs(th.lambda[n] - cplx(double(s))) < 1e-12);
            }
        }
    }

    TEST_CASE("ideal counts match representation numbers") {
        auto F = make_field(-71);
        for (int64_t n = 1; n <= 120; ++n) {
            const auto cnt = ideal_counts_by_class(*F, n);
            for (int c = 0; c < F->h(); ++c) CHECK(2 * cnt[c] == representation_count(F->cg.reduced_forms[c], n));
        }
    }

    TEST_CASE("infinity type on principal ideals") {
        auto F = make_field(-23);
        for (int k : {0, 2, 12, -12}) {
            const HeckeCharacter om = twist(base_hecke_character(F, k), 1);
            for (int64_t x = -4; x <= 4; ++x)
                for (int64_t y = -3; y <= 3; ++y) {
                    if (x == 0 && y == 0) continue;
                    const KElt a{x, y};
                    CHECK(std::abs(om(principal_ideal(-23, a)) - infinity_type_value(embed(-23, a), k)) < 1e-10);
                }
        }
    }

    TEST_CASE("characters are multiplicative on ideals") {
        auto F = make_field(-71);
        const HeckeCharacter om = twist(base_hecke_character(F, 12), 2);
        std::vector<IdealHNF> P;
        for (int64_t p = 2; P.size() < 8; ++p)
            if (is_prime(p) && kronecker(-71, p) == 1) {
                P.push_back(prime_ideal_above(-71, p));
                P.push_back(ideal_conj(P.back()));
            }
        for (const auto& I : P)
            for (const auto& J : P) CHECK(std::abs(om(ideal_mul(I, J)) - om(I) * om(J)) < 1e-10);
    }

    TEST_CASE("product with the conjugate is trivial") {
        auto F = make_field(-47);
        const HeckeCharacter om = twist(base_hecke_character(F, 12), 3);
        CHECK(is_trivial(product(om, conjugate(om))));
        CHECK_FALSE(is_trivial(om));
    }

    TEST_CASE("theta coefficients satisfy the Hecke relations") {
        auto F = make_field(-23);
        for (int k : {0, 12}) {
            const ThetaSeries th = theta_coefficients(twist(base_hecke_character(F, k), 1), 600);
            for (int64_t p : {2, 3, 5, 7, 11, 13, 23})
                CHECK(std::abs(th.lambda[p * p] - (th.lambda[p] * th.lambda[p] - double(kronecker(-23, p)))) < 1e-10);
            for (int64_t m = 2; m < 24; ++m)
                for (int64_t n = 2; n < 24; ++n)
                    if (std::gcd(m, n) == 1) CHECK(std::abs(th.lambda[m * n] - th.lambda[m] * th.lambda[n]) < 1e-10);
        }
    }
}
