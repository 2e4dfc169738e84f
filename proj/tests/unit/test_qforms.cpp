#include <doctest.h>

#include <random>

#include "artifact/abelian.hpp"
#include "artifact/errors.hpp"
#include "artifact/numeric.hpp"
#include "artifact/qforms.hpp"

using namespace artifact;

namespace {

// Dirichlet's class number formula, D < -4.
int64_t dirichlet_h(int64_t D) {
    int64_t s = 0;
    for (int64_t n = 1; n < -D; ++n) s += kronecker(D, n) * n;
    return std::abs(s) / (-D);
}

}  // namespace

TEST_SUITE("qforms") {
    TEST_CASE("known class numbers") {
        CHECK(class_group(-3).h() == 1);
        CHECK(class_group(-4).h() == 1);
        CHECK(class_group(-23).h() == 3);
        CHECK(class_group(-47).h() == 5);
        CHECK(class_group(-71).h() == 7);
        CHECK(class_group(-163).h() == 1);
        CHECK(class_group(-84).h() == 4);
    }

    TEST_CASE("class number formula") {
        for (int64_t D = -7; D > -800; --D) {
            if (!is_fundamental(D)) continue;
            CAPTURE(D);
            CHECK(static_cast<int64_t>(enumerate_reduced(D).size()) == dirichlet_h(D));
        }
    }

    TEST_CASE("fundamental discriminants") {
        for (int64_t D : {-3, -4, -7, -8, -15, -20, -23, -24, -84}) CHECK(is_fundamental(D));
        for (int64_t D : {-12, -16, -5, -6, -27, -28}) CHECK_FALSE(is_fundamental(D));
    }

    TEST_CASE("reduction is an equivalence to a reduced form") {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int64_t> U(-40, 40);
        int tried = 0;
        while (tried < 300) {
            const int64_t a = std::abs(U(rng)) + 1, b = U(rng), D = -23 - 4 * std::abs(U(rng)) * 5;
            if ((b * b - D) % (4 * a) != 0 || gcd64(gcd64(a, b), (b * b - D) / (4 * a)) != 1) continue;
            const QuadForm q{a, b, (b * b - D) / (4 * a)};
            ++tried;
            const Reduction r = reduce(q);
            CHECK(is_reduced(r.form));
            CHECK(r.transform.det() == 1);
            CHECK(act(q, r.transform) == r.form);
            CHECK(r.form.disc() == q.disc());
        }
    }

    TEST_CASE("composition is a group law") {
        const ClassGroup cg = class_group(-503);
        REQUIRE(cg.h() == 21);
        for (int i = 0; i < cg.h(); ++i) {
            CHECK(cg.mul(i, cg.principal_index) == i);
            CHECK(cg.mul(i, cg.inverse_index(i)) == cg.principal_index);
            for (int j = 0; j < cg.h(); ++j) {
                CHECK(cg.mul(i, j) == cg.mul(j, i));
                for (int k = 0; k < cg.h(); k += 5) CHECK(cg.mul(cg.mul(i, j), k) == cg.mul(i, cg.mul(j, k)));
            }
        }
    }

    TEST_CASE("forms and ideals correspond") {
        for (int64_t D : {-23, -71, -84, -191}) {
            for (const QuadForm& q : enumerate_reduced(D)) {
                const IdealHNF I = form_to_ideal(q);
                CHECK(I.norm() == q.a);
                CHECK(reduce(ideal_to_form(I)).form == q);
            }
        }
    }

    TEST_CASE("invalid input") {
        CHECK_THROWS_AS(validate_form(QuadForm{0, 1, 1}), DomainError);
        CHECK_THROWS_AS(class_group(-12), DomainError);
    }
}
