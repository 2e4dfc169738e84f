#include <doctest.h>

#include "artifact/errors.hpp"
#include "artifact/heegner.hpp"

using namespace artifact;

TEST_SUITE("heegner") {
    TEST_CASE("hypothesis") {
        CHECK_NOTHROW(check_heegner_hypothesis(-23, 1));
        CHECK_NOTHROW(check_heegner_hypothesis(-23, 3));
        CHECK_THROWS_AS(check_heegner_hypothesis(-23, 5), PreconditionError);
        CHECK_THROWS_AS(check_heegner_hypothesis(-23, 9), PreconditionError);
        CHECK_THROWS_AS(check_heegner_hypothesis(-24, 5), PreconditionError);
    }

    TEST_CASE("orientations square to D") {
        for (int64_t N : {1, 2, 3, 5, 6, 10, 15}) {
            for (int64_t r : orientations(-71, N)) CHECK(mod_floor(r * r + 71, 4 * N) == 0);
        }
    }

    TEST_CASE("explicit representatives") {
        for (int64_t D : {-23, -47, -71, -191, -239}) {
            for (int64_t N : {1, 2, 3, 5, 7, 11}) {
                if (kronecker(D, N) != 1 && N != 1) continue;
                bool ok = true;
                for (int64_t p : prime_factors(N)) ok &= kronecker(D, p) == 1;
                if (!ok) continue;
                CAPTURE(D);
                CAPTURE(N);
                const int64_t r = orientations(D, N).front();
                const HeegnerForm base = base_heegner_form(D, N, r);
                CHECK(is_heegner_form(base.form, base.orientation));
                CHECK(reduce(base.form).form == principal_form(D));
                const auto rep = explicit_representatives(D, N, r, base);
                CHECK(static_cast<int>(rep.entries.size()) == class_group(D).h());
                for (const auto& e : rep.entries) CHECK(is_heegner_form(e.Q.form, e.Q.orientation));
                CHECK(lemma41_check(rep));
            }
        }
    }

    TEST_CASE("CM points and the embedding") {
        for (const QuadForm& q : enumerate_reduced(-71)) {
            const HeegnerForm Q{q, {1, 1}};
            const cplx z = heegner_point(Q).z();
            CHECK(std::abs(double(q.a) * z * z + double(q.b) * z + double(q.c)) < 1e-12);
            CHECK(std::abs(gamma_infinity(Q).act(cplx(0, 1)) - z) < 1e-12);
            const Mat2 M = embedding_matrix(Q).matrix;
            CHECK(M * M == Mat2{-71, 0, 0, -71});
            const RealMat2 R{double(M.m11), double(M.m12), double(M.m21), double(M.m22)};
            CHECK(std::abs(R.act(z) - z) < 1e-10);
            for (double th : {0.3, 1.1, 2.5}) {
                const RealMat2 C = conjugated_embedding(Q, th);
                CHECK(std::abs(C.det() - 1.0) < 1e-10);
                CHECK(std::abs(C.m11 - C.m22) < 1e-10);
                CHECK(std::abs(C.m12 + C.m21) < 1e-10);
                CHECK(std::abs(std::abs(C.m11) - std::abs(std::cos(th))) < 1e-10);
            }
        }
    }

    TEST_CASE("corrupted representative is rejected") {
        const int64_t r = orientations(-47, 1).front();
        auto rep = explicit_representatives(-47, 1, r, base_heegner_form(-47, 1, r));
        REQUIRE(lemma41_check(rep));
        auto& e = rep.entries[1];
        e.b += 1;
        e.Q.form.b += 1;
        CHECK_FALSE(lemma41_check(rep));
    }

    TEST_CASE("embedding of [1, 1, 6]") {
        const OptimalEmbedding E = embedding_matrix(HeegnerForm{{1, 1, 6}, {1, 1}});
        CHECK(E.matrix == Mat2{1, 12, -2, -1});
        CHECK(E.matrix.det() == 23);
        CHECK(E.matrix.m11 + E.matrix.m22 == 0);
    }
}
