#include <doctest.h>

#include "artifact/errors.hpp"
#include "artifact/lfun.hpp"

using namespace artifact;

namespace {

std::shared_ptr<const Eigenform> delta() {
    static auto d = std::make_shared<const Eigenform>(delta_eigenform(4000));
    return d;
}

}  // namespace

TEST_SUITE("lfun") {
    TEST_CASE("untwisted case factors as L(f) L(f x chi_D)") {
        for (int64_t D : {-23, -47}) {
            auto f = delta();
            const RSLfunction L = make_rs_lfunction(f, base_hecke_character(make_field(D), 0));
            GammaFactor g;
            g.c_shifts = {5.5};
            std::vector<cplx> b1(f->lambda.begin(), f->lambda.end()), b2 = b1;
            for (size_t n = 1; n < b2.size(); ++n) b2[n] *= double(kronecker(D, n));
            for (double s : {2.0, 1.5, 0.5, 0.8}) {
                CAPTURE(s);
                const AfeResult rs = afe_eval(L, s);
                const cplx prod = afe_evaluate(b1, g, 1.0, 1.0, s).value *
                                  afe_evaluate(b2, g, double(D * D), -1.0, s).value;
                CHECK(std::abs(rs.value - prod) < 1e-9);
                CHECK(rs.error_estimate < 1e-9);
            }
        }
    }

    TEST_CASE("sign of the functional equation") {
        auto F = make_field(-47);
        for (int k = 0; k <= 16; k += 2) {
            CAPTURE(k);
            const RSLfunction L = make_rs_lfunction(delta(), twist(base_hecke_character(F, k), 2));
            const AfeResult c = afe_eval(L, 0.5);
            CHECK(c.error_estimate < 1e-9);
            if (k + 1 < 12)
                CHECK(std::abs(c.value) < 1e-9);
            else
                CHECK(c.value.real() > 1e-3);
        }
    }

    TEST_CASE("Euler product against the approximate functional equation") {
        for (int64_t D : {-23, -71}) {
            auto F = make_field(D);
            for (int chi = 0; chi < F->h(); ++chi) {
                const RSLfunction L = make_rs_lfunction(delta(), twist(base_hecke_character(F, 12), chi));
                const DirichletValue e = dirichlet_eval(L, 2.0);
                const AfeResult a = afe_eval(L, 2.0);
                // the rigorous tail majorant at s = 2 stalls near 4e-7 at P = 2^20; the heuristic is what 1e-8 tests
                CHECK(e.error_heuristic < 1e-8);
                CHECK(std::abs(e.value - a.value) < 1e-8);
                CHECK(std::abs(e.value - dirichlet_partial_sum(L.b, 2.0).value) < 1e-3);
            }
        }
        CHECK_THROWS_AS(dirichlet_eval(make_rs_lfunction(delta(), base_hecke_character(make_field(-23), 12)), 1.2),
                        DomainError);
    }

    TEST_CASE("central values at D = -23") {
        auto F = make_field(-23);
        // frozen after the checks above; indices follow the decomposition of Cl(-23)
        const double frozen[] = {4.219496393379, 3.388193180005, 0.108826759924};
        for (int chi = 0; chi < 3; ++chi) {
            const AfeResult c = afe_central_value(make_rs_lfunction(delta(), twist(base_hecke_character(F, 12), chi)));
            CHECK(c.error_estimate < 1e-6);
            CHECK(std::abs(c.value.imag()) < 1e-12);
            CHECK(c.value.real() == doctest::Approx(frozen[chi]).epsilon(1e-10));
        }
        CHECK(afe_central_value(make_rs_lfunction(delta(), base_hecke_character(F, 14))).value.real() ==
              doctest::Approx(0.897026499380).epsilon(1e-9));
    }

    TEST_CASE("Heegner hypothesis") {
        CHECK_THROWS_AS(make_rs_lfunction(delta(), base_hecke_character(make_field(-24), 12)), PreconditionError);
    }

    TEST_CASE("symmetric square at 1") {
        // <Delta, Delta> = Gamma(12) L(sym^2 Delta, 1) / (2^23 pi^13)
        const double expected = 1.0353620568043209e-6 * std::pow(2.0, 23) * std::pow(kPi, 13) / std::tgamma(12.0);
        const SymSquareValue v = sym_square_at_1(*delta());
        CHECK(v.value == doctest::Approx(expected).epsilon(1e-10));
        CHECK(v.error_estimate < 1e-10);
        CHECK(std::abs(v.euler_product / v.value - 1.0) < 1e-3);
    }

    TEST_CASE("archimedean constants") {
        const CInfinity c = c_infinity(ArchimedeanKind::Discrete, 12, 12);
        // Gamma(13) / (Gamma(7) B(12, 1))
        CHECK(c.variantA == doctest::Approx(std::tgamma(13.0) * 12.0 / std::tgamma(7.0)));
        // (2 pi)^{-1} Gamma(12) / (Gamma(5) B(12.5, 0.5))
        const double B = std::tgamma(12.5) * std::tgamma(0.5) / std::tgamma(13.0);
        CHECK(c.variantB == doctest::Approx(std::tgamma(12.0) / (2 * kPi * std::tgamma(5.0) * B)));
        CHECK_THROWS_AS(c_infinity(ArchimedeanKind::Discrete, 10, 12), DomainError);
    }

    TEST_CASE("coefficients") {
        auto F = make_field(-23);
        const ThetaSeries th = theta_coefficients(base_hecke_character(F, 12), 100);
        const auto b = rs_coefficients(*delta(), th, 100);
        CHECK(std::abs(b[1] - 1.0) < 1e-15);
        CHECK(std::abs(b[2] - delta()->lambda[2] * th.lambda[2]) < 1e-14);
        for (int64_t p : {5, 7, 11, 17, 19})  // inert in Q(sqrt -23)
            CHECK(std::abs(b[p]) < 1e-15);
        CHECK(std::abs(dirichlet_partial_sum(std::vector<cplx>(50, 0.0), 2.0).value) == 0.0);
    }

    TEST_CASE("principal series constants") {
        CHECK(c_infinity(ArchimedeanKind::Principal, 0, 0, 1.3).variantA == doctest::Approx(1.0));
        CHECK(c_infinity(ArchimedeanKind::Principal, 2, 0, 1.3).variantA ==
              doctest::Approx(4 * kPi * kPi / (0.25 + 1.69)));
    }
}
