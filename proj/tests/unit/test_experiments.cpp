#include <doctest.h>

#include "artifact/errors.hpp"
#include "artifact/experiments.hpp"

using namespace artifact;

namespace {

const Eigenform& delta() {
    static const Eigenform d = delta_eigenform(2000);
    return d;
}

const QSeries& unit_delta() {
    static const QSeries f = normalized_series(delta());
    return f;
}

}  // namespace

TEST_SUITE("experiments") {
    TEST_CASE("class number one") {
        auto F = make_field(-7);
        const PeriodVector pv = compute_periods(1, from_series(unit_delta()), base_hecke_character(F, 12));
        REQUIRE(pv.h() == 1);
        const cplx z = heegner_point(pv.reps.base).z();
        CHECK(std::abs(pv.periods[0] - evaluate(unit_delta(), z)) < 1e-12 * std::abs(pv.periods[0]));
        const auto rows = equidistribution_scan(unit_delta(), {-7});
        CHECK(rows[0].h == 1);
        CHECK(rows[0].weyl == doctest::Approx(std::abs(pv.periods[0])));
    }

    TEST_CASE("Plancherel and twisting") {
        for (int64_t D : {-23, -31, -47, -71}) {
            auto F = make_field(D);
            const HeckeCharacter om = base_hecke_character(F, 12);
            const PeriodVector pv = compute_periods(1, from_series(unit_delta()), om);
            CHECK(pv.plancherel_error < 1e-12);
            const FinAbGroup& G = F->dec.group;
            for (int c = 1; c < G.order(); ++c) {
                const PeriodVector tw = compute_periods(1, from_series(unit_delta()), twist(om, c));
                for (int chi = 0; chi < G.order(); ++chi)
                    CHECK(std::abs(tw.periods[chi] - pv.periods[G.add(chi, c)]) < 1e-12);
            }
        }
    }

    TEST_CASE("hypotheses") {
        auto F = make_field(-23);
        CHECK_THROWS_AS(compute_periods(1, from_series(unit_delta()), base_hecke_character(F, 10)), PreconditionError);
        CHECK_THROWS_AS(compute_periods(5, from_series(unit_delta()), base_hecke_character(F, 12)), PreconditionError);
        std::vector<PeriodVector> one{compute_periods(1, from_series(unit_delta()), base_hecke_character(F, 12))};
        CHECK_THROWS_AS(wide_moment_assembly(one), PreconditionError);
    }

    TEST_CASE("wide moment assembly") {
        for (int64_t D : {-23, -31, -47, -71})
            for (int n = 1; n <= 3; ++n) {
                CAPTURE(D);
                CAPTURE(n);
                const auto pv = flagship_periods(D, n);
                const MomentCheck w = wide_moment_assembly(pv);
                CHECK(w.agree);
                CHECK(w.rel_error < 1e-9);
                CHECK(diagonal_moment_check(pv, 1e-9).agree);
            }
        const MomentCheck empty = diagonal_moment_check({}, 1e-9);
        CHECK(empty.agree);
        CHECK(empty.lhs == cplx(0));
    }

    TEST_CASE("n = 2 is Plancherel") {
        const auto pv = flagship_periods(-47, 2);
        double per = 0, cls = 0;
        for (cplx p : pv[0].periods) per += std::norm(p);
        for (cplx v : pv[0].sequence) cls += std::norm(v);
        const MomentCheck w = wide_moment_assembly(pv);
        CHECK(w.lhs.real() == doctest::Approx(per / 25.0).epsilon(1e-12));
        CHECK(w.rhs.real() == doctest::Approx(cls / 5.0).epsilon(1e-12));
    }

    TEST_CASE("Waldspurger ratios at D = -23") {
        const WaldspurgerReport r = waldspurger_check(-23, delta());
        REQUIRE(r.rows.size() == 3);
        for (const auto& row : r.rows) {
            CHECK_FALSE(row.inconsistent);
            CHECK(row.ratio > 0);
        }
        CHECK(r.dispersion < 1e-3);
    }

    TEST_CASE("equidistribution rows") {
        const auto ds = fundamental_discriminants(-40, -3);
        CHECK(ds == std::vector<int64_t>{-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -31, -35, -39, -40});
        const std::vector<int64_t> scan{-23, -31, -47, -71, -84, -95};
        const auto rows = equidistribution_scan(unit_delta(), scan);
        for (const auto& r : rows) {
            CHECK(r.h == class_group(r.D).h());
            CHECK(r.mean_sq >= 0);
            CHECK(r.weyl <= std::sqrt(r.mean_sq) + 1e-12);
        }
        const BlockSummary b = summarize_block(rows, 40, 90);
        CHECK(b.count == 3);
        CHECK_THROWS_AS(equidistribution_scan(unit_delta(), {-12}), DomainError);
    }

    TEST_CASE("Waldspurger at class number one") {
        const WaldspurgerReport r = waldspurger_check(-7, delta());
        REQUIRE(r.rows.size() == 1);
        CHECK(r.dispersion == 0.0);
        CHECK(r.rows[0].ratio > 0);
    }
}
