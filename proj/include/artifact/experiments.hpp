#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "artifact/abelian.hpp"
#include "artifact/hecke.hpp"
#include "artifact/heegner.hpp"
#include "artifact/lfun.hpp"
#include "artifact/modforms.hpp"

namespace artifact {

// Weight-k function on the upper half-plane, evaluated at the root z_Q of a form.
struct AutomorphicFunction {
    int weight = 0;
    std::function<cplx(const QuadForm&)> at_form;
    std::string name;
};

AutomorphicFunction from_series(const QSeries& f, std::string name = "");
AutomorphicFunction product(const AutomorphicFunction& a, const AutomorphicFunction& b);
AutomorphicFunction conj(const AutomorphicFunction& a);

// Periods P(chi) = sum_i f(z_{Q_i}) conj((chi Omega)(p_i)) over the explicit representatives.
struct PeriodVector {
    int64_t D = 0;
    int64_t N = 1;
    int k = 0;
    std::shared_ptr<const Field> field;
    HeckeCharacter omega;
    ExplicitRepresentatives reps;
    std::vector<cplx> point_values;  // f(z_{Q_i}), entry order
    std::vector<cplx> omega_values;  // Omega(p_i), entry order
    GroupMap sequence;               // f(z_{Q_i}) conj(Omega(p_i)), indexed by group element
    GroupMap periods;                // indexed by character
    double plancherel_error = 0.0;

    int h() const { return field->h(); }
};

// Requires the Heegner hypothesis and omega.k equal to the weight of f.
PeriodVector compute_periods(int64_t N, const AutomorphicFunction& f, const HeckeCharacter& omega);

struct WaldspurgerRow {
    int chi = 0;
    double period_sq = 0.0;
    double l_value = 0.0;
    double l_error = 0.0;
    int64_t terms = 0;
    double ratio = 0.0;
    bool inconsistent = false;
};

struct WaldspurgerReport {
    int64_t D = 0;
    int k = 0;
    std::vector<WaldspurgerRow> rows;
    double dispersion = 0.0;  // max / min - 1
    double mean_ratio = 0.0;
    double sym2 = 0.0;
    double petersson = 0.0;
    double base_constant = 0.0;   // |D|^{1/2} / (8 N' L(sym^2, 1))
    double normalized_ratio = 0.0;  // mean_ratio / base_constant
    CInfinity c_inf;
    double match_A = 0.0;  // normalized_ratio / c_inf.variantA
    double match_B = 0.0;
};

// f L^2-normalised through petersson_norm; Omega of infinity type k = weight of f.
WaldspurgerReport waldspurger_check(int64_t D, const Eigenform& f);

struct MomentCheck {
    cplx lhs;
    cplx rhs;
    bool agree = false;
    double rel_error = 0.0;
};

// (1/h^n) sum over Wide(n) of prod P_i(chi_i) against (1/h) sum over classes of prod sequence_i.
MomentCheck wide_moment_assembly(const std::vector<PeriodVector>& pv, double tol = 1e-9);
// Inclusion-exclusion class side against the Wide*(2n) period side.
MomentCheck diagonal_moment_check(const std::vector<PeriodVector>& pv, double tol = 1e-9);

// n = 1: |F|^2 with the trivial character; n = 2: F, conj F; n = 3: F, F, conj(y^12 Delta^2),
// where F = y^6 Delta / ||Delta|| and the characters are Omega, Omega, conj(Omega^2).
std::vector<PeriodVector> flagship_periods(int64_t D, int n);

struct EquidistRow {
    int64_t D = 0;
    int h = 0;
    double mean_sq = 0.0;
    double deviation = 0.0;  // |mean_sq - 3/pi|
    double weyl = 0.0;       // |(1/h) sum f(z_Q)|
};

std::vector<EquidistRow> equidistribution_scan(const QSeries& f, const std::vector<int64_t>& discs);
std::vector<int64_t> fundamental_discriminants(int64_t lo, int64_t hi);  // lo <= D <= hi < 0

struct BlockSummary {
    double lo = 0, hi = 0;
    size_t count = 0;
    double median_deviation = 0.0;
    double median_weyl = 0.0;
};
BlockSummary summarize_block(const std::vector<EquidistRow>& rows, double abs_lo, double abs_hi);

// L^2-normalised y^{k/2} f.
QSeries normalized_series(const Eigenform& f);

std::string format_double(double v);
void write_csv(std::ostream& os, const std::vector<EquidistRow>& rows);
void write_csv(std::ostream& os, const WaldspurgerReport& r);

}  // namespace artifact
