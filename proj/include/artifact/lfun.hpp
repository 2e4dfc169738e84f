#pragma once

#include <memory>
#include <vector>

#include "artifact/hecke.hpp"
#include "artifact/modforms.hpp"
#include "artifact/numeric.hpp"

namespace artifact {

// prod Gamma_R(s + r_i) prod Gamma_C(s + c_j)
struct GammaFactor {
    std::vector<double> r_shifts;
    std::vector<double> c_shifts;

    cplx log_value(cplx s) const;
    int degree() const { return static_cast<int>(r_shifts.size() + 2 * c_shifts.size()); }
    // largest real pole
    double rightmost_pole() const;
};

struct AfeResult {
    cplx value;
    double error_estimate = 0.0;
    int64_t terms_used = 0;
};

// Number of coefficients the smoothed functional equation needs at s (both sums, all X used).
int64_t afe_length(const GammaFactor& g, double conductor, cplx s);
// L(s) = sum b(n) n^{-s} V_s(n / (X sqrt Q)) + eps Q^{1/2-s} g(1-s)/g(s) sum conj(b(n)) n^{s-1} V_{1-s}(n X / sqrt Q).
// Evaluated at two values of X; the difference plus the kernel quadrature error is the error estimate.
AfeResult afe_evaluate(const std::vector<cplx>& b, const GammaFactor& g, double conductor, cplx eps, cplx s);

struct RSLfunction {
    std::shared_ptr<const Eigenform> f;
    ThetaSeries theta;
    std::vector<cplx> b;  // b[0] unused, b[1] = 1
    double conductor = 1.0;
    GammaFactor gamma;
    cplx root_number = 1.0;

    int64_t level() const { return f->level; }
    int64_t disc() const { return theta.character.disc(); }
};

// b = (m^2 -> chi_K(m), gcd(m, N) = 1) * (lambda_f lambda_theta), n = 1..n_max.
std::vector<cplx> rs_coefficients(const Eigenform& f, const ThetaSeries& theta, int64_t n_max);
// Checks the Heegner hypothesis and builds enough coefficients for the centre and s = 2.
RSLfunction make_rs_lfunction(std::shared_ptr<const Eigenform> f, const HeckeCharacter& omega);

struct DirichletValue {
    cplx value;
    double error_bound = 0.0;      // rigorous tail majorant
    double error_heuristic = 0.0;  // square-root cancellation estimate
    int64_t prime_bound = 0;
};

// Euler product with exact local factors for p <= P; Re s >= 3/2.
DirichletValue dirichlet_eval(const RSLfunction& L, cplx s);
// Plain partial sum of an arbitrary series with the majorant |b(n)| <= d_4(n).
DirichletValue dirichlet_partial_sum(const std::vector<cplx>& b, cplx s);

AfeResult afe_eval(const RSLfunction& L, cplx s);
AfeResult afe_central_value(const RSLfunction& L);

struct SymSquareValue {
    double value = 0.0;
    double error_estimate = 0.0;
    int64_t terms_used = 0;
    double euler_product = 0.0;  // coarse cross-check
    int64_t euler_prime_bound = 0;
};

// L(sym^2 f, 1) for level one f.
SymSquareValue sym_square_at_1(const Eigenform& f);
// lambda_f(p) for primes p <= P (index p), extended through the Delta table when f is Delta.
std::vector<double> prime_lambdas(const Eigenform& f, int64_t P);

enum class ArchimedeanKind { Principal, Discrete };

struct CInfinity {
    double variantA = 0.0;
    double variantB = 0.0;
};

CInfinity c_infinity(ArchimedeanKind kind, int k, int k_pi, double t = 0.0);

}  // namespace artifact
