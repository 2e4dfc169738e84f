#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

#include "artifact/numeric.hpp"
#include "artifact/qforms.hpp"

namespace artifact {

// tau(n) for n = 0..n_max (tau(0) = 0), exact.
std::vector<mpz_class> delta_qexp(int64_t n_max);
// Same numbers as signed 128-bit integers; cached, n_max <= 2^21.
const std::vector<i128>& delta_coefficients(int64_t n_max);

// Level-1 holomorphic Hecke eigenform.
struct Eigenform {
    int weight = 12;
    int64_t level = 1;
    std::vector<mpz_class> a;    // exact a(n), n < a.size()
    std::vector<double> lambda;  // a(n) / n^{(k-1)/2}, n < lambda.size()
    std::string name;

    int64_t n_max() const { return static_cast<int64_t>(lambda.size()) - 1; }
    // spectral parameter t = i (k - 1) / 2
    cplx spectral_parameter() const { return {0.0, 0.5 * (weight - 1)}; }
    double raw(int64_t n) const;
};

Eigenform delta_eigenform(int64_t n_max);
// k in {12, 16, 18, 20, 22, 26}; built as Delta * E_{k-12}.
Eigenform level1_eigenform(int k, int64_t n_max = 2000);
// Lines "n a(n)"; validates a(1) = 1 and multiplicativity on coprime pairs.
Eigenform load_eigenform(const std::string& path, int weight, int64_t level = 1);
// Largest |lambda(m) lambda(n) - lambda(mn)| over coprime m, n with mn <= bound.
double multiplicativity_defect(const Eigenform& f, int64_t bound);

// Eisenstein series E_k (k in {4, 6, 8, 10, 14}) with constant term 1.
std::vector<mpz_class> eisenstein_qexp(int k, int64_t n_max);

// phi(z) = scale * y^{k/2} sum a(n) e(n z), or its complex conjugate (weight -k).
struct QSeries {
    int weight = 0;
    std::vector<double> a;
    double scale = 1.0;
    bool conjugated = false;

    int invariant_weight() const { return conjugated ? -weight : weight; }
};

QSeries to_qseries(const Eigenform& f, double scale = 1.0);
QSeries conj(QSeries f);
// Product of two q-series (weights add, scales multiply).
QSeries multiply(const QSeries& f, const QSeries& g);

struct PointEval {
    cplx value;
    double tail_bound = 0.0;
    int terms = 0;
};

// Direct truncated series at z, no reduction; tail below rel_tol of the leading term.
PointEval evaluate_series(const QSeries& f, cplx z, double rel_tol = 1e-14);
// Reduces z to the standard fundamental domain first and applies the weight factor.
cplx evaluate(const QSeries& f, cplx z);
// Same, but using the exact reduction of the form whose root is z_Q.
cplx evaluate_at_form(const QSeries& f, const QuadForm& q);

// f(z) = j(g, z)^{-k} f(g z) bookkeeping: returns w in the fundamental domain and j(g, z) with |j| = 1.
struct FundamentalReduction {
    cplx w;
    cplx j;
};
FundamentalReduction to_fundamental_domain(cplx z);

enum class WhittakerMethod { ClosedForm, Asymptotic, Quadrature, Bessel };

struct WhittakerEval {
    double kappa = 0.0;
    cplx mu;
    double y = 0.0;
    cplx value;
    double error_bound = 0.0;
    WhittakerMethod method = WhittakerMethod::Quadrature;
};

// W_{kappa, mu}(y), y > 0.
WhittakerEval whittaker(double kappa, cplx mu, double y);
// Individual methods, for cross-validation.
WhittakerEval whittaker_closed_form(double kappa, cplx mu, double y);
WhittakerEval whittaker_asymptotic(double kappa, cplx mu, double y, int max_terms = 200);
WhittakerEval whittaker_quadrature(double kappa, cplx mu, double y);
// sqrt(y / pi) K_mu(y / 2) via K_mu(x) = int_0^inf exp(-x cosh u) cosh(mu u) du.
WhittakerEval whittaker_bessel(cplx mu, double y);
double generalized_laguerre(int m, double alpha, double x);

// calW_{k/2, s}(z) = (-1)^{k/2} W_{k/2, s}(y) e^{i x / 2}, k >= 0 even, y > 0.
cplx whittaker_cal(int k, cplx s, cplx z);

// Weight-k vector R_{k-2} ... R_{k_pi} f in its Fourier model
//   F(z) = c sum_{n >= 1} lambda(n) n^{-1/2} calW_{k/2, s}(4 pi n z),  s = (k_pi - 1)/2,
// with c chosen so that F = y^{k_pi/2} g at k = k_pi.
struct RaisedForm {
    const Eigenform* base = nullptr;
    int weight = 12;
    double normalization = 1.0;
    // ||F||^2 / ||y^{k_pi/2} g||^2
    double norm_multiplier = 1.0;
};

RaisedForm raised_form(const Eigenform& f);
RaisedForm raising_apply(const RaisedForm& rf, int steps);
// prod_{j=0}^{l-1} (((k + 2j + 1)/2)^2 + t^2)
cplx raising_norm_factor(int k, cplx t, int steps);
cplx evaluate_raised(const RaisedForm& rf, cplx z);

// int_F |phi|^2 dx dy / y^2 by 2D Gauss-Legendre, truncated at y = y_max.
double petersson_quadrature(const std::function<cplx(cplx)>& phi, double y_max = 10.0, int x_nodes = 48,
                            int y_panels = 24);
double petersson_norm_quadrature(const Eigenform& f);
// Gamma(k) L(sym^2 f, 1) / (2^{2k-1} pi^{k+1}).
double petersson_norm_sym2(const Eigenform& f);
// Both routes; throws IntegrityError if they differ by more than tol.
double petersson_norm(const Eigenform& f, double tol = 1e-3);

}  // namespace artifact
