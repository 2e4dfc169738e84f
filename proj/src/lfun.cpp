#include "artifact/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "artifact/errors.hpp"

namespace artifact {

cplx GammaFactor::log_value(cplx s) const {
    cplx v = 0.0;
    for (double r : r_shifts) v += log_gamma_r(s + r);
    for (double c : c_shifts) v += log_gamma_c(s + c);
    return v;
}

double GammaFactor::rightmost_pole() const {
    double p = -std::numeric_limits<double>::infinity();
    for (double r : r_shifts) p = std::max(p, -r);
    for (double c : c_shifts) p = std::max(p, -c);
    return p;
}

namespace {

bool at_pole(const GammaFactor& g, cplx s) {
    auto near_nonpos_int = [](cplx z) {
        return std::abs(z.imag()) < 1e-12 && z.real() < 0.5 && std::abs(z.real() - std::round(z.real())) < 1e-12;
    };
    for (double r : g.r_shifts)
        if (near_nonpos_int(0.5 * (s + r))) return true;
    for (double c : g.c_shifts)
        if (near_nonpos_int(s + c)) return true;
    return false;
}

// V_{s0}(y) = (1/2 pi i) int_{(c)} y^{-u} g(s0 + u) / g(s0) du / u on a truncated line.
class Kernel {
public:
    Kernel(const GammaFactor& g, cplx s0) : g_(g), s0_(s0) {
        if (at_pole(g, s0)) throw DomainError("afe: gamma factor has a pole at the evaluation point");
        log_g0_ = g.log_value(s0);
        c_ = std::max(0.0, g.rightmost_pole() - s0.real()) + 1.0;
        const double lref = log_abs_integrand(c_, 0.0);
        auto find_edge = [&](double dir) {
            double t = 0.0;
            while (t < 5000.0 && log_abs_integrand(c_, dir * t) - lref > -48.0) t += 1.0;
            return dir * t;
        };
        tlo_ = find_edge(-1.0);
        thi_ = find_edge(1.0);
        double width = 1.0;
        build(width);
        const double probes[] = {1e-3, 0.05, 1.0, 5.0, 20.0};
        for (int it = 0; it < 4; ++it) {
            std::vector<cplx> before;
            for (double y : probes) before.push_back((*this)(y));
            const std::vector<double> t_old = t_;
            const std::vector<cplx> w_old = w_;
            width *= 0.5;
            build(width);
            double diff = 0.0;
            for (size_t i = 0; i < std::size(probes); ++i)
                diff = std::max(diff, std::abs((*this)(probes[i]) - before[i]) / std::max(1.0, std::abs(before[i])));
            quad_error_ = diff;
            if (diff < 1e-12) {
                t_ = t_old;
                w_ = w_old;
                return;
            }
        }
        if (quad_error_ > 1e-9) throw AccuracyError("afe: kernel quadrature did not settle");
    }

    cplx operator()(double y) const {
        const double ly = std::log(y);
        const double scale = std::exp(-c_ * ly);
        CompensatedSum<cplx> s;
        for (size_t j = 0; j < t_.size(); ++j) s.add(w_[j] * std::polar(1.0, -t_[j] * ly));
        return scale * s.value();
    }

    double quad_error() const { return quad_error_; }

    // min over c' >= c of y^{-c'} (1/2pi) int |g(s0+c'+it)/g(s0)| / |c'+it| dt
    double bound(double y) const {
        double best = std::numeric_limits<double>::infinity();
        for (int m = 0; m <= 60; m += 2) {
            const double cc = c_ + m;
            double acc = 0.0;
            const double lref = log_abs_integrand(cc, 0.0);
            for (double dir : {-1.0, 1.0}) {
                for (double t = 0.0; t < 5000.0; t += 0.5) {
                    const double l = log_abs_integrand(cc, dir * t);
                    acc += 0.5 * std::exp(l);
                    if (l - lref < -40.0) break;
                }
            }
            best = std::min(best, std::exp(-cc * std::log(y)) * acc / (2.0 * kPi) * 1.5);
        }
        return best;
    }

private:
    double log_abs_integrand(double c, double t) const {
        const cplx u(c, t);
        return (g_.log_value(s0_ + u) - log_g0_).real() - std::log(std::abs(u));
    }

    void build(double width) {
        const int panels = static_cast<int>(std::ceil((thi_ - tlo_) / width));
        const Quadrature q = composite_gl(tlo_, thi_, std::max(panels, 1), 16);
        t_ = q.x;
        w_.resize(q.x.size());
        for (size_t j = 0; j < q.x.size(); ++j) {
            const cplx u(c_, q.x[j]);
            w_[j] = q.w[j] / (2.0 * kPi) * std::exp(g_.log_value(s0_ + u) - log_g0_) / u;
        }
    }

    GammaFactor g_;
    cplx s0_;
    cplx log_g0_;
    double c_ = 1.0;
    double tlo_ = 0.0, thi_ = 0.0;
    std::vector<double> t_;
    std::vector<cplx> w_;
    double quad_error_ = 0.0;
};

constexpr double kAfeX[2] = {1.0, 1.2};

double cutoff_y(const Kernel& K) {
    double y = 1.0;
    while (K.bound(y) > 1e-18 && y < 1e12) y *= 1.5;
    return y;
}

}  // namespace

int64_t afe_length(const GammaFactor& g, double conductor, cplx s) {
    const double sq = std::sqrt(conductor);
    const Kernel k1(g, s), k2(g, 1.0 - s);
    const double y1 = cutoff_y(k1), y2 = cutoff_y(k2);
    double n = 0.0;
    for (double X : kAfeX) n = std::max({n, y1 * X * sq, y2 * sq / X});
    return static_cast<int64_t>(std::ceil(n)) + 1;
}

AfeResult afe_evaluate(const std::vector<cplx>& b, const GammaFactor& g, double conductor, cplx eps, cplx s) {
    const double sq = std::sqrt(conductor);
    const Kernel k1(g, s), k2(g, 1.0 - s);
    const double y1 = cutoff_y(k1), y2 = cutoff_y(k2);
    const cplx factor = eps * std::exp((0.5 - s) * std::log(conductor) + g.log_value(1.0 - s) - g.log_value(s));

    cplx values[2];
    int64_t used = 0;
    double abs_mass = 0.0;
    for (int xi = 0; xi < 2; ++xi) {
        const double X = kAfeX[xi];
        const int64_t n1 = static_cast<int64_t>(std::ceil(y1 * X * sq));
        const int64_t n2 = static_cast<int64_t>(std::ceil(y2 * sq / X));
        const int64_t need = std::max(n1, n2);
        if (need >= static_cast<int64_t>(b.size()))
            throw PreconditionError("afe: need " + std::to_string(need) + " coefficients, have " + std::to_string(b.size() - 1));
        used = std::max(used, need);
        CompensatedSum<cplx> s1, s2;
        for (int64_t n = 1; n <= n1; ++n) {
            if (b[n] == 0.0) continue;
            const cplx t = b[n] * std::exp(-s * std::log(static_cast<double>(n))) * k1(n / (X * sq));
            s1.add(t);
            if (xi == 0) abs_mass += std::abs(t);
        }
        for (int64_t n = 1; n <= n2; ++n) {
            if (b[n] == 0.0) continue;
            const cplx t = std::conj(b[n]) * std::exp((s - 1.0) * std::log(static_cast<double>(n))) * k2(n * X / sq);
            s2.add(t);
            if (xi == 0) abs_mass += std::abs(factor * t);
        }
        values[xi] = s1.value() + factor * s2.value();
    }
    AfeResult r;
    r.value = values[0];
    r.error_estimate = std::abs(values[0] - values[1]) + (k1.quad_error() + k2.quad_error()) * abs_mass +
                       1e-15 * abs_mass;
    r.terms_used = used;
    return r;
}

std::vector<cplx> rs_coefficients(const Eigenform& f, const ThetaSeries& theta, int64_t n_max) {
    if (n_max > f.n_max() || n_max > theta.n_max())
        throw PreconditionError("rs_coefficients: not enough coefficients for n_max = " + std::to_string(n_max));
    const int64_t D = theta.character.disc();
    std::vector<cplx> p(n_max + 1, 0.0), b(n_max + 1, 0.0);
    for (int64_t n = 1; n <= n_max; ++n) p[n] = f.lambda[n] * theta.lambda[n];
    for (int64_t m = 1; m * m <= n_max; ++m) {
        if (gcd64(m, f.level) != 1) continue;
        const int chi = kronecker_chi_K(D, m);
        if (chi == 0) continue;
        for (int64_t d = 1; d * m * m <= n_max; ++d) b[d * m * m] += static_cast<double>(chi) * p[d];
    }
    return b;
}

namespace {

GammaFactor rs_gamma(int k_theta, int k_f) {
    GammaFactor g;
    g.c_shifts = {0.5 * (k_theta + k_f) - 1.0, 0.5 * std::abs(k_theta - k_f)};
    return g;
}

std::shared_ptr<const Eigenform> extend_eigenform(std::shared_ptr<const Eigenform> f, int64_t need) {
    if (f->n_max() >= need) return f;
    if (f->level == 1 && f->weight == 12) return std::make_shared<const Eigenform>(delta_eigenform(need));
    if (f->level == 1 && (f->weight == 16 || f->weight == 18 || f->weight == 20 || f->weight == 22 || f->weight == 26))
        return std::make_shared<const Eigenform>(level1_eigenform(f->weight, need));
    throw PreconditionError("eigenform has " + std::to_string(f->n_max()) + " coefficients, " + std::to_string(need) +
                            " needed");
}

}  // namespace

RSLfunction make_rs_lfunction(std::shared_ptr<const Eigenform> f, const HeckeCharacter& omega) {
    const int64_t D = omega.disc();
    const int64_t N = f->level;
    if (gcd64(D, 2 * N) != 1) throw PreconditionError("Heegner hypothesis: gcd(D, 2N) must be 1");
    for (int64_t p : prime_factors(N))
        if (kronecker(D, p) != 1) throw PreconditionError("Heegner hypothesis: " + std::to_string(p) + " does not split");
    if (!is_squarefree(N)) throw PreconditionError("level must be square-free");
    RSLfunction L;
    L.gamma = rs_gamma(std::abs(omega.k) + 1, f->weight);
    L.conductor = static_cast<double>(N * N) * static_cast<double>(D * D);
    // finite part chi_K(-N) = -1 under the Heegner hypothesis; the archimedean sign flips it once k_theta > k_f
    L.root_number = std::abs(omega.k) + 1 > f->weight ? 1.0 : -1.0;
    const int64_t need = std::max(afe_length(L.gamma, L.conductor, 0.5), afe_length(L.gamma, L.conductor, 2.0));
    L.f = extend_eigenform(std::move(f), need);
    L.theta = theta_coefficients(omega, need);
    L.b = rs_coefficients(*L.f, L.theta, need);
    return L;
}

std::vector<double> prime_lambdas(const Eigenform& f, int64_t P) {
    std::vector<double> out(P + 1, 0.0);
    if (P <= f.n_max()) {
        for (int p : primes_upto(P)) out[p] = f.lambda[p];
        return out;
    }
    if (f.level == 1 && f.weight == 12) {
        const auto& t = delta_coefficients(P);
        for (int p : primes_upto(P)) out[p] = static_cast<double>(t[p]) / std::pow(static_cast<double>(p), 5.5);
        return out;
    }
    throw PreconditionError("prime_lambdas: eigenform known only up to " + std::to_string(f.n_max()));
}

DirichletValue dirichlet_eval(const RSLfunction& L, cplx s) {
    const double sigma = s.real();
    if (sigma < 1.5) throw DomainError("dirichlet_eval: requires Re s >= 3/2");
    constexpr int64_t kMaxP = int64_t(1) << 20;
    int64_t cap = L.f->n_max();
    if (L.f->level == 1 && L.f->weight == 12) cap = std::max<int64_t>(cap, kMaxP);
    cap = std::min(cap, kMaxP);
    auto rigorous = [&](double P) { return 1.26 * 4.01 * std::pow(P, 1.0 - sigma) / ((sigma - 1.0) * std::log(P)); };
    int64_t P = 1024;
    while (P < cap && rigorous(static_cast<double>(P)) > 1e-10) P *= 2;
    P = std::min(P, cap);
    const std::vector<double> lam = prime_lambdas(*L.f, P);
    const int64_t N = L.f->level;

    cplx logsum = 0.0;
    for (int p : primes_upto(P)) {
        const cplx X = std::exp(-s * std::log(static_cast<double>(p)));
        const LocalRoots r = theta_local_roots(L.theta.character, p);
        const cplx gs[2] = {r.g1, r.g2};
        for (const cplx& g : gs) {
            if (g == 0.0) continue;
            if (N % p == 0)
                logsum -= std::log(1.0 - lam[p] * g * X);
            else
                logsum -= std::log(1.0 - lam[p] * g * X + g * g * X * X);
        }
    }
    DirichletValue v;
    v.value = std::exp(logsum);
    const double Pd = static_cast<double>(P);
    const double delta = rigorous(Pd);
    v.error_bound = std::abs(v.value) * std::expm1(delta);
    v.error_heuristic = std::abs(v.value) * 4.0 * std::sqrt(std::pow(Pd, 1.0 - 2.0 * sigma) / ((2.0 * sigma - 1.0) * std::log(Pd)));
    v.prime_bound = P;
    return v;
}

DirichletValue dirichlet_partial_sum(const std::vector<cplx>& b, cplx s) {
    const double sigma = s.real();
    if (sigma <= 1.0) throw DomainError("dirichlet_partial_sum: requires Re s > 1");
    CompensatedSum<cplx> acc;
    bool any = false;
    for (size_t n = 1; n < b.size(); ++n) {
        if (b[n] == 0.0) continue;
        any = true;
        acc.add(b[n] * std::exp(-s * std::log(static_cast<double>(n))));
    }
    DirichletValue v;
    v.value = acc.value();
    if (!any) return v;
    // sum_{n <= x} d_4(n) <= x (log x + 3)^3 / 6, then partial summation
    const double M = static_cast<double>(b.size() - 1);
    const Quadrature q = composite_gl(std::log(std::max(M, 2.0)), std::log(std::max(M, 2.0)) + 80.0 / (sigma - 1.0), 40, 16);
    double tail = 0.0;
    for (size_t j = 0; j < q.x.size(); ++j) {
        const double lt = q.x[j];
        tail += q.w[j] * sigma / 6.0 * std::exp((1.0 - sigma) * lt) * std::pow(lt + 3.0, 3);
    }
    v.error_bound = tail;
    v.error_heuristic = tail;
    v.prime_bound = static_cast<int64_t>(M);
    return v;
}

AfeResult afe_eval(const RSLfunction& L, cplx s) { return afe_evaluate(L.b, L.gamma, L.conductor, L.root_number, s); }

AfeResult afe_central_value(const RSLfunction& L) {
    AfeResult r = afe_eval(L, 0.5);
    if (r.error_estimate > 1e-6 * std::max(1.0, std::abs(r.value)))
        throw AccuracyError("afe_central_value: achieved error " + std::to_string(r.error_estimate));
    return r;
}

SymSquareValue sym_square_at_1(const Eigenform& f) {
    if (f.level != 1) throw DomainError("sym_square_at_1: level one forms only");
    GammaFactor g;
    g.r_shifts = {1.0};
    g.c_shifts = {static_cast<double>(f.weight - 1)};
    const int64_t n = afe_length(g, 1.0, 1.0);
    const std::vector<double> lp = prime_lambdas(f, std::max<int64_t>(n, 2));

    // lambda(d^2) from Hecke relations at each prime power
    std::vector<double> lsq(n + 1, 1.0);
    const std::vector<int32_t> spf = spf_table(std::max<int64_t>(n, 2));
    for (int64_t d = 2; d <= n; ++d) {
        int64_t m = d;
        double v = 1.0;
        while (m > 1) {
            const int64_t p = spf[m];
            int e = 0;
            while (m % p == 0) m /= p, ++e;
            double a0 = 1.0, a1 = lp[p];
            for (int i = 1; i < 2 * e; ++i) {
                const double a2 = lp[p] * a1 - a0;
                a0 = a1;
                a1 = a2;
            }
            v *= a1;
        }
        lsq[d] = v;
    }
    std::vector<cplx> A(n + 1, 0.0);
    for (int64_t m = 1; m * m <= n; ++m)
        for (int64_t d = 1; d * m * m <= n; ++d) A[d * m * m] += lsq[d];
    const AfeResult r = afe_evaluate(A, g, 1.0, 1.0, 1.0);

    SymSquareValue out;
    out.value = r.value.real();
    out.error_estimate = r.error_estimate + std::abs(r.value.imag());
    out.terms_used = r.terms_used;
    if (!(out.value > 0)) throw IntegrityError("sym_square_at_1: non-positive value");

    int64_t P = std::min<int64_t>(f.n_max(), int64_t(1) << 20);
    if (f.weight == 12) P = int64_t(1) << 20;
    const std::vector<double> le = prime_lambdas(f, P);
    double logp = 0.0;
    for (int p : primes_upto(P)) {
        const double x = 1.0 / p;
        const double l2 = le[p] * le[p];
        logp -= std::log1p(-x) + std::log(1.0 - (l2 - 2.0) * x + x * x);
    }
    out.euler_product = std::exp(logp);
    out.euler_prime_bound = P;
    return out;
}

CInfinity c_infinity(ArchimedeanKind kind, int k, int k_pi, double t) {
    if (kind == ArchimedeanKind::Principal) {
        if (k < 0 || k % 2) throw DomainError("c_infinity: k must be even and non-negative");
        double v = std::pow(2.0 * kPi, k);
        for (int j = 0; j < k / 2; ++j) v /= 0.25 + t * t + j * (j + 1.0);
        return {v, v};
    }
    if (k < k_pi) throw DomainError("c_infinity: k must be at least k_pi");
    if (k % 2 || k_pi % 2) throw DomainError("c_infinity: weights must be even");
    const double l2p = std::log(2.0 * kPi);
    CInfinity c;
    c.variantA = std::exp((k - k_pi) * l2p + std::lgamma(k_pi + 1.0) - std::lgamma(0.5 * (k + 2)) -
                          log_beta(0.5 * (k + k_pi), 0.5 * (k - k_pi + 2)));
    // Gamma((k-2)/2) has a pole at k = 2
    c.variantB = k == 2 ? 0.0
                        : std::exp((k - k_pi - 1) * l2p + std::lgamma(static_cast<double>(k_pi)) -
                                   std::lgamma(0.5 * (k - 2)) - log_beta(0.5 * (k + k_pi + 1), 0.5 * (k - k_pi + 1)));
    return c;
}

}  // namespace artifact
