#include "artifact/modforms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <future>
#include <map>
#include <mutex>
#include <sstream>

#include "artifact/errors.hpp"
#include "artifact/lfun.hpp"

namespace artifact {

namespace {

// ---- exact Delta expansion: q * S(q)^8, S = prod (1 - q^n)^3 = sum (-1)^m (2m+1) q^{m(m+1)/2}

struct NttPrime {
    uint32_t p;
    uint32_t g;
};
constexpr NttPrime kNttPrimes[] = {
    {998244353u, 3u}, {754974721u, 11u}, {167772161u, 3u}, {469762049u, 3u}, {2013265921u, 31u},
};

uint64_t pw(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

// 32-bit Montgomery arithmetic modulo P (R = 2^32).
template <uint32_t P>
struct Mont {
    static constexpr uint32_t inv_neg() {
        uint32_t x = P;
        for (int i = 0; i < 5; ++i) x *= 2u - P * x;
        return static_cast<uint32_t>(0u - x);
    }
    static constexpr uint32_t kNInv = inv_neg();
    static constexpr uint64_t kR2 = (static_cast<unsigned __int128>(1) << 64) % P;

    static uint32_t reduce(uint64_t t) {
        const uint32_t m = static_cast<uint32_t>(t) * kNInv;
        const uint64_t u = (t + static_cast<uint64_t>(m) * P) >> 32;
        return static_cast<uint32_t>(u >= P ? u - P : u);
    }
    static uint32_t mul(uint32_t a, uint32_t b) { return reduce(static_cast<uint64_t>(a) * b); }
    static uint32_t to(uint32_t x) { return reduce(static_cast<uint64_t>(x) * kR2); }
    static uint32_t from(uint32_t x) { return reduce(x); }
};

template <uint32_t P, uint32_t G>
void ntt(std::vector<uint32_t>& a, bool invert) {
    using M = Mont<P>;
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<uint32_t> ws(n / 2);
    for (size_t len = 2; len <= n; len <<= 1) {
        uint64_t w = pw(G, (P - 1) / len, P);
        if (invert) w = pw(w, P - 2, P);
        const size_t half = len / 2;
        const uint32_t wm = M::to(static_cast<uint32_t>(w));
        ws[0] = M::to(1);
        for (size_t k = 1; k < half; ++k) ws[k] = M::mul(ws[k - 1], wm);
        for (size_t i = 0; i < n; i += len) {
            uint32_t* lo = a.data() + i;
            uint32_t* hi = lo + half;
            for (size_t k = 0; k < half; ++k) {
                const uint32_t u = lo[k];
                const uint32_t v = M::mul(hi[k], ws[k]);
                lo[k] = u + v >= P ? u + v - P : u + v;
                hi[k] = u >= v ? u - v : u + P - v;
            }
        }
    }
    if (invert) {
        const uint32_t inv = M::to(static_cast<uint32_t>(pw(n, P - 2, P)));
        for (auto& x : a) x = M::mul(x, inv);
    }
}

// Coefficients 0..L-1 of S^8 mod P.
template <uint32_t P, uint32_t G>
std::vector<uint32_t> s8_mod(size_t L) {
    using M = Mont<P>;
    std::vector<uint32_t> s(L, 0);
    for (int64_t m = 0;; ++m) {
        const int64_t e = m * (m + 1) / 2;
        if (e >= static_cast<int64_t>(L)) break;
        const int64_t c = (m % 2 ? -1 : 1) * (2 * m + 1);
        s[e] = M::to(static_cast<uint32_t>(mod_floor(c, static_cast<int64_t>(P))));
    }
    size_t n = 1;
    while (n < 2 * L) n <<= 1;
    for (int r = 0; r < 3; ++r) {
        s.resize(n, 0);
        ntt<P, G>(s, false);
        for (auto& x : s) x = M::mul(x, x);
        ntt<P, G>(s, true);
        s.resize(L);
    }
    for (auto& x : s) x = M::from(x);
    return s;
}

std::vector<i128> compute_delta(int64_t n_max) {
    const size_t L = static_cast<size_t>(n_max);
    constexpr int kPrimes = 5;
    auto f0 = std::async(std::launch::async, s8_mod<kNttPrimes[0].p, kNttPrimes[0].g>, L);
    auto f1 = std::async(std::launch::async, s8_mod<kNttPrimes[1].p, kNttPrimes[1].g>, L);
    auto f2 = std::async(std::launch::async, s8_mod<kNttPrimes[2].p, kNttPrimes[2].g>, L);
    auto f3 = std::async(std::launch::async, s8_mod<kNttPrimes[3].p, kNttPrimes[3].g>, L);
    std::vector<std::vector<uint32_t>> res(kPrimes);
    res[4] = s8_mod<kNttPrimes[4].p, kNttPrimes[4].g>(L);
    res[0] = f0.get();
    res[1] = f1.get();
    res[2] = f2.get();
    res[3] = f3.get();
    // Garner reconstruction of x + 2^120, then shift back
    const i128 offset = static_cast<i128>(1) << 120;
    std::vector<uint64_t> off_mod(kPrimes);
    for (int i = 0; i < kPrimes; ++i) off_mod[i] = static_cast<uint64_t>(offset % kNttPrimes[i].p);
    std::vector<std::vector<uint64_t>> inv(kPrimes, std::vector<uint64_t>(kPrimes, 0));
    for (int i = 0; i < kPrimes; ++i)
        for (int j = 0; j < i; ++j) inv[j][i] = pw(kNttPrimes[j].p % kNttPrimes[i].p, kNttPrimes[i].p - 2, kNttPrimes[i].p);

    std::vector<i128> tau(n_max + 1, 0);
    for (size_t n = 0; n < L; ++n) {
        uint64_t c[kPrimes];
        for (int i = 0; i < kPrimes; ++i) {
            const uint64_t p = kNttPrimes[i].p;
            uint64_t v = (res[i][n] + off_mod[i]) % p;
            for (int j = 0; j < i; ++j) v = (v + p - c[j] % p) % p * inv[j][i] % p;
            c[i] = v;
        }
        unsigned __int128 x = 0, radix = 1;
        for (int i = 0; i < kPrimes; ++i) {
            x += radix * c[i];
            radix *= kNttPrimes[i].p;
        }
        tau[n + 1] = static_cast<i128>(x) - offset;
    }
    return tau;
}

mpz_class to_mpz(i128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi = static_cast<unsigned long>(static_cast<uint64_t>(u >> 64));
    mpz_class lo = static_cast<unsigned long>(static_cast<uint64_t>(u));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

const std::vector<i128>& delta_coefficients(int64_t n_max) {
    static std::mutex mu;
    static std::vector<i128> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (n_max < 1) throw DomainError("delta_coefficients: n_max must be >= 1");
    if (n_max > (int64_t(1) << 21)) throw DomainError("delta_coefficients: n_max above 2^21 is not supported");
    if (static_cast<int64_t>(cache.size()) <= n_max) {
        int64_t target = 1024;
        while (target < n_max) target *= 2;
        cache = compute_delta(target);
    }
    return cache;
}

std::vector<mpz_class> delta_qexp(int64_t n_max) {
    const auto& t = delta_coefficients(n_max);
    std::vector<mpz_class> out(n_max + 1);
    for (int64_t n = 0; n <= n_max; ++n) out[n] = to_mpz(t[n]);
    return out;
}

std::vector<mpz_class> eisenstein_qexp(int k, int64_t n_max) {
    long c;
    switch (k) {
        case 4: c = 240; break;
        case 6: c = -504; break;
        case 8: c = 480; break;
        case 10: c = -264; break;
        case 14: c = -24; break;
        default: throw DomainError("eisenstein_qexp: weight " + std::to_string(k) + " not supported");
    }
    std::vector<mpz_class> sigma(n_max + 1, 0);
    for (int64_t d = 1; d <= n_max; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
        for (int64_t m = d; m <= n_max; m += d) sigma[m] += dk;
    }
    std::vector<mpz_class> e(n_max + 1);
    e[0] = 1;
    for (int64_t n = 1; n <= n_max; ++n) e[n] = c * sigma[n];
    return e;
}

double Eigenform::raw(int64_t n) const {
    if (n < static_cast<int64_t>(a.size())) return a[n].get_d();
    return lambda.at(n) * std::pow(static_cast<double>(n), 0.5 * (weight - 1));
}

Eigenform delta_eigenform(int64_t n_max) {
    constexpr int64_t kExactCap = 20000;
    const auto& t = delta_coefficients(n_max);
    Eigenform f;
    f.weight = 12;
    f.name = "Delta";
    f.lambda.assign(n_max + 1, 0.0);
    for (int64_t n = 1; n <= n_max; ++n) f.lambda[n] = static_cast<double>(t[n]) / std::pow(static_cast<double>(n), 5.5);
    const int64_t ne = std::min(n_max, kExactCap);
    f.a.resize(ne + 1);
    for (int64_t n = 0; n <= ne; ++n) f.a[n] = to_mpz(t[n]);
    return f;
}

Eigenform level1_eigenform(int k, int64_t n_max) {
    if (k == 12) return delta_eigenform(n_max);
    if (k != 16 && k != 18 && k != 20 && k != 22 && k != 26)
        throw DomainError("level1_eigenform: weight " + std::to_string(k) + " is not a one-dimensional cusp space");
    const std::vector<mpz_class> tau = delta_qexp(n_max);
    const std::vector<mpz_class> e = eisenstein_qexp(k - 12, n_max);
    Eigenform f;
    f.weight = k;
    f.name = "Delta*E" + std::to_string(k - 12);
    f.a.assign(n_max + 1, 0);
    for (int64_t n = 1; n <= n_max; ++n) {
        mpz_class s = 0;
        for (int64_t m = 1; m <= n; ++m) s += tau[m] * e[n - m];
        f.a[n] = s;
    }
    f.lambda.assign(n_max + 1, 0.0);
    for (int64_t n = 1; n <= n_max; ++n)
        f.lambda[n] = f.a[n].get_d() / std::pow(static_cast<double>(n), 0.5 * (k - 1));
    return f;
}

Eigenform load_eigenform(const std::string& path, int weight, int64_t level) {
    std::ifstream in(path);
    if (!in) throw DomainError("load_eigenform: cannot open " + path);
    std::map<int64_t, mpz_class> coeffs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        int64_t n;
        std::string v;
        if (!(ss >> n >> v) || n < 1) throw DomainError("load_eigenform: malformed line '" + line + "'");
        coeffs[n] = mpz_class(v);
    }
    if (coeffs.empty()) throw DomainError("load_eigenform: empty file");
    const int64_t M = coeffs.rbegin()->first;
    if (static_cast<int64_t>(coeffs.size()) != M) throw DomainError("load_eigenform: coefficients must be contiguous from n = 1");
    if (coeffs[1] != 1) throw DomainError("load_eigenform: a(1) must be 1");
    for (int64_t m = 2; m <= M; ++m)
        for (int64_t n = m + 1; m * n <= M; ++n)
            if (gcd64(m, n) == 1 && coeffs[m] * coeffs[n] != coeffs[m * n])
                throw DomainError("load_eigenform: a(" + std::to_string(m * n) + ") is not multiplicative");
    Eigenform f;
    f.weight = weight;
    f.level = level;
    f.name = path;
    f.a.assign(M + 1, 0);
    f.lambda.assign(M + 1, 0.0);
    for (auto& [n, v] : coeffs) {
        f.a[n] = v;
        f.lambda[n] = v.get_d() / std::pow(static_cast<double>(n), 0.5 * (weight - 1));
    }
    return f;
}

double multiplicativity_defect(const Eigenform& f, int64_t bound) {
    bound = std::min(bound, f.n_max());
    double worst = 0.0;
    for (int64_t m = 2; m <= bound; ++m)
        for (int64_t n = m + 1; m * n <= bound; ++n)
            if (gcd64(m, n) == 1) worst = std::max(worst, std::abs(f.lambda[m] * f.lambda[n] - f.lambda[m * n]));
    return worst;
}

// ---------------------------------------------------------------- q-series

QSeries to_qseries(const Eigenform& f, double scale) {
    QSeries q;
    q.weight = f.weight;
    q.scale = scale;
    const int64_t n = std::min<int64_t>(f.n_max(), 2000);
    q.a.assign(n + 1, 0.0);
    for (int64_t i = 1; i <= n; ++i) q.a[i] = f.raw(i);
    return q;
}

QSeries conj(QSeries f) {
    f.conjugated = !f.conjugated;
    return f;
}

QSeries multiply(const QSeries& f, const QSeries& g) {
    if (f.conjugated || g.conjugated) throw DomainError("multiply: conjugated series are not holomorphic");
    QSeries h;
    h.weight = f.weight + g.weight;
    h.scale = f.scale * g.scale;
    const size_t n = std::min(f.a.size(), g.a.size());
    h.a.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; i + j < n; ++j) h.a[i + j] += f.a[i] * g.a[j];
    return h;
}

PointEval evaluate_series(const QSeries& f, cplx z, double rel_tol) {
    const double y = z.imag();
    if (y <= 0) throw DomainError("evaluate_series: Im z must be positive");
    const double r = std::exp(-2.0 * kPi * y);
    // |a(n)| <= C n^e, constants fitted on the stored coefficients
    const double e = f.weight;
    double C = 0.0;
    for (size_t n = 1; n < f.a.size(); ++n) C = std::max(C, std::abs(f.a[n]) / std::pow(static_cast<double>(n), e));
    double lead = std::abs(f.a.empty() ? 0.0 : f.a[0]);
    for (size_t n = 1; n < f.a.size() && lead == 0.0; ++n)
        if (f.a[n] != 0.0) lead = std::abs(f.a[n]) * std::pow(r, static_cast<double>(n));
    if (lead == 0.0) return {0.0, 0.0, 0};

    const cplx q = std::polar(r, 2.0 * kPi * z.real());
    cplx sum = f.a[0];
    cplx qn = 1.0;
    int64_t M = 0;
    double tail = 0.0;
    for (int64_t n = 1;; ++n) {
        if (n >= static_cast<int64_t>(f.a.size())) throw AccuracyError("evaluate_series: not enough coefficients at this height");
        qn *= q;
        sum += f.a[n] * qn;
        M = n;
        const double ratio = r * std::pow((n + 2.0) / (n + 1.0), e);
        if (ratio < 1.0) {
            tail = C * std::pow(n + 1.0, e) * std::pow(r, n + 1.0) / (1.0 - ratio);
            if (tail < rel_tol * lead) break;
        }
    }
    const double yk = std::pow(y, 0.5 * f.weight);
    cplx v = f.scale * yk * sum;
    if (f.conjugated) v = std::conj(v);
    return {v, std::abs(f.scale) * yk * tail, static_cast<int>(M)};
}

FundamentalReduction to_fundamental_domain(cplx z) {
    if (z.imag() <= 0) throw DomainError("to_fundamental_domain: Im z must be positive");
    cplx j = 1.0;
    for (int it = 0; it < 10000; ++it) {
        z -= std::round(z.real());
        if (std::norm(z) < 1.0 - 1e-15) {
            j *= z / std::abs(z);
            z = -1.0 / z;
        } else {
            return {z, j};
        }
    }
    throw AccuracyError("to_fundamental_domain: no convergence");
}

cplx evaluate(const QSeries& f, cplx z) {
    const FundamentalReduction r = to_fundamental_domain(z);
    const cplx v = evaluate_series(f, r.w).value;
    return std::pow(std::conj(r.j), f.invariant_weight()) * v;
}

cplx evaluate_at_form(const QSeries& f, const QuadForm& q) {
    const Reduction red = reduce(q);
    const double sd = std::sqrt(static_cast<double>(-q.disc()));
    const cplx z(-0.5 * q.b / static_cast<double>(q.a), 0.5 * sd / static_cast<double>(q.a));
    const cplx w(-0.5 * red.form.b / static_cast<double>(red.form.a), 0.5 * sd / static_cast<double>(red.form.a));
    // w = M^{-1} z, M^{-1} = (m22, -m12; -m21, m11)
    cplx j = -static_cast<double>(red.transform.m21) * z + static_cast<double>(red.transform.m11);
    j /= std::abs(j);
    const cplx v = evaluate_series(f, w).value;
    return std::pow(std::conj(j), f.invariant_weight()) * v;
}

// ---------------------------------------------------------------- Whittaker

double generalized_laguerre(int m, double alpha, double x) {
    if (m == 0) return 1.0;
    double l0 = 1.0, l1 = 1.0 + alpha - x;
    for (int n = 1; n < m; ++n) {
        const double l2 = ((2.0 * n + 1.0 + alpha - x) * l1 - (n + alpha) * l0) / (n + 1.0);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

WhittakerEval whittaker_closed_form(double kappa, cplx mu, double y) {
    const double mm = kappa - mu.real() - 0.5;
    const int m = static_cast<int>(std::llround(mm));
    if (std::abs(mu.imag()) > 0 || std::abs(mm - m) > 1e-12 || m < 0)
        throw DomainError("whittaker_closed_form: requires kappa - mu - 1/2 in Z_{>=0}");
    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    const double mur = mu.real();
    const double v = std::exp(-0.5 * y + (mur + 0.5) * std::log(y)) * (m % 2 ? -1.0 : 1.0) * fact *
                     generalized_laguerre(m, 2.0 * mur, y);
    WhittakerEval w{kappa, mu, y, v, 4e-16 * (m + 1) * std::abs(v), WhittakerMethod::ClosedForm};
    return w;
}

WhittakerEval whittaker_asymptotic(double kappa, cplx mu, double y, int max_terms) {
    cplx sum = 1.0, term = 1.0;
    double smallest = 1.0;
    const cplx mu2 = mu * mu;
    for (int n = 1; n <= max_terms; ++n) {
        const double c = kappa - n + 0.5;
        const cplx next = term * (mu2 - c * c) / (n * y);
        if (std::abs(next) >= smallest) break;  // divergence sets in
        term = next;
        smallest = std::abs(term);
        sum += term;
        if (smallest < 1e-17) break;
    }
    const double pref = std::exp(-0.5 * y + kappa * std::log(y));
    WhittakerEval w{kappa, mu, y, pref * sum, pref * smallest + 1e-16 * pref * std::abs(sum), WhittakerMethod::Asymptotic};
    return w;
}

namespace {

// Gamma(a) U(a, b, z) = int_0^inf e^{-z t} t^{a-1} (1+t)^{b-a-1} dt, Re a > 0, via exp-sinh.
template <class R>
std::pair<std::complex<R>, R> gamma_u_integral(std::complex<R> a, std::complex<R> b, R z, R tol) {
    using C = std::complex<R>;
    const C c = b - a - R(1);
    const R half_pi = R(0.5) * static_cast<R>(kPi);
    auto g = [&](R s) -> C {
        const R t = std::exp(half_pi * std::sinh(s));
        if (t == R(0) || !std::isfinite(static_cast<double>(t))) return C(0);
        const R jac = half_pi * std::cosh(s) * t;
        const R lt = std::log(t);
        const C lv = -z * t + (a - R(1)) * lt + c * std::log1p(t);
        if (lv.real() < R(-11000)) return C(0);
        return std::exp(lv) * jac;
    };
    R h = 0.5;
    C prev = 0;
    for (int level = 0; level < 14; ++level) {
        C acc = 0, comp = 0;
        R mass = 0;
        const int kmax = static_cast<int>(6.5 / static_cast<double>(h));
        for (int k = -kmax; k <= kmax; ++k) {
            // Kahan summation
            const C v = g(k * h);
            mass += std::abs(v);
            const C y = v - comp;
            const C t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        const C cur = acc * h;
        // oscillating integrands (complex a) cancel; rounding then floors the attainable accuracy
        const R floor = R(32) * std::numeric_limits<R>::epsilon() * mass * h;
        const R diff = std::abs(cur - prev);
        if (level > 0 && diff <= std::max(tol * std::abs(cur), floor)) return {cur, std::max(diff, floor)};
        prev = cur;
        h *= R(0.5);
    }
    throw AccuracyError("whittaker_quadrature: integral did not converge");
}

}  // namespace

WhittakerEval whittaker_quadrature(double kappa, cplx mu, double y) {
    if (y <= 0) throw DomainError("whittaker: y must be positive");
    const cplx a = 0.5 + mu - kappa;
    const cplx b = 1.0 + 2.0 * mu;
    cplx U;
    double relerr;
    if (a.real() > 0.25) {
        auto [I, err] = gamma_u_integral<double>(a, b, y, 1e-14);
        U = I * std::exp(-lgamma_c(a));
        relerr = err / std::abs(I);
    } else {
        // Backward recurrence U(a-1) = -(b - 2a - z) U(a) - a (a - b + 1) U(a+1) on Gamma(a1) U,
        // in extended precision since the two terms nearly cancel.
        using LC = std::complex<long double>;
        const int N = static_cast<int>(std::ceil(0.25 - a.real()));
        const LC al(a.real(), a.imag()), bl(b.real(), b.imag());
        const LC a1 = al + static_cast<long double>(N), a2 = a1 + 1.0L;
        auto [I1, e1] = gamma_u_integral<long double>(a1, bl, y, 1e-18L);
        auto [I2, e2] = gamma_u_integral<long double>(a2, bl, y, 1e-18L);
        LC v_hi = I2 / a1;
        LC v = I1;
        long double growth = 1.0L;
        LC aa = a1;
        for (int step = 0; step < N; ++step) {
            const LC t1 = -(bl - 2.0L * aa - static_cast<long double>(y)) * v;
            const LC t2 = -aa * (aa - bl + 1.0L) * v_hi;
            const LC v_lo = t1 + t2;
            growth = std::max(growth, (std::abs(t1) + std::abs(t2)) / std::max(std::abs(v_lo), 1e-300L));
            v_hi = v;
            v = v_lo;
            aa -= 1.0L;
        }
        const cplx g1 = std::exp(-lgamma_c(cplx(static_cast<double>(a1.real()), static_cast<double>(a1.imag()))));
        U = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag())) * g1;
        relerr = static_cast<double>(growth * (e1 / std::abs(I1) + e2 / std::abs(I2) + 1e-19L)) + 2e-16;
    }
    const cplx pref = std::exp(-0.5 * y + (mu + 0.5) * std::log(y));
    const cplx v = pref * U;
    return {kappa, mu, y, v, relerr * std::abs(v) + 1e-15 * std::abs(v), WhittakerMethod::Quadrature};
}

WhittakerEval whittaker_bessel(cplx mu, double y) {
    if (y <= 0) throw DomainError("whittaker_bessel: y must be positive");
    const double x = 0.5 * y;
    auto f = [&](double u) -> cplx {
        const double e = -x * std::cosh(u);
        if (e < -745.0) return 0.0;
        return std::exp(e) * std::cosh(mu * u);
    };
    double h = 0.25;
    cplx prev = 0.0;
    for (int level = 0; level < 14; ++level) {
        CompensatedSum<cplx> s;
        s.add(0.5 * f(0.0));
        for (int k = 1;; ++k) {
            const cplx v = f(k * h);
            s.add(v);
            if (std::abs(v) < 1e-300 || (k * h > 1.0 && std::abs(v) < 1e-20 * std::abs(s.value()))) break;
        }
        const cplx cur = s.value() * h;
        if (level > 0 && std::abs(cur - prev) <= 1e-14 * std::abs(cur)) {
            const cplx v = std::sqrt(y / kPi) * cur;
            return {0.0, mu, y, v, std::sqrt(y / kPi) * std::abs(cur - prev) + 1e-15 * std::abs(v), WhittakerMethod::Bessel};
        }
        prev = cur;
        h *= 0.5;
    }
    throw AccuracyError("whittaker_bessel: no convergence");
}

WhittakerEval whittaker(double kappa, cplx mu, double y) {
    if (y <= 0) throw DomainError("whittaker: y must be positive");
    const double mm = kappa - mu.real() - 0.5;
    if (mu.imag() == 0.0 && mm > -0.5 && std::abs(mm - std::llround(mm)) < 1e-12) return whittaker_closed_form(kappa, mu, y);
    if (mu.imag() == 0.0 && -mm > -0.5 + 1.0 && std::abs(mm - std::llround(mm)) < 1e-12 && kappa + mu.real() - 0.5 >= 0) {
        // W is even in mu
        const double m2 = kappa + mu.real() - 0.5;
        if (std::abs(m2 - std::llround(m2)) < 1e-12) return whittaker_closed_form(kappa, -mu, y);
    }
    const double thresh = std::pow(std::abs(mu) + std::abs(2.0 * kappa) + 1.0, 2);
    if (y > thresh) {
        WhittakerEval w = whittaker_asymptotic(kappa, mu, y);
        if (w.error_bound <= 1e-10 * std::abs(w.value)) return w;
    }
    WhittakerEval w = whittaker_quadrature(kappa, mu, y);
    if (w.error_bound > 1e-8 * std::abs(w.value) && std::abs(w.value) > 0)
        throw AccuracyError("whittaker: accuracy 1e-8 not reached");
    return w;
}

cplx whittaker_cal(int k, cplx s, cplx z) {
    if (k < 0 || k % 2 != 0) throw DomainError("whittaker_cal: k must be even and non-negative");
    if (z.imag() <= 0) throw DomainError("whittaker_cal: Im z must be positive");
    const double sign = (k / 2) % 2 ? -1.0 : 1.0;
    return sign * whittaker(0.5 * k, s, z.imag()).value * std::polar(1.0, 0.5 * z.real());
}

// ---------------------------------------------------------------- raising

cplx raising_norm_factor(int k, cplx t, int steps) {
    cplx p = 1.0;
    for (int j = 0; j < steps; ++j) {
        const double A = 0.5 * (k + 2 * j + 1);
        p *= (A + cplx(0, 1) * t) * (A - cplx(0, 1) * t);
    }
    return p;
}

RaisedForm raised_form(const Eigenform& f) {
    RaisedForm rf;
    rf.base = &f;
    rf.weight = f.weight;
    const double sign = (f.weight / 2) % 2 ? -1.0 : 1.0;
    rf.normalization = sign * std::pow(4.0 * kPi, -0.5 * f.weight);
    rf.norm_multiplier = 1.0;
    return rf;
}

RaisedForm raising_apply(const RaisedForm& rf, int steps) {
    if (steps < 0) throw DomainError("raising_apply: steps must be non-negative");
    RaisedForm out = rf;
    out.weight = rf.weight + 2 * steps;
    out.norm_multiplier = rf.norm_multiplier * raising_norm_factor(rf.weight, rf.base->spectral_parameter(), steps).real();
    return out;
}

cplx evaluate_raised(const RaisedForm& rf, cplx z) {
    const FundamentalReduction red = to_fundamental_domain(z);
    const cplx w = red.w;
    const Eigenform& f = *rf.base;
    const double s = 0.5 * (f.weight - 1);
    CompensatedSum<cplx> sum;
    for (int64_t n = 1; n <= f.n_max(); ++n) {
        const double Y = 4.0 * kPi * n * w.imag();
        if (Y > 60.0 + 2.0 * rf.weight && n > 3) break;
        sum.add(f.lambda[n] / std::sqrt(static_cast<double>(n)) * whittaker_cal(rf.weight, s, 4.0 * kPi * static_cast<double>(n) * w));
    }
    return std::pow(std::conj(red.j), rf.weight) * rf.normalization * sum.value();
}

// ---------------------------------------------------------------- Petersson norm

double petersson_quadrature(const std::function<cplx(cplx)>& phi, double y_max, int x_nodes, int y_panels) {
    const Quadrature& gx = gauss_legendre(x_nodes);
    CompensatedSum<double> total;
    for (int i = 0; i < x_nodes; ++i) {
        const double x = 0.5 * gx.x[i];
        const double wx = 0.5 * gx.w[i];
        const double y0 = std::sqrt(1.0 - x * x);
        const Quadrature qy = composite_gl(y0, y_max, y_panels, 16);
        double inner = 0.0;
        for (size_t j = 0; j < qy.x.size(); ++j) {
            const double y = qy.x[j];
            inner += qy.w[j] * std::norm(phi(cplx(x, y))) / (y * y);
        }
        total.add(wx * inner);
    }
    return total.value();
}

double petersson_norm_quadrature(const Eigenform& f) {
    const QSeries q = to_qseries(f);
    return petersson_quadrature([&](cplx z) { return evaluate_series(q, z).value; });
}

double petersson_norm_sym2(const Eigenform& f) {
    const int k = f.weight;
    const double L = sym_square_at_1(f).value;
    return std::exp(std::lgamma(k) + std::log(L) - (2.0 * k - 1.0) * std::log(2.0) - (k + 1.0) * std::log(kPi));
}

double petersson_norm(const Eigenform& f, double tol) {
    const double a = petersson_norm_quadrature(f);
    const double b = petersson_norm_sym2(f);
    if (std::abs(a - b) > tol * b)
        throw IntegrityError("petersson_norm: quadrature " + std::to_string(a) + " vs symmetric square " + std::to_string(b));
    return b;
}

}  // namespace artifact
