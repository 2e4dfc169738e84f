#include "artifact/numeric.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "artifact/errors.hpp"

namespace artifact {

namespace {

// B_{2j} / (2j (2j-1)) for j = 1..12.
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
};

cplx lgamma_stirling(cplx z) {
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx p = inv;
    for (double c : kStirling) {
        series += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

}  // namespace

cplx lgamma_c(cplx z) {
    if (z.real() < 0.5) {
        // reflection; branch of log(sin) chosen to keep the result continuous in Im z
        const cplx s = std::sin(kPi * z);
        return std::log(kPi) - std::log(s) - lgamma_c(1.0 - z);
    }
    cplx shift = 0.0;
    while (std::abs(z) < 18.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return lgamma_stirling(z) - shift;
}

cplx log_gamma_r(cplx s) { return -0.5 * s * std::log(kPi) + lgamma_c(0.5 * s); }

cplx log_gamma_c(cplx s) { return std::log(2.0) - s * std::log(2.0 * kPi) + lgamma_c(s); }

double log_beta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

const Quadrature& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, Quadrature> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Quadrature q;
    q.x.resize(n);
    q.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        q.x[i] = -x;
        q.x[n - 1 - i] = x;
        q.w[i] = q.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(q)).first->second;
}

Quadrature composite_gl(double a, double b, int panels, int order) {
    const Quadrature& base = gauss_legendre(order);
    Quadrature q;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (int i = 0; i < order; ++i) {
            q.x.push_back(lo + 0.5 * h * (base.x[i] + 1.0));
            q.w.push_back(0.5 * h * base.w[i]);
        }
    }
    return q;
}

std::vector<int> primes_upto(int64_t n) {
    std::vector<int> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (int64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<int>(i));
        for (int64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::vector<int32_t> spf_table(int64_t n) {
    std::vector<int32_t> spf(n + 1, 0);
    for (int64_t i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (int64_t j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = static_cast<int32_t>(i);
    }
    return spf;
}

int64_t gcd64(int64_t a, int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 ext_gcd(i128 a, i128 b, i128& x, i128& y) {
    i128 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i128 q = a / b;
        i128 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

int64_t mod_floor(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

i128 mod_floor(i128 a, i128 m) {
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

int64_t powmod(int64_t b, int64_t e, int64_t m) {
    i128 r = 1, x = mod_floor(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<int64_t>(r % m);
}

int64_t sqrt_mod_prime(int64_t a, int64_t p) {
    a = mod_floor(a, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return -1;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    int64_t q = p - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    int64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    int64_t m = s;
    i128 c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        int64_t i = 0;
        i128 tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        i128 b = c;
        for (int64_t j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return static_cast<int64_t>(r);
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    int64_t d = n - 1, s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i128 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int64_t r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<int64_t> prime_factors(int64_t n) {
    std::vector<int64_t> out;
    n = n < 0 ? -n : n;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_squarefree(int64_t n) {
    n = n < 0 ? -n : n;
    if (n == 0) return false;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        if (n % p == 0) n /= p;
    }
    return true;
}

int kronecker(int64_t d, int64_t n) {
    if (n <= 0) throw DomainError("kronecker: n must be positive");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (d % 2 == 0) return 0;
        const int64_t r = mod_floor(d, 8);
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol (d / n), n odd
    int64_t a = mod_floor(d, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace artifact
