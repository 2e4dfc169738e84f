#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace artifact {

using cplx = std::complex<double>;
using i128 = __int128;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Principal branch of log Gamma, accurate to ~1e-15 relative for Re z > 0.
cplx lgamma_c(cplx z);
inline cplx gamma_c(cplx z) { return std::exp(lgamma_c(z)); }

// log of Gamma_R(s) = pi^{-s/2} Gamma(s/2) and Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s).
cplx log_gamma_r(cplx s);
cplx log_gamma_c(cplx s);

double log_beta(double x, double y);

struct Quadrature {
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1, 1].
const Quadrature& gauss_legendre(int n);

// Composite Gauss-Legendre on [a, b] with `panels` panels of `order` points.
Quadrature composite_gl(double a, double b, int panels, int order);

std::vector<int> primes_upto(int64_t n);
// Smallest-prime-factor table on [0, n].
std::vector<int32_t> spf_table(int64_t n);

int64_t gcd64(int64_t a, int64_t b);
// Returns g = gcd(a, b) and sets x, y with a x + b y = g.
i128 ext_gcd(i128 a, i128 b, i128& x, i128& y);
int64_t mod_floor(int64_t a, int64_t m);
i128 mod_floor(i128 a, i128 m);
int64_t powmod(int64_t b, int64_t e, int64_t m);
// Square root of a mod an odd prime p; -1 if a is a non-residue.
int64_t sqrt_mod_prime(int64_t a, int64_t p);
bool is_prime(int64_t n);
bool is_squarefree(int64_t n);
std::vector<int64_t> prime_factors(int64_t n);

// Kronecker symbol (d / n) for n >= 1.
int kronecker(int64_t d, int64_t n);

// Neumaier-compensated accumulator; deterministic in insertion order.
template <class T>
class CompensatedSum {
public:
    void add(T v) {
        T t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

}  // namespace artifact
