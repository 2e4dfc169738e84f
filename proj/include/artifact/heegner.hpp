#pragma once

#include <string>
#include <vector>

#include "artifact/hecke.hpp"
#include "artifact/qforms.hpp"

namespace artifact {

struct Orientation {
    int64_t N = 1;
    int64_t r = 1;  // r^2 = D mod 4N, taken mod 2N
};

struct HeegnerForm {
    QuadForm form;
    Orientation orientation;
};

struct HeegnerPoint {
    double x = 0.0;
    double y = 0.0;
    HeegnerForm source;

    cplx z() const { return {x, y}; }
};

struct OptimalEmbedding {
    Mat2 matrix;  // image of sqrt D
    QuadForm source;
};

struct RepresentativeEntry {
    int64_t p = 1;
    int64_t b = 0;
    HeegnerForm Q;
    int cls = 0;  // index in class_group(D)
};

struct ExplicitRepresentatives {
    int64_t D = 0;
    HeegnerForm base;
    std::vector<RepresentativeEntry> entries;  // entries[0] is the base itself
};

struct RealMat2 {
    double m11 = 1, m12 = 0, m21 = 0, m22 = 1;

    RealMat2 operator*(const RealMat2& o) const;
    double det() const { return m11 * m22 - m12 * m21; }
    cplx act(cplx z) const { return (m11 * z + m12) / (m21 * z + m22); }
};

// N square-free, every p | N split in K, gcd(D, 2N) = 1 for N > 1; throws PreconditionError otherwise.
void check_heegner_hypothesis(int64_t D, int64_t N);
std::vector<int64_t> orientations(int64_t D, int64_t N);
bool is_heegner_form(const QuadForm& q, const Orientation& o);

// Heegner form of level N and orientation r in the principal class, smallest a first.
HeegnerForm base_heegner_form(int64_t D, int64_t N, int64_t r, int64_t max_multiplier = 100000);
HeegnerPoint heegner_point(const HeegnerForm& Q);

// Q_i = [a p_i, b_i, c_i] for split primes p_i coprime to 2Na, one per ideal class.
ExplicitRepresentatives explicit_representatives(int64_t D, int64_t N, int64_t r, const HeegnerForm& base,
                                                 int64_t prime_bound = 10000000);

// The ideal [p, (-b_i + sqrt D)/2].
IdealHNF representative_prime(const ExplicitRepresentatives& rep, size_t i);

struct Lemma41Report {
    bool ok = true;
    bool exact_ideal_identity = true;  // [p, beta_i][a, beta] == [a p, beta_i] as modules
    std::vector<size_t> failing;
    std::vector<std::string> diagnostics;
};

Lemma41Report lemma41_report(const ExplicitRepresentatives& rep);
bool lemma41_check(const ExplicitRepresentatives& rep);

OptimalEmbedding embedding_matrix(const HeegnerForm& Q);
// Psi(x) at the real place for x in C, sqrt D -> i sqrt|D|.
RealMat2 embed_real(const HeegnerForm& Q, cplx x);
// (sqrt|D| / 2, -b / 2; 0, a): sends i to z_Q.
RealMat2 gamma_infinity(const HeegnerForm& Q);
// gamma_inf^{-1} Psi(e^{i theta}) gamma_inf, a rotation.
RealMat2 conjugated_embedding(const HeegnerForm& Q, double theta);

}  // namespace artifact
