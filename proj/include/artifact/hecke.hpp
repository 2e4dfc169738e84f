#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "artifact/abelian.hpp"
#include "artifact/numeric.hpp"
#include "artifact/qforms.hpp"

namespace artifact {

// Class group data shared by every character of one field.
struct Field {
    int64_t D = 0;
    ClassGroup cg;
    Decomposition dec;
    std::vector<IdealHNF> reduced_ideals;  // R_c = form_to_ideal(reduced form c)

    int h() const { return cg.h(); }
};

std::shared_ptr<const Field> make_field(int64_t D);

int kronecker_chi_K(int64_t D, int64_t n);

IdealHNF unit_ideal(int64_t D);
IdealHNF principal_ideal(int64_t D, const KElt& alpha);
IdealHNF ideal_mul(const IdealHNF& I, const IdealHNF& J);
IdealHNF ideal_conj(const IdealHNF& I);
int64_t ideal_norm(const IdealHNF& I);
bool ideal_contains(const IdealHNF& I, const KElt& alpha);
// Prime ideal [p, (-b + sqrt D)/2] above a split or ramified p (b chosen smallest non-negative).
IdealHNF prime_ideal_above(int64_t D, int64_t p);

// I = lambda * R_cls.
struct IdealReduction {
    int cls = 0;
    cplx lambda;
};
IdealReduction reduce_ideal(const Field& F, const IdealHNF& I);

// Generator alpha with (alpha) = I when I is principal; N(alpha) = N(I) is checked.
std::optional<KElt> is_principal_with_generator(const IdealHNF& I);

// Omega((alpha)) = (alpha/|alpha|)^{-k}; Omega(R_c) = class_values[c].
class HeckeCharacter {
public:
    std::shared_ptr<const Field> field;
    int k = 0;
    std::vector<IdealHNF> generator_ideals;
    std::vector<cplx> generator_values;
    Character class_character_twist;
    std::vector<cplx> class_values;

    cplx operator()(const IdealHNF& I) const;
    cplx on_principal(const KElt& alpha) const;
    cplx on_class_rep(int cls) const { return class_values[cls]; }
    int64_t disc() const { return field->D; }
};

cplx infinity_type_value(cplx alpha, int k);

HeckeCharacter base_hecke_character(std::shared_ptr<const Field> F, int k);
// Pointwise product with the class-group character indexed in F->dec.group.
HeckeCharacter twist(const HeckeCharacter& base, int chi);
HeckeCharacter twist(const HeckeCharacter& base, const Character& chi);
HeckeCharacter conjugate(const HeckeCharacter& omega);
HeckeCharacter product(const HeckeCharacter& a, const HeckeCharacter& b);
// True iff the character is identically 1 (k = 0 and all class values 1).
bool is_trivial(const HeckeCharacter& omega, double tol = 1e-10);

// Per-class ideal counts of norm n, indexed by class.
std::vector<int64_t> ideal_counts_by_class(const Field& F, int64_t n);
// Number of (x, y) with Q(x, y) = n.
int64_t representation_count(const QuadForm& q, int64_t n);

// Local roots of the theta series at p: L_p = 1 / ((1 - g1 X)(1 - g2 X)).
struct LocalRoots {
    cplx g1;
    cplx g2;
};
LocalRoots theta_local_roots(const HeckeCharacter& omega, int64_t p);

struct ThetaSeries {
    HeckeCharacter character;
    int weight = 1;          // k + 1
    int64_t level = 0;       // |D|
    std::vector<cplx> lambda;  // lambda[n], n = 0..n_max, lambda[0] unused
    bool cuspidal = true;

    int64_t n_max() const { return static_cast<int64_t>(lambda.size()) - 1; }
    int nebentypus(int64_t n) const { return kronecker_chi_K(character.disc(), n); }
    // a(n) = lambda(n) n^{k/2}
    cplx raw(int64_t n) const;
};

ThetaSeries theta_coefficients(const HeckeCharacter& omega, int64_t n_max);

}  // namespace artifact
