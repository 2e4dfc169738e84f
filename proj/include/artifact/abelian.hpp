#pragma once

#include <optional>
#include <vector>

#include "artifact/numeric.hpp"
#include "artifact/qforms.hpp"

namespace artifact {

// Z/d_1 x ... x Z/d_m with d_1 | d_2 | ... | d_m, each d_j >= 2.
// Elements are indexed 0..order()-1 in mixed radix, first coordinate fastest.
class FinAbGroup {
public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<int> divisors);

    const std::vector<int>& divisors() const { return divisors_; }
    int order() const { return order_; }
    int rank() const { return static_cast<int>(divisors_.size()); }
    int exponent() const { return divisors_.empty() ? 1 : divisors_.back(); }

    int index(const std::vector<int>& coords) const;
    std::vector<int> coords(int index) const;
    int add(int x, int y) const;
    int neg(int x) const;
    int sub(int x, int y) const { return add(x, neg(y)); }
    int identity() const { return 0; }

    std::string str() const;

private:
    std::vector<int> divisors_;
    int order_ = 1;
};

struct Character {
    std::vector<int> exponents;
};

// chi_e(g) = exp(2 pi i sum_j e_j g_j / d_j). Characters share the group's indexing.
cplx character_value(const FinAbGroup& G, int chi, int g);
cplx character_value(const FinAbGroup& G, const Character& chi, int g);
std::vector<Character> characters(const FinAbGroup& G);
// |G| x |G| table, rows = characters, columns = elements.
std::vector<std::vector<cplx>> character_table(const FinAbGroup& G);

struct Decomposition {
    FinAbGroup group;
    std::vector<int> to_class;   // group element index -> class index
    std::vector<int> to_group;   // class index -> group element index
    std::vector<int> generators; // class index of the j-th basis element
};

Decomposition decompose(const ClassGroup& cg);

// All abelian groups of order <= max_order (one per isomorphism type), trivial group included.
std::vector<FinAbGroup> all_abelian_groups(int max_order);

using GroupMap = std::vector<cplx>;  // values indexed by element

// Tuples (g_1, ..., g_n) with g_1 + ... + g_n = 0, lexicographic in the first n-1 entries.
class WideTuples {
public:
    WideTuples(int n, const FinAbGroup& G);
    bool next(std::vector<int>& out);
    long long count() const;

private:
    int n_;
    FinAbGroup G_;
    std::vector<int> free_;
    bool done_ = false;
};

// (g_1, h_1, ..., g_n, h_n) with g_i != h_i and sum g_i = sum h_i.
class DiagonalWideTuples {
public:
    DiagonalWideTuples(int n, const FinAbGroup& G);
    bool next(std::vector<int>& out);

private:
    int n_;
    FinAbGroup G_;
    std::vector<int> free_;
    bool done_ = false;
};

// L^(chi) = sum_g L(g) conj(chi(g)).
GroupMap fourier_transform(const FinAbGroup& G, const GroupMap& L);

cplx wide_moment_direct(const FinAbGroup& G, const std::vector<GroupMap>& maps);
cplx wide_moment_dual(const FinAbGroup& G, const std::vector<GroupMap>& maps);

struct IdentityCheck {
    cplx lhs;
    cplx rhs;
    bool agree = false;
    double rel_error = 0.0;
};

// Relative error against max(|lhs|, |rhs|, scale); scale covers identities whose sides cancel to 0.
IdentityCheck compare(cplx lhs, cplx rhs, double tol, double scale = 0.0);

// Inclusion-exclusion side vs the sum over Wide*(2n, dual G) of prod L^_i(chi_i) conj(L^_i(psi_i)).
IdentityCheck lemma61_check(const FinAbGroup& G, const std::vector<GroupMap>& maps, double tol = 1e-9);

std::optional<std::vector<int>> weak_nonvanishing_search(const FinAbGroup& G, const std::vector<GroupMap>& maps,
                                                         double threshold = 1e-14);

// Index-2 subgroup H = ker(g -> (-1)^{g_m}); L_1..L_{n-1} = 1_H, L_n = 1_{G \ H}.
std::vector<GroupMap> proposition2_counterexample(const FinAbGroup& G, int n);
std::vector<bool> index2_subgroup(const FinAbGroup& G);

}  // namespace artifact
