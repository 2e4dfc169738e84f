#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace artifact {

// Q(x, y) = a x^2 + b x y + c y^2.
struct QuadForm {
    int64_t a = 0;
    int64_t b = 0;
    int64_t c = 0;

    int64_t disc() const;
    bool operator==(const QuadForm&) const = default;
    std::string str() const;
};

// Integer 2x2 matrix (m11 m12; m21 m22).
struct Mat2 {
    int64_t m11 = 1, m12 = 0, m21 = 0, m22 = 1;

    int64_t det() const;
    Mat2 operator*(const Mat2& o) const;
    bool operator==(const Mat2&) const = default;
};

// Substitution Q o M: (Q o M)(x, y) = Q(m11 x + m12 y, m21 x + m22 y).
QuadForm act(const QuadForm& q, const Mat2& m);

struct Reduction {
    QuadForm form;
    Mat2 transform;  // form == act(input, transform), det 1
};

bool is_fundamental(int64_t D);
bool is_reduced(const QuadForm& q);
void validate_form(const QuadForm& q);

Reduction reduce(const QuadForm& q);
QuadForm principal_form(int64_t D);
std::vector<QuadForm> enumerate_reduced(int64_t D);
// Reduced representative of the composed class.
QuadForm compose(const QuadForm& q1, const QuadForm& q2);
QuadForm inverse(const QuadForm& q);

struct ClassGroup {
    int64_t D = 0;
    std::vector<QuadForm> reduced_forms;
    std::vector<std::vector<int>> composition_table;
    int principal_index = 0;

    int h() const { return static_cast<int>(reduced_forms.size()); }
    // Index of the class of an arbitrary form of discriminant D.
    int index_of(const QuadForm& q) const;
    int index_of_reduced(const QuadForm& q) const;
    int inverse_index(int i) const;
    int mul(int i, int j) const { return composition_table[i][j]; }
};

// Builds and checks closure, identity and inverses. Associativity is left to tests.
ClassGroup class_group(int64_t D);
// Reduced forms only, no composition table (cheap, for scans).
ClassGroup class_group_light(int64_t D);

// Z-module n Z + (t + u w) Z inside O_K, w = (D + sqrt D) / 2.
// Normal form: n > 0, u > 0, 0 <= t < n; for ideals u | n and u | t.
struct IdealHNF {
    int64_t D = 0;
    int64_t n = 1;
    int64_t t = 0;
    int64_t u = 1;

    int64_t norm() const { return n * u; }
    bool operator==(const IdealHNF&) const = default;
    std::string str() const;
};

// Element x + y w of O_K.
struct KElt {
    int64_t x = 0;
    int64_t y = 0;
};

// Embedding with sqrt D -> +i sqrt|D|.
std::complex<double> embed(int64_t D, const KElt& e);
std::complex<double> omega(int64_t D);
__int128 kelt_norm(int64_t D, const KElt& e);

// [a, b, c] -> [a, (-b + sqrt D) / 2].
IdealHNF form_to_ideal(const QuadForm& q);
// Form of the primitive part of an ideal; b normalised to (-a, a].
QuadForm ideal_to_form(const IdealHNF& I);

}  // namespace artifact
