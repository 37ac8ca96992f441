#pragma once

#include "rograd/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rograd {

// Finite-rank algebra given by structure constants on a basis.
struct StructureAlgebra {
    BaseRing ring;
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<SVec> table;  // table[i*dim+j] = e_i e_j
    std::optional<SVec> unit;
    std::optional<Mat> involution;  // columns are images of basis vectors
    std::optional<Mat> norm_form;   // Gram matrix of the bilinear norm N(x, y)
    std::vector<IVec> degree;       // optional grading of the basis
    bool associative = false, alternative = false, commutative = false;

    const SVec& prod(int i, int j) const { return table[(size_t)i * dim + j]; }
    SVec mul(const SVec& a, const SVec& b) const;
    SVec bar(const SVec& a) const;
    Scalar norm(const SVec& a, const SVec& b) const;
    SVec one() const;
    // recompute the law flags and check unit / involution; throws on a bad unit or involution
    void finalize();
    json to_json() const;
};

StructureAlgebra matrix_algebra(int n, BaseRing R, bool transpose_involution = true);
StructureAlgebra split_octonions(BaseRing R);

SVec commutator(const StructureAlgebra& A, const SVec& a, const SVec& b);
SVec associator(const StructureAlgebra& A, const SVec& a, const SVec& b, const SVec& c);
Mat left_op(const StructureAlgebra& A, const SVec& a);
Mat right_op(const StructureAlgebra& A, const SVec& a);
bool is_derivation(const StructureAlgebra& A, const Mat& d);

// number of basis triples (a,b,c) violating one of
//   [L_a, L_b] = L_[a,b] - 2[L_a, R_b]        [R_a, R_b] = -R_[a,b] - 2[L_a, R_b]
//   [[L_a, R_b], L_c] = L_(a,b,c) - [L_[a,b], R_c]
//   [[L_a, R_b], R_c] = R_(a,b,c) + [R_[a,b], L_c]
long alternative_identity_violations(const StructureAlgebra& A);

// SD(a,b) = L_[a,b] - R_[a,b] - 3[L_a, R_b]
Mat standard_derivation(const StructureAlgebra& A, const SVec& a, const SVec& b);
// basis of the span of all SD(e_i, e_j)
std::vector<SVec> standard_derivation_span(const StructureAlgebra& A);

struct Triality {
    Mat t1, t2, t3;
    bool operator==(const Triality& o) const { return t1 == o.t1 && t2 == o.t2 && t3 == o.t3; }
};

Triality triality_add(const Triality& x, const Triality& y, const BaseRing& R);
Triality triality_scale(const Triality& x, const Scalar& s, const BaseRing& R);
Triality triality_bracket(const Triality& x, const Triality& y, const BaseRing& R);
// t1(ab) = t2(a)b + a t3(b) on all basis pairs
bool is_triality(const StructureAlgebra& A, const Triality& t);

Triality lambda_triality(const StructureAlgebra& A, const SVec& a);
Triality rho_triality(const StructureAlgebra& A, const SVec& b);
Triality sigma_triality(const StructureAlgebra& A, const SVec& a, const SVec& b);

// h(D, a, b) = (D, D, D) + lambda(a) - rho(b)
Triality triality_h(const StructureAlgebra& A, const Mat& d, const SVec& a, const SVec& b);
struct DerivationPair {
    Mat d;
    SVec a, b;
};
DerivationPair triality_h_inverse(const StructureAlgebra& A, const Triality& t);

// g1(a,b)c = 2(a,b,c) + L_{a b^ - b a^} c - R_{a^ b - b^ a} c
Mat g1_operator(const StructureAlgebra& A, const SVec& a, const SVec& b);
std::vector<SVec> g1_span(const StructureAlgebra& A);
// operators T with N(Tx, y) + N(x, Ty) = 0, as flattened matrices
std::vector<SVec> skew_operators(const StructureAlgebra& A);
bool is_skew(const StructureAlgebra& A, const Mat& t);

}
