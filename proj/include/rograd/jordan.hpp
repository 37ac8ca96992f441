#pragma once

#include "rograd/algebra.hpp"

#include <map>

namespace rograd {

// Jordan pair (V+, V-) on free modules. Side s = 0 is V+, s = 1 is V-.
struct JordanPair {
    BaseRing ring;
    std::string name;
    int dim[2] = {0, 0};
    std::vector<std::string> labels[2];
    // root part is negated on V-, auxiliary coordinates add up
    std::vector<IVec> degree[2];
    int root_coords = 0;  // leading degree coordinates in the root lattice
    // T[s][(i*dim[1-s] + j)*dim[s] + k] = {e_i f_j e_k}, e in V^s, f in V^-s
    std::vector<SVec> T[2];
    // Qd[s][i*dim[1-s] + j] = Q_{e_i} f_j
    std::vector<SVec> Qd[2];

    const SVec& t(int s, int i, int j, int k) const { return T[s][((size_t)i * dim[1 - s] + j) * dim[s] + k]; }
    const SVec& qd(int s, int i, int j) const { return Qd[s][(size_t)i * dim[1 - s] + j]; }
    SVec triple(int s, const SVec& x, const SVec& y, const SVec& z) const;
    // Q_x y = sum c_i^2 Q_{e_i} y + sum_{i<j} c_i c_j {e_i y e_j}
    SVec Q(int s, const SVec& x, const SVec& y) const;
    // D(x,y) on V^s
    Mat D(int s, const SVec& x, const SVec& y) const;
    // Q_x : V^-s -> V^s
    Mat Qop(int s, const SVec& x) const;
    json to_json() const;
};

// V+ = p x q matrices over D, V- = q x p; {xyz} = x(yz) + z(yx) and Q_x y = x(yx) on V+,
// {yxu} = (yx)u + (ux)y and Q_y x = (yx)y on V-
JordanPair rectangular_pair(int p, int q, const StructureAlgebra& D);
// index of E_rc d_k in V+ (side 0, p x q) or V- (side 1, q x p)
int rect_index(int p, int q, const StructureAlgebra& D, int side, int r, int c, int k);

// Unital Jordan algebra given by the circle product x o y (x o x = 2x^2).
struct JordanAlgebra {
    BaseRing ring;
    std::string name;
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<SVec> circ;  // circ[i*dim+j] = e_i o e_j
    SVec unit;
    std::vector<IVec> degree;
    int root_coords = 0;  // leading degree coordinates, negated on V- of pair()

    const SVec& c(int i, int j) const { return circ[(size_t)i * dim + j]; }
    SVec circle(const SVec& a, const SVec& b) const;
    Mat Lcirc(const SVec& a) const;
    // U_x y = 1/2 x o (x o y) - 1/4 (x o x) o y
    SVec U(const SVec& x, const SVec& y) const;
    // {abc} = 1/2 (a o (b o c) + c o (b o a) - b o (c o a))
    SVec triple(const SVec& a, const SVec& b, const SVec& c) const;
    // (J, J) with Q = U
    JordanPair pair() const;
    json to_json() const;
};

// H_n(D): d[ij] = d E_ij + d^ E_ji for i < j over a D-basis, h E_ii for a basis of symmetric h
JordanAlgebra hermitian_algebra(int n, const StructureAlgebra& D);
// matrix of entries in D for a hermitian basis vector, and back
struct HermitianCoords {
    int n = 0;
    const StructureAlgebra* D = nullptr;
    std::vector<SVec> sym;  // basis of symmetric elements
    int offdiag_index(int i, int j, int k) const;
    int diag_index(int i, int h) const;
};
HermitianCoords hermitian_coords(int n, const StructureAlgebra& D);
// d[ij] for i != j (d^[ji] when i > j), d[ii] for symmetric d
SVec hermitian_entry(const HermitianCoords& hc, int i, int j, const SVec& d);

// e_1..e_3, P_1(x_k), P_2(x_k), P_3(x_k) over the split octonions
JordanAlgebra albert_algebra(BaseRing R);
inline int albert_e(int i) { return i; }
inline int albert_p(int i, int k) { return 3 + 8 * i + k; }

struct PeirceDecomposition {
    int n = 0;
    std::map<std::pair<int, int>, std::vector<SVec>> spaces;  // keys i <= j
    long rule_violations = 0;
    std::vector<std::string> failures;
};

PeirceDecomposition peirce(const JordanAlgebra& J, const std::vector<SVec>& idempotents);

struct PairElement {
    SVec plus, minus;
};

struct PairPeirce {
    std::vector<SVec> V[3][2];  // V[i][s] = V_i(e)^s
    bool contains(int i, const PairElement& x, const BaseRing& R) const;
};

PairPeirce pair_idempotent_peirce(const JordanPair& V, const PairElement& e);

struct GridReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::map<IVec, std::vector<SVec>> joint[2];  // alpha -> V_alpha^s
};

// family[k] is the idempotent for R1[k]
GridReport verify_grid(const JordanPair& V, const std::vector<PairElement>& family, const RootSystem& R,
                       const std::vector<IVec>& R1);

// exhaustive check of JP1-JP3 with all linearizations on basis tuples
struct IdentityReport {
    long tuples = 0, violations = 0;
    std::vector<std::string> failures;
};
IdentityReport check_pair_identities(const JordanPair& V);

// Peirce-style grids used by the constructions
std::vector<PairElement> rectangular_grid(int p, int q, const StructureAlgebra& D, std::vector<IVec>& R1);
std::vector<PairElement> hermitian_grid(int n, const StructureAlgebra& D, std::vector<IVec>& R1);

}
