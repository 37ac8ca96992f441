#pragma once

#include "rograd/jordan.hpp"
#include "rograd/roots.hpp"

#include <functional>
#include <map>

namespace rograd {

// Lie algebra on a free module with a basis of homogeneous elements.
struct GradedLieAlgebra {
    BaseRing ring;
    std::string name;
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<SVec> br;  // br[i*dim+j] = [x_i, x_j]
    std::vector<IVec> degree;
    int root_coords = 0;  // leading degree coordinates in Q(R)
    // optional faithful realization of the basis inside a larger module
    int real_dim = 0;
    std::vector<SVec> real;

    const SVec& b(int i, int j) const { return br[(size_t)i * dim + j]; }
    SVec bracket(const SVec& x, const SVec& y) const;
    // column j = [x, x_j]
    Mat ad(const SVec& x) const;
    IVec root_degree(int i) const;
    json to_json() const;
    std::string report() const;
};

struct LieCheck {
    long pairs = 0, triples = 0;
    long antisymmetry = 0, jacobi = 0, grading = 0;
    std::vector<std::string> failures;
    bool ok() const { return antisymmetry == 0 && jacobi == 0 && grading == 0; }
};

LieCheck check_lie(const GradedLieAlgebra& L);

struct LieStructure {
    bool jacobi_ok = false;
    bool is_perfect = false;
    long derived_rank = 0;
    std::vector<SVec> centre;  // basis over the fraction field
};

LieStructure structural_predicates(const GradedLieAlgebra& L);

using BracketFn = std::function<SVec(const SVec&, const SVec&)>;
// degree of an ambient coordinate
using CoordDegreeFn = std::function<IVec(int)>;

// Lie span of a set of elements of an ambient module, closed under a bracket.
// The basis is kept per degree block when the ambient module is graded.
struct OperatorLieAlgebra {
    BaseRing ring;
    int carrier = 0;  // ambient length
    std::vector<SVec> basis;
    std::vector<IVec> degree;
    bool graded = false;
    bool closed = false;
    int rounds = 0;
    std::map<IVec, Span> parts;
    std::map<IVec, int> offset;
    CoordDegreeFn coord_degree;
    BracketFn bracket;

    int dim() const { return (int)basis.size(); }
    // coordinates of an element of the span; throws if it is not in the span
    SVec coords(const SVec& v) const;
    bool contains(const SVec& v) const;
    GradedLieAlgebra lie(const std::string& name) const;
};

// closure by bracket-and-rank rounds until the span stops growing
OperatorLieAlgebra lie_closure(const BaseRing& R, int carrier, const std::vector<SVec>& gens, BracketFn br,
                               CoordDegreeFn deg = nullptr);

// flattened n x n operators
SVec op_mul(const SVec& a, const SVec& b, int n, const BaseRing& R);
SVec op_comm(const SVec& a, const SVec& b, int n, const BaseRing& R);
SVec op_flat(const Mat& m);

// delta(x, y) = (D_{x,y}, -D_{y,x}) on V+ (+) V-
SVec delta_op(const JordanPair& V, const SVec& x, const SVec& y);
OperatorLieAlgebra instr(const JordanPair& V);

// V+ (+) instr(V) (+) V-; degrees are the pair degrees followed by the Z-grading coordinate
GradedLieAlgebra tkk(const JordanPair& V);
GradedLieAlgebra tkk(const JordanPair& V, const OperatorLieAlgebra& I);

// V+ (x) V- modulo delta(x,y)(u(x)v) + delta(u,v)(x(x)y) and delta(x,y)(x(x)y)
struct UIDer {
    FPModule module;  // generator e_i <> f_j at i*dim[1] + j
    std::vector<IVec> gen_degree;
    SparseMatrix ud;  // row g = ud(generator g) in instr coordinates
    OperatorLieAlgebra inner;
    ModuleNF nf;
    ModuleNF hc;  // kernel of ud
    std::map<IVec, ModuleNF> hc_by_degree;
};

UIDer uider(const JordanPair& V);

// V+ (+) uider(V) (+) V- over a field, with the covering map onto tkk(V)
struct UTKK {
    GradedLieAlgebra L;
    GradedLieAlgebra target;
    SparseMatrix cover;  // row i = image of basis element i in target coordinates
    int kernel_dim = 0;
};

UTKK utkk(const JordanPair& V);

// K x K matrices over an associative unital D generated by E_ij D, i != j
GradedLieAlgebra sl_algebra(int K, const StructureAlgebra& D);

// J * J = J (x) J / (a*b + b*a, a*(bc) + b*(ca) + c*(ab)) over a field with 1/2
struct StarModule {
    BaseRing ring;
    int jdim = 0;
    std::vector<int> basis_gens;  // quotient basis, as generator indices i*jdim + j
    std::map<int, int> position;
    Span relations{BaseRing::Q()};
    std::vector<SVec> ud;  // ud(a*b) = 2[L_a, L_b] as flattened operators on J
    ModuleNF hc;
    std::vector<SVec> kernel;  // basis of ker ud in quotient coordinates

    int dim() const { return (int)basis_gens.size(); }
    // quotient coordinates of an element of J (x) J
    SVec reduce(const SVec& tensor) const;
    SVec star(const SVec& a, const SVec& b) const;
    GradedLieAlgebra lie(const JordanAlgebra& J) const;
};

StarModule star_module(const JordanAlgebra& J);

struct StarDecomposition {
    std::vector<SVec> D0, D;  // spans in J * J
    std::vector<SVec> D0_annihilator;  // {X : ud(X) e_i = 0 for all i}
    int ud_D = 0, ud_D0 = 0;
    bool direct = false;
    bool D0_matches = false;
    bool kernel_in_D0 = false;
    std::vector<SVec> ud_D0_ops;
};

StarDecomposition star_decomposition(const JordanAlgebra& J, const StarModule& S,
                                     const std::vector<SVec>& idempotents);

// span of [L_a, L_b], L_a x = ax
OperatorLieAlgebra ider(const JordanAlgebra& J);

// grid-derived Q(R) grading of tkk(V)
struct RootGrading {
    GradedLieAlgebra L;
    std::set<IVec> support;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

RootGrading assign_root_grading(const GradedLieAlgebra& tkkL, const JordanPair& V, const GridReport& grid,
                                const std::vector<PairElement>& family, const RootSystem& R,
                                const std::vector<IVec>& R1);

}
