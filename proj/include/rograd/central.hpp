#pragma once

#include "rograd/degsums.hpp"
#include "rograd/lie.hpp"
#include "rograd/quotients.hpp"

namespace rograd {

// one degree block of (L ^ L) / B
struct UceBlock {
    IVec degree;                           // full degree of x_i ^ x_j
    std::vector<std::pair<int, int>> gens;  // i < j
    FPModule module;                       // generators with the B relations of this block
    SparseMatrix u;                        // row g = [x_i, x_j]
    ModuleNF quotient;                     // normal form of uce(L) in this block
    ModuleNF kernel;                       // ker u in this block
    long image_rank = 0;
};

struct Uce {
    const GradedLieAlgebra* L = nullptr;
    std::vector<UceBlock> blocks;  // sorted by degree
    long relations = 0;
    ModuleNF total;
};

// uce(L) = (L ^ L) / B blockwise; L must be perfect.
// ROGRAD_THREADS caps the number of blocks processed at once.
Uce uce(const GradedLieAlgebra& L);

// uce(L) as a Lie algebra with its covering map onto L (field only)
struct UceAlgebra {
    GradedLieAlgebra U;
    SparseMatrix cover;  // row i = image in L
    std::vector<std::pair<int, int>> basis_gens;
};
UceAlgebra uce_algebra(const GradedLieAlgebra& L);

struct ExtensionReport {
    std::string algebra;
    std::string ring;
    int dim = 0;
    ModuleNF total;
    std::map<IVec, ModuleNF> by_degree;      // root degree -> kernel block
    std::map<IVec, ModuleNF> uce_by_degree;  // root degree -> uce block
    std::set<IVec> support;
    std::map<IVec, std::string> classification;
    bool roots_bijective = true;
    bool torsion_law = true;
    std::vector<std::string> failures;

    json to_json() const;
    std::string table() const;
};

// kernel of u per root degree, classified against R
ExtensionReport kernel_report(const Uce& u, const RootSystem& R);

// L (+)_psi Z for the A2 (D_3 copies) or A3 (D_2 copies) cocycle on sl_K(D)
struct CocycleExtension {
    std::string kind;
    GradedLieAlgebra L;
    std::vector<IVec> copies;  // degenerate sums indexing the copies of D
    int ddim = 0;
    Span relations{BaseRing::Q()};  // relations of the value module, D_3 or D_2 in each copy
    std::vector<SVec> psi;          // psi[i*dim+j] in the free module on the copies
    long pairs = 0, triples = 0;
    long alternating_failures = 0, cocycle_failures = 0;
    std::map<IVec, bool> hits;  // projection from uce onto each copy is surjective
    std::map<IVec, ModuleNF> fiber;
    std::optional<GradedLieAlgebra> extension;  // field case

    bool ok() const;
    SVec value(int i, int j) const { return psi[(size_t)i * L.dim + j]; }
};

// kind "A2" uses K = 3, "A3" uses K = 4
CocycleExtension cocycle_extension(const std::string& kind, const StructureAlgebra& D);
// alternating and cocycle laws on all basis pairs and triples, modulo the relations
void verify_cocycle(CocycleExtension& E);

// ker ud_JA for H_n(D) with the D_0 restriction and, for n >= 4 and associative D,
// the explicit description by T(a,b) and the elements 1[1j]*c[1j]
struct StarKernel {
    StarModule S;
    ModuleNF hc;
    bool in_D0 = false;
    bool cross_checked = false;
    bool cross_check_ok = false;
    long described_dim = 0;
};

StarKernel star_kernel(int n, const StructureAlgebra& D);

}
