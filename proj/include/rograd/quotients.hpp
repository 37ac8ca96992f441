#pragma once

#include "rograd/algebra.hpp"

namespace rograd {

// Presented quotient measuring a central-extension kernel.
struct HomologyQuotient {
    std::string kind;  // D2, D3, AngleBracket, TildeWedge, HC1
    FPModule module;
    ModuleNF nf;
    std::vector<std::string> labels;  // generator labels
    json to_json() const;
};

// D / (2D, [D,D])
HomologyQuotient d2(const StructureAlgebra& D);
// D / (3D, D[D,D], (D,D,D), ((ad)c + a(dc) + a(cd))b)
HomologyQuotient d3(const StructureAlgebra& D);
// D (x) D / (a(x)b + b(x)a, ab(x)c + bc(x)a + ca(x)b); generator e_i(x)e_j at i*dim+j
HomologyQuotient angle(const StructureAlgebra& D);
// (D(x)D + D + D') / (a(x)b + b(x)a, ab(x)c + bc(x)a + ca(x)b - (a,b,c) - (a,b,c)')
// generators: tensors at i*dim+j, then D at dim^2 + k, then D' at dim^2 + dim + k
HomologyQuotient tilde_wedge(const StructureAlgebra& D);
// kernel of <D,D> -> D, <a,b> -> [a,b]
HomologyQuotient hc1(const StructureAlgebra& D);

// Kernel of the map M -> R^n induced by phi (row g = image of generator g); the
// relations of M must lie in the kernel of phi.
ModuleNF induced_kernel(const FPModule& M, const SparseMatrix& phi);

}
