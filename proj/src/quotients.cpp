#include "rograd/quotients.hpp"

namespace rograd {

namespace {

HomologyQuotient finish(std::string kind, const StructureAlgebra& D, int gens, std::vector<SVec> rels,
                        std::vector<std::string> labels)
{
    HomologyQuotient q;
    q.kind = std::move(kind);
    q.module.ring = D.ring;
    q.module.gens = gens;
    q.module.relations = SparseMatrix(0, gens);
    for (auto& r : rels)
        if (!r.empty()) q.module.relations.push_row(std::move(r));
    q.nf = module_invariants(q.module);
    q.labels = std::move(labels);
    return q;
}

std::vector<std::string> tensor_labels(const StructureAlgebra& D)
{
    std::vector<std::string> l;
    for (int i = 0; i < D.dim; ++i)
        for (int j = 0; j < D.dim; ++j) l.push_back(D.labels[i] + "(x)" + D.labels[j]);
    return l;
}

// sum over x (x) y terms
void add_tensor(SVec& out, const SVec& x, const SVec& y, int dim, const BaseRing& R)
{
    for (auto& [i, a] : x)
        for (auto& [j, b] : y) sv_axpy(out, a * b, sv_unit(i * dim + j), R);
}

// symmetric and cyclic relations on D (x) D
std::vector<SVec> angle_relations(const StructureAlgebra& D)
{
    int n = D.dim;
    const BaseRing& R = D.ring;
    std::vector<SVec> rels;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            SVec r;
            add_tensor(r, sv_unit(i), sv_unit(j), n, R);
            add_tensor(r, sv_unit(j), sv_unit(i), n, R);
            rels.push_back(r);
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                SVec r;
                add_tensor(r, D.prod(a, b), sv_unit(c), n, R);
                add_tensor(r, D.prod(b, c), sv_unit(a), n, R);
                add_tensor(r, D.prod(c, a), sv_unit(b), n, R);
                rels.push_back(r);
            }
    return rels;
}

}

json HomologyQuotient::to_json() const
{
    return {{"kind", kind}, {"ring", module.ring.name()}, {"generators", module.gens},
            {"relations", module.relations.rows}, {"module", nf.to_json()}, {"normal_form", nf.str()}};
}

HomologyQuotient d2(const StructureAlgebra& D)
{
    if (!D.associative) throw precondition_error("D_2 needs an associative algebra");
    std::vector<SVec> rels;
    for (int i = 0; i < D.dim; ++i) rels.push_back(sv_scale(sv_unit(i), 2, D.ring));
    for (int i = 0; i < D.dim; ++i)
        for (int j = i + 1; j < D.dim; ++j) rels.push_back(commutator(D, sv_unit(i), sv_unit(j)));
    return finish("D2", D, D.dim, rels, D.labels);
}

HomologyQuotient d3(const StructureAlgebra& D)
{
    if (!D.alternative) throw precondition_error("D_3 needs an alternative algebra");
    int n = D.dim;
    const BaseRing& R = D.ring;
    std::vector<SVec> rels;
    for (int i = 0; i < n; ++i) rels.push_back(sv_scale(sv_unit(i), 3, R));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) rels.push_back(D.mul(sv_unit(i), commutator(D, sv_unit(j), sv_unit(k))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) rels.push_back(associator(D, sv_unit(i), sv_unit(j), sv_unit(k)));
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) {
                SVec ea = sv_unit(a), ec = sv_unit(c), ed = sv_unit(d);
                SVec s = D.mul(D.prod(a, d), ec);
                s = sv_add(s, D.mul(ea, D.prod(d, c)), R);
                s = sv_add(s, D.mul(ea, D.prod(c, d)), R);
                for (int b = 0; b < n; ++b) rels.push_back(D.mul(s, sv_unit(b)));
            }
    return finish("D3", D, n, rels, D.labels);
}

HomologyQuotient angle(const StructureAlgebra& D)
{
    return finish("AngleBracket", D, D.dim * D.dim, angle_relations(D), tensor_labels(D));
}

HomologyQuotient tilde_wedge(const StructureAlgebra& D)
{
    int n = D.dim, n2 = n * n;
    const BaseRing& R = D.ring;
    std::vector<SVec> rels;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            SVec r;
            add_tensor(r, sv_unit(i), sv_unit(j), n, R);
            add_tensor(r, sv_unit(j), sv_unit(i), n, R);
            rels.push_back(r);
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                SVec r;
                add_tensor(r, D.prod(a, b), sv_unit(c), n, R);
                add_tensor(r, D.prod(b, c), sv_unit(a), n, R);
                add_tensor(r, D.prod(c, a), sv_unit(b), n, R);
                SVec as = associator(D, sv_unit(a), sv_unit(b), sv_unit(c)), sh;
                for (auto& [k, x] : as) sh.push_back({n2 + k, -x});
                for (auto& [k, x] : as) sh.push_back({n2 + n + k, -x});
                rels.push_back(sv_add(r, sv_scale(sh, 1, R), R));
            }
    auto labels = tensor_labels(D);
    for (int k = 0; k < n; ++k) labels.push_back(D.labels[k]);
    for (int k = 0; k < n; ++k) labels.push_back(D.labels[k] + "'");
    return finish("TildeWedge", D, n2 + 2 * n, rels, labels);
}

ModuleNF induced_kernel(const FPModule& M, const SparseMatrix& phi)
{
    const BaseRing& R = M.ring;
    int g = M.gens;
    if (phi.rows != g) throw std::invalid_argument("map needs one row per generator");
    for (auto& rel : M.relations.row) {
        SVec img;
        for (auto& [i, x] : rel) sv_axpy(img, x, phi.row[i], R);
        if (!img.empty()) throw precondition_error("relations do not lie in the kernel of the map");
    }
    if (R.is_field()) {
        // dim ker = (g - rank rel) - rank phi
        ModuleNF nf = module_invariants(M);
        nf.dim -= rank_of(phi.row, R);
        return nf;
    }
    // transpose phi so columns are generators, then ker = last columns of V
    SparseMatrix t(phi.cols, g);
    for (int i = 0; i < g; ++i)
        for (auto& [j, x] : phi.row[i]) t.set(j, i, x);
    auto s = smith_normal_form(t);
    int r = (int)s.diag.size();
    Mat vinv = mat_inverse(s.V, BaseRing::Q());
    FPModule K{R, g - r, SparseMatrix(0, g - r)};
    for (auto& rel : M.relations.row) {
        SVec y = mat_apply(vinv, rel, BaseRing::Q()), z;
        for (auto& [i, x] : y)
            if (i >= r) z.push_back({i - r, x});
        K.relations.push_row(z);
    }
    return module_invariants(K);
}

HomologyQuotient hc1(const StructureAlgebra& D)
{
    if (!D.associative) throw precondition_error("HC_1 needs an associative algebra");
    auto q = angle(D);
    SparseMatrix phi(0, D.dim);
    for (int i = 0; i < D.dim; ++i)
        for (int j = 0; j < D.dim; ++j) phi.push_row(commutator(D, sv_unit(i), sv_unit(j)));
    q.kind = "HC1";
    q.nf = induced_kernel(q.module, phi);
    return q;
}

}
