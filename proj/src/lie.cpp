#include "rograd/lie.hpp"
#include "rograd/quotients.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace rograd {

namespace {

// dense accumulator that remembers touched slots
struct Acc {
    std::vector<Scalar> v;
    std::vector<char> hit;
    std::vector<int> touched;
    explicit Acc(int n) : v(n), hit(n, 0) {}
    void add(int i, const Scalar& x)
    {
        if (!hit[i]) {
            hit[i] = 1;
            touched.push_back(i);
        }
        v[i] += x;
    }
    void axpy(const Scalar& a, const SVec& x)
    {
        for (auto& [i, y] : x) add(i, a * y);
    }
    SVec take(const BaseRing& R)
    {
        std::sort(touched.begin(), touched.end());
        SVec out;
        for (int i : touched) {
            Scalar t = R.is_fp() ? R.norm(v[i]) : v[i];
            if (t != 0) out.emplace_back(i, t);
            v[i] = 0;
            hit[i] = 0;
        }
        touched.clear();
        return out;
    }
};

SVec combine(std::vector<Entry>& t, const BaseRing& R)
{
    std::sort(t.begin(), t.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SVec out;
    for (size_t i = 0; i < t.size();) {
        size_t j = i;
        Scalar s = 0;
        while (j < t.size() && t[j].first == t[i].first) s += t[j++].second;
        if (R.is_fp()) s = R.norm(s);
        if (s != 0) out.emplace_back(t[i].first, s);
        i = j;
    }
    return out;
}

IVec cat(IVec a, const IVec& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

IVec head(const IVec& v, int n)
{
    return IVec(v.begin(), v.begin() + std::min<size_t>(n, v.size()));
}

IVec tail(const IVec& v, int n)
{
    return IVec(v.begin() + std::min<size_t>(n, v.size()), v.end());
}

SVec shift(const SVec& v, int off)
{
    SVec r = v;
    for (auto& e : r) e.first += off;
    return r;
}

BaseRing field_of(const BaseRing& R)
{
    return R.is_field() ? R : BaseRing::Q();
}

bool same_span(const std::vector<SVec>& a, const std::vector<SVec>& b, const BaseRing& R)
{
    Span sa(R), sb(R);
    for (auto& v : a) sa.insert(v);
    for (auto& v : b) sb.insert(v);
    for (auto& v : a)
        if (!sb.contains(v)) return false;
    for (auto& v : b)
        if (!sa.contains(v)) return false;
    return true;
}

std::string deg_key(const IVec& d)
{
    return vec_str(d);
}

}

// ---- GradedLieAlgebra ----

SVec GradedLieAlgebra::bracket(const SVec& x, const SVec& y) const
{
    Acc acc(dim);
    for (auto& [i, a] : x)
        for (auto& [j, c] : y) acc.axpy(a * c, b(i, j));
    return acc.take(ring);
}

Mat GradedLieAlgebra::ad(const SVec& x) const
{
    Mat m(dim, dim);
    for (int j = 0; j < dim; ++j) {
        SVec c = bracket(x, sv_unit(j));
        for (auto& [i, v] : c) m(i, j) = v;
    }
    return m;
}

IVec GradedLieAlgebra::root_degree(int i) const
{
    if ((int)degree.size() != dim) return {};
    return head(degree[i], root_coords);
}

json GradedLieAlgebra::to_json() const
{
    json b = json::array();
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            const SVec& v = this->b(i, j);
            if (v.empty()) continue;
            json e = json::array();
            for (auto& [k, x] : v) e.push_back({k, scalar_str(x)});
            b.push_back({i, j, e});
        }
    return {{"ring", ring.name()}, {"name", name},       {"dim", dim},
            {"labels", labels},    {"degrees", degree}, {"root_coords", root_coords},
            {"bracket", b}};
}

std::string GradedLieAlgebra::report() const
{
    auto s = structural_predicates(*this);
    std::set<IVec> supp;
    for (int i = 0; i < dim; ++i) supp.insert(root_degree(i));
    std::ostringstream os;
    os << "algebra  " << name << "\n";
    os << "ring     " << ring.name() << "\n";
    os << "dim      " << dim << "\n";
    os << "support  " << supp.size() << " degrees\n";
    os << "perfect  " << (s.is_perfect ? "yes" : "no") << "\n";
    os << "centre   " << s.centre.size() << "\n";
    os << "jacobi   " << (s.jacobi_ok ? "ok" : "FAILED") << "\n";
    return os.str();
}

LieCheck check_lie(const GradedLieAlgebra& L)
{
    LieCheck c;
    int n = L.dim;
    const BaseRing& R = L.ring;
    bool graded = (int)L.degree.size() == n;
    auto note = [&](const std::string& s) {
        if (c.failures.size() < 20) c.failures.push_back(s);
    };
    for (int i = 0; i < n; ++i) {
        if (!L.b(i, i).empty()) {
            ++c.antisymmetry;
            note("[x" + std::to_string(i) + ", x" + std::to_string(i) + "] != 0");
        }
        for (int j = i + 1; j < n; ++j) {
            ++c.pairs;
            if (!sv_add(L.b(i, j), L.b(j, i), R).empty()) {
                ++c.antisymmetry;
                note("antisymmetry fails at " + std::to_string(i) + "," + std::to_string(j));
            }
            if (!graded) continue;
            IVec d = add(L.degree[i], L.degree[j]);
            for (auto& [k, x] : L.b(i, j))
                if (L.degree[k] != d) {
                    ++c.grading;
                    note("bracket of " + L.labels[i] + ", " + L.labels[j] + " leaves degree " + deg_key(d));
                    break;
                }
        }
    }
    Acc acc(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                ++c.triples;
                // [x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]]
                for (auto& [l, x] : L.b(j, k)) acc.axpy(x, L.b(i, l));
                for (auto& [l, x] : L.b(k, i)) acc.axpy(x, L.b(j, l));
                for (auto& [l, x] : L.b(i, j)) acc.axpy(x, L.b(k, l));
                if (!acc.take(R).empty()) {
                    ++c.jacobi;
                    note("Jacobi fails on " + L.labels[i] + ", " + L.labels[j] + ", " + L.labels[k]);
                }
            }
    return c;
}

LieStructure structural_predicates(const GradedLieAlgebra& L)
{
    LieStructure s;
    int n = L.dim;
    s.jacobi_ok = check_lie(L).ok();
    Span d(L.ring);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d.insert(L.b(i, j));
    s.derived_rank = d.rank();
    s.is_perfect = d.rank() == n;
    if (s.is_perfect && !L.ring.is_field())
        for (auto& [c, r] : d.row_map())
            if (r.front().second != 1) s.is_perfect = false;
    // centre: x with [x, x_j] = 0 for all j
    std::vector<SVec> rows((size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (auto& [c, x] : L.b(i, j)) rows[(size_t)j * n + c].push_back({i, x});
    SparseMatrix M(0, n);
    for (auto& r : rows)
        if (!r.empty()) M.push_row(r);
    s.centre = kernel_basis(M, field_of(L.ring));
    return s;
}

// ---- operators ----

SVec op_mul(const SVec& a, const SVec& b, int n, const BaseRing& R)
{
    std::vector<Entry> t;
    for (auto& [ia, x] : a) {
        int r = ia / n, c = ia % n;
        auto lo = std::lower_bound(b.begin(), b.end(), c * n, [](const Entry& e, int k) { return e.first < k; });
        for (auto it = lo; it != b.end() && it->first < (c + 1) * n; ++it)
            t.emplace_back(r * n + it->first % n, x * it->second);
    }
    return combine(t, R);
}

SVec op_comm(const SVec& a, const SVec& b, int n, const BaseRing& R)
{
    return sv_sub(op_mul(a, b, n, R), op_mul(b, a, n, R), R);
}

SVec op_flat(const Mat& m)
{
    return m.flat();
}

// ---- closure ----

SVec OperatorLieAlgebra::coords(const SVec& v) const
{
    std::map<IVec, SVec> split;
    for (auto& e : v) split[graded ? coord_degree(e.first) : IVec{}].push_back(e);
    SVec out;
    for (auto& [d, part] : split) {
        auto it = parts.find(d);
        if (it == parts.end()) throw precondition_error("element has a degree outside the span");
        int off = offset.at(d);
        for (auto& [k, x] : it->second.coords(part)) out.emplace_back(off + k, x);
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return out;
}

bool OperatorLieAlgebra::contains(const SVec& v) const
{
    try {
        coords(v);
        return true;
    } catch (const precondition_error&) {
        return false;
    }
}

GradedLieAlgebra OperatorLieAlgebra::lie(const std::string& name) const
{
    GradedLieAlgebra L;
    L.ring = ring;
    L.name = name;
    L.dim = dim();
    L.degree = degree;
    L.real_dim = carrier;
    L.real = basis;
    L.br.assign((size_t)L.dim * L.dim, {});
    for (int i = 0; i < L.dim; ++i) {
        L.labels.push_back("b" + std::to_string(i));
        for (int j = i + 1; j < L.dim; ++j) {
            SVec c = coords(bracket(basis[i], basis[j]));
            L.br[(size_t)j * L.dim + i] = sv_scale(c, -1, ring);
            L.br[(size_t)i * L.dim + j] = std::move(c);
        }
    }
    return L;
}

OperatorLieAlgebra lie_closure(const BaseRing& R, int carrier, const std::vector<SVec>& gens, BracketFn br,
                               CoordDegreeFn deg)
{
    auto attempt = [&](bool graded) -> std::optional<OperatorLieAlgebra> {
        OperatorLieAlgebra A;
        A.ring = R;
        A.carrier = carrier;
        A.graded = graded;
        A.coord_degree = deg;
        A.bracket = br;
        auto degree_of = [&](const SVec& v, IVec& d) {
            if (!graded) {
                d = {};
                return true;
            }
            d = deg(v.front().first);
            for (auto& e : v)
                if (deg(e.first) != d) return false;
            return true;
        };
        bool grew = false;
        auto insert = [&](const SVec& v, const IVec& d) {
            auto it = A.parts.try_emplace(d, Span(R)).first;
            if (it->second.insert(v)) grew = true;
        };
        for (auto& g : gens) {
            if (g.empty()) continue;
            IVec d;
            if (!degree_of(g, d)) return std::nullopt;
            insert(g, d);
        }
        for (;;) {
            std::vector<std::pair<IVec, SVec>> cur;
            for (auto& [d, sp] : A.parts)
                for (auto& r : sp.rows()) cur.emplace_back(d, r);
            grew = false;
            for (size_t a = 0; a < cur.size(); ++a)
                for (size_t b = a + 1; b < cur.size(); ++b) {
                    SVec c = br(cur[a].second, cur[b].second);
                    if (c.empty()) continue;
                    IVec d;
                    if (!degree_of(c, d)) return std::nullopt;
                    if (graded && d != add(cur[a].first, cur[b].first)) return std::nullopt;
                    insert(c, d);
                }
            ++A.rounds;
            if (!grew) break;
        }
        for (auto& [d, sp] : A.parts) {
            A.offset[d] = (int)A.basis.size();
            for (auto& r : sp.rows()) {
                A.basis.push_back(r);
                A.degree.push_back(d);
            }
        }
        A.closed = true;
        return A;
    };
    if (deg)
        if (auto r = attempt(true)) return *r;
    return *attempt(false);
}

// ---- Jordan pairs ----

SVec delta_op(const JordanPair& V, const SVec& x, const SVec& y)
{
    int d0 = V.dim[0], d1 = V.dim[1], n = d0 + d1;
    std::vector<Entry> t;
    for (int k = 0; k < d0; ++k)
        for (auto& [r, v] : V.triple(0, x, y, sv_unit(k))) t.emplace_back(r * n + k, v);
    for (int l = 0; l < d1; ++l)
        for (auto& [r, v] : V.triple(1, y, x, sv_unit(l))) t.emplace_back((d0 + r) * n + d0 + l, -v);
    return combine(t, V.ring);
}

namespace {

CoordDegreeFn pair_coord_degree(const JordanPair& V)
{
    int d0 = V.dim[0], d1 = V.dim[1], n = d0 + d1;
    if ((int)V.degree[0].size() != d0 || (int)V.degree[1].size() != d1) return nullptr;
    std::vector<IVec> deg = V.degree[0];
    deg.insert(deg.end(), V.degree[1].begin(), V.degree[1].end());
    for (auto& d : deg)
        if (d.size() != deg[0].size()) return nullptr;
    return [deg, n](int idx) { return sub(deg[idx / n], deg[idx % n]); };
}

}

OperatorLieAlgebra instr(const JordanPair& V)
{
    int n = V.dim[0] + V.dim[1];
    std::vector<SVec> gens;
    for (int i = 0; i < V.dim[0]; ++i)
        for (int j = 0; j < V.dim[1]; ++j) gens.push_back(delta_op(V, sv_unit(i), sv_unit(j)));
    BaseRing R = V.ring;
    return lie_closure(R, n, gens, [n, R](const SVec& a, const SVec& b) { return op_comm(a, b, n, R); },
                       pair_coord_degree(V));
}

GradedLieAlgebra tkk(const JordanPair& V)
{
    return tkk(V, instr(V));
}

GradedLieAlgebra tkk(const JordanPair& V, const OperatorLieAlgebra& I)
{
    int d0 = V.dim[0], d1 = V.dim[1], m = I.dim(), n = d0 + d1;
    int N = d0 + m + d1;
    GradedLieAlgebra L;
    L.ring = V.ring;
    L.name = "TKK(" + V.name + ")";
    L.dim = N;
    L.br.assign((size_t)N * N, {});
    auto set = [&](int i, int j, const SVec& v) {
        L.br[(size_t)i * N + j] = v;
        L.br[(size_t)j * N + i] = sv_scale(v, -1, L.ring);
    };
    for (int i = 0; i < d0; ++i) L.labels.push_back("+" + V.labels[0][i]);
    for (int k = 0; k < m; ++k) L.labels.push_back("d" + std::to_string(k));
    for (int j = 0; j < d1; ++j) L.labels.push_back("-" + V.labels[1][j]);
    for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d1; ++j) set(i, d0 + m + j, shift(I.coords(delta_op(V, sv_unit(i), sv_unit(j))), d0));
    for (int k = 0; k < m; ++k) {
        std::map<int, std::vector<Entry>> cols;
        for (auto& [idx, v] : I.basis[k]) {
            int r = idx / n, c = idx % n;
            if (c < d0)
                cols[c].emplace_back(r, v);
            else
                cols[d0 + m + (c - d0)].emplace_back(d0 + m + (r - d0), v);
        }
        for (auto& [c, t] : cols) set(d0 + k, c, combine(t, L.ring));
        for (int l = k + 1; l < m; ++l) set(d0 + k, d0 + l, shift(I.coords(op_comm(I.basis[k], I.basis[l], n, L.ring)), d0));
    }
    bool graded = I.graded && pair_coord_degree(V) != nullptr;
    L.root_coords = graded ? V.root_coords : 0;
    for (int i = 0; i < d0; ++i) L.degree.push_back(cat(graded ? V.degree[0][i] : IVec{}, {1}));
    for (int k = 0; k < m; ++k) L.degree.push_back(cat(graded ? I.degree[k] : IVec{}, {0}));
    for (int j = 0; j < d1; ++j) L.degree.push_back(cat(graded ? V.degree[1][j] : IVec{}, {-1}));
    return L;
}

// ---- uider ----

namespace {

// x (x) y on generators i*d1 + j
void add_tensor(std::vector<Entry>& t, const Scalar& c, const SVec& x, const SVec& y, int d1)
{
    for (auto& [i, a] : x)
        for (auto& [j, b] : y) t.emplace_back(i * d1 + j, c * a * b);
}

// delta(e_i, f_j)(e_k (x) f_l) = {e_i f_j e_k} (x) f_l - e_k (x) {f_j e_i f_l}
void add_delta_action(std::vector<Entry>& t, const JordanPair& V, int i, int j, int k, int l)
{
    int d1 = V.dim[1];
    add_tensor(t, 1, V.t(0, i, j, k), sv_unit(l), d1);
    add_tensor(t, -1, sv_unit(k), V.t(1, j, i, l), d1);
}

std::vector<SVec> uider_relations(const JordanPair& V)
{
    int d0 = V.dim[0], d1 = V.dim[1], g = d0 * d1;
    std::vector<SVec> rels;
    for (int p = 0; p < g; ++p) {
        int i = p / d1, j = p % d1;
        std::vector<Entry> t;
        add_delta_action(t, V, i, j, i, j);
        rels.push_back(combine(t, V.ring));
        for (int q = p + 1; q < g; ++q) {
            int k = q / d1, l = q % d1;
            t.clear();
            add_delta_action(t, V, i, j, k, l);
            add_delta_action(t, V, k, l, i, j);
            rels.push_back(combine(t, V.ring));
        }
    }
    return rels;
}

}

UIDer uider(const JordanPair& V)
{
    int d0 = V.dim[0], d1 = V.dim[1], g = d0 * d1;
    UIDer U;
    U.inner = instr(V);
    bool graded = U.inner.graded;
    for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d1; ++j) U.gen_degree.push_back(graded ? add(V.degree[0][i], V.degree[1][j]) : IVec{});
    U.module.ring = V.ring;
    U.module.gens = g;
    U.module.relations = SparseMatrix(0, g);
    for (auto& r : uider_relations(V))
        if (!r.empty()) U.module.relations.push_row(std::move(r));
    U.ud = SparseMatrix(0, U.inner.dim());
    for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d1; ++j) U.ud.push_row(U.inner.coords(delta_op(V, sv_unit(i), sv_unit(j))));
    // degree blocks
    std::map<IVec, std::vector<int>> blocks;
    for (int p = 0; p < g; ++p) blocks[U.gen_degree[p]].push_back(p);
    std::map<IVec, std::vector<const SVec*>> block_rels;
    for (auto& r : U.module.relations.row) block_rels[U.gen_degree[r.front().first]].push_back(&r);
    U.nf.field = U.hc.field = V.ring.is_field();
    for (auto& [d, gens] : blocks) {
        std::map<int, int> pos;
        for (size_t k = 0; k < gens.size(); ++k) pos[gens[k]] = (int)k;
        FPModule M{V.ring, (int)gens.size(), SparseMatrix(0, (int)gens.size())};
        for (auto* r : block_rels[d]) {
            SVec v;
            for (auto& [c, x] : *r) v.emplace_back(pos.at(c), x);
            M.relations.push_row(v);
        }
        SparseMatrix phi(0, U.inner.dim());
        for (int p : gens) phi.push_row(U.ud.row[p]);
        ModuleNF nf = module_invariants(M);
        ModuleNF hc = induced_kernel(M, phi);
        U.nf = nf_direct_sum(U.nf, nf);
        U.hc = nf_direct_sum(U.hc, hc);
        U.hc_by_degree[d] = hc;
    }
    return U;
}

UTKK utkk(const JordanPair& V)
{
    if (!V.ring.is_field()) throw precondition_error("uTKK is built over a field");
    UIDer U = uider(V);
    int d0 = V.dim[0], d1 = V.dim[1], g = d0 * d1;
    Span rel(V.ring);
    for (auto& r : U.module.relations.row) rel.insert(r);
    std::set<int> piv;
    for (int c : rel.pivots()) piv.insert(c);
    std::vector<int> qgens;
    std::map<int, int> qpos;
    for (int p = 0; p < g; ++p)
        if (!piv.count(p)) {
            qpos[p] = (int)qgens.size();
            qgens.push_back(p);
        }
    int m = (int)qgens.size(), N = d0 + m + d1;
    auto reduce = [&](const SVec& t) {
        SVec out;
        for (auto& [c, x] : rel.reduce(t)) out.emplace_back(d0 + qpos.at(c), x);
        return out;
    };
    UTKK res;
    GradedLieAlgebra& L = res.L;
    L.ring = V.ring;
    L.name = "uTKK(" + V.name + ")";
    L.dim = N;
    L.br.assign((size_t)N * N, {});
    auto set = [&](int i, int j, const SVec& v) {
        L.br[(size_t)i * N + j] = v;
        L.br[(size_t)j * N + i] = sv_scale(v, -1, L.ring);
    };
    for (int i = 0; i < d0; ++i) L.labels.push_back("+" + V.labels[0][i]);
    for (int k = 0; k < m; ++k)
        L.labels.push_back(V.labels[0][qgens[k] / d1] + "<>" + V.labels[1][qgens[k] % d1]);
    for (int j = 0; j < d1; ++j) L.labels.push_back("-" + V.labels[1][j]);
    for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d1; ++j) set(i, d0 + m + j, reduce(sv_unit(i * d1 + j)));
    for (int k = 0; k < m; ++k) {
        int a = qgens[k] / d1, b = qgens[k] % d1;
        for (int z = 0; z < d0; ++z) set(d0 + k, z, V.t(0, a, b, z));
        for (int w = 0; w < d1; ++w) set(d0 + k, d0 + m + w, shift(sv_scale(V.t(1, b, a, w), -1, L.ring), d0 + m));
        for (int l = k + 1; l < m; ++l) {
            std::vector<Entry> t;
            add_delta_action(t, V, a, b, qgens[l] / d1, qgens[l] % d1);
            set(d0 + k, d0 + l, reduce(combine(t, L.ring)));
        }
    }
    bool graded = U.inner.graded;
    L.root_coords = graded ? V.root_coords : 0;
    for (int i = 0; i < d0; ++i) L.degree.push_back(cat(graded ? V.degree[0][i] : IVec{}, {1}));
    for (int k = 0; k < m; ++k) L.degree.push_back(cat(U.gen_degree[qgens[k]], {0}));
    for (int j = 0; j < d1; ++j) L.degree.push_back(cat(graded ? V.degree[1][j] : IVec{}, {-1}));

    res.target = tkk(V, U.inner);
    int mt = U.inner.dim();
    res.cover = SparseMatrix(0, res.target.dim);
    for (int i = 0; i < d0; ++i) res.cover.push_row(sv_unit(i));
    for (int k = 0; k < m; ++k) res.cover.push_row(shift(U.ud.row[qgens[k]], d0));
    for (int j = 0; j < d1; ++j) res.cover.push_row(sv_unit(d0 + mt + j));
    res.kernel_dim = N - rank_of(res.cover.row, L.ring);
    return res;
}

// ---- sl_K(D) ----

GradedLieAlgebra sl_algebra(int K, const StructureAlgebra& D)
{
    if (!D.associative) throw precondition_error("sl_K(D) needs an associative coordinate algebra");
    if (!D.unit) throw precondition_error("sl_K(D) needs a unital coordinate algebra");
    if (K < 3) throw precondition_error("sl_K(D) is built for K >= 3");
    int dd = D.dim, n = K * K * dd;
    const BaseRing R = D.ring;
    auto idx = [K, dd](int i, int j, int k) { return (i * K + j) * dd + k; };
    // product of K x K matrices over D
    auto mul = [K, dd, &D, R](const SVec& x, const SVec& y) {
        std::vector<Entry> t;
        for (auto& [ix, a] : x) {
            int i = ix / dd / K, j = ix / dd % K, k = ix % dd;
            int lo = j * K * dd, hi = (j + 1) * K * dd;
            auto it = std::lower_bound(y.begin(), y.end(), lo, [](const Entry& e, int v) { return e.first < v; });
            for (; it != y.end() && it->first < hi; ++it) {
                int l = it->first / dd % K, m = it->first % dd;
                for (auto& [c, v] : D.prod(k, m)) t.emplace_back((i * K + l) * dd + c, a * it->second * v);
            }
        }
        return combine(t, R);
    };
    BracketFn br = [mul, R](const SVec& x, const SVec& y) { return sv_sub(mul(x, y), mul(y, x), R); };
    bool aux = (int)D.degree.size() == dd && dd > 0 && !D.degree[0].empty();
    CoordDegreeFn deg = [K, dd, aux, &D](int ix) {
        IVec d(K, 0);
        d[ix / dd / K] += 1;
        d[ix / dd % K] -= 1;
        return aux ? cat(d, D.degree[ix % dd]) : d;
    };
    std::vector<SVec> gens;
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
            if (i != j)
                for (int k = 0; k < dd; ++k) gens.push_back(sv_unit(idx(i, j, k)));
    auto A = lie_closure(R, n, gens, br, deg);
    GradedLieAlgebra L = A.lie("sl" + std::to_string(K) + "(" + (dd == 1 ? R.name() : "D") + ")");
    L.root_coords = K;
    int h = 0;
    for (int b = 0; b < L.dim; ++b) {
        const SVec& v = A.basis[b];
        int i = v.front().first / dd / K, j = v.front().first / dd % K;
        if (v.size() == 1 && v.front().second == 1 && i != j)
            L.labels[b] = "E" + std::to_string(i + 1) + std::to_string(j + 1) + ":" + D.labels[v.front().first % dd];
        else
            L.labels[b] = "h" + std::to_string(++h);
    }
    // L_0 = { sum E_ii a_i : sum a_i in [D,D] }
    std::vector<SVec> target, l0;
    for (int i = 0; i + 1 < K; ++i)
        for (int k = 0; k < dd; ++k)
            target.push_back(sv_sub(sv_unit(idx(i, i, k)), sv_unit(idx(K - 1, K - 1, k)), R));
    for (int p = 0; p < dd; ++p)
        for (int q = 0; q < dd; ++q) {
            SVec c = commutator(D, sv_unit(p), sv_unit(q)), v;
            for (auto& [k, x] : c) v.emplace_back(idx(K - 1, K - 1, k), x);
            if (!v.empty()) target.push_back(v);
        }
    for (int b = 0; b < L.dim; ++b)
        if (is_zero(L.root_degree(b))) l0.push_back(A.basis[b]);
    if (!same_span(target, l0, R)) throw std::logic_error("degree zero part of sl_K(D) differs from its description");
    return L;
}

// ---- J * J ----

namespace {

void require_half_field(const BaseRing& R)
{
    if (!R.invertible(2)) throw precondition_error("J * J needs 1/2 in the base ring");
    if (!R.is_field()) throw precondition_error("J * J is computed over a field");
}

SVec lcirc_flat(const JordanAlgebra& J, int a)
{
    return J.Lcirc(sv_unit(a)).flat();
}

}

SVec StarModule::reduce(const SVec& tensor) const
{
    SVec out;
    for (auto& [c, x] : relations.reduce(tensor)) out.emplace_back(position.at(c), x);
    return out;
}

SVec StarModule::star(const SVec& a, const SVec& b) const
{
    std::vector<Entry> t;
    for (auto& [i, x] : a)
        for (auto& [j, y] : b) t.emplace_back(i * jdim + j, x * y);
    return reduce(combine(t, ring));
}

StarModule star_module(const JordanAlgebra& J)
{
    require_half_field(J.ring);
    StarModule S;
    S.ring = J.ring;
    S.jdim = J.dim;
    int n = J.dim;
    const BaseRing& R = J.ring;
    S.relations = Span(R);
    auto gen = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) S.relations.insert(sv_add(sv_unit(gen(i, j)), sv_unit(gen(j, i)), R));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                std::vector<Entry> t;
                for (auto& [l, x] : J.c(j, k)) t.emplace_back(gen(i, l), x);
                for (auto& [l, x] : J.c(k, i)) t.emplace_back(gen(j, l), x);
                for (auto& [l, x] : J.c(i, j)) t.emplace_back(gen(k, l), x);
                SVec v = combine(t, R);
                if (!v.empty()) S.relations.insert(v);
            }
    std::set<int> piv;
    for (int c : S.relations.pivots()) piv.insert(c);
    for (int g = 0; g < n * n; ++g)
        if (!piv.count(g)) {
            S.position[g] = (int)S.basis_gens.size();
            S.basis_gens.push_back(g);
        }
    // 2[L_a, L_b] = 1/2 [Lo_a, Lo_b]
    std::vector<SVec> lc(n);
    for (int a = 0; a < n; ++a) lc[a] = lcirc_flat(J, a);
    Scalar half = R.inv(2);
    std::map<int, std::vector<Entry>> trows;
    for (size_t q = 0; q < S.basis_gens.size(); ++q) {
        int a = S.basis_gens[q] / n, b = S.basis_gens[q] % n;
        SVec u = sv_scale(op_comm(lc[a], lc[b], n, R), half, R);
        for (auto& [c, x] : u) trows[c].emplace_back((int)q, x);
        S.ud.push_back(std::move(u));
    }
    SparseMatrix M(0, S.dim());
    for (auto& [c, t] : trows) M.push_row(combine(t, R));
    S.kernel = kernel_basis(M, R);
    S.hc.field = true;
    S.hc.dim = (long)S.kernel.size();
    return S;
}

GradedLieAlgebra StarModule::lie(const JordanAlgebra& J) const
{
    GradedLieAlgebra L;
    L.ring = ring;
    L.name = J.name + "*" + J.name;
    L.dim = dim();
    int n = jdim;
    L.br.assign((size_t)L.dim * L.dim, {});
    for (int g = 0; g < L.dim; ++g)
        L.labels.push_back(J.labels[basis_gens[g] / n] + "*" + J.labels[basis_gens[g] % n]);
    for (int g = 0; g < L.dim; ++g) {
        Mat Dg = Mat::unflat(ud[g], n, n);
        for (int h = 0; h < L.dim; ++h) {
            int x = basis_gens[h] / n, y = basis_gens[h] % n;
            // D x * y + x * D y
            SVec dx = mat_apply(Dg, sv_unit(x), ring), dy = mat_apply(Dg, sv_unit(y), ring);
            L.br[(size_t)g * L.dim + h] = sv_add(star(dx, sv_unit(y)), star(sv_unit(x), dy), ring);
        }
    }
    return L;
}

StarDecomposition star_decomposition(const JordanAlgebra& J, const StarModule& S,
                                     const std::vector<SVec>& idempotents)
{
    const BaseRing& R = S.ring;
    int n = S.jdim;
    auto P = peirce(J, idempotents);
    int k = (int)idempotents.size();
    StarDecomposition out;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            auto& sp = P.spaces[{i, j}];
            for (auto& x : sp) {
                out.D.push_back(S.star(idempotents[i], x));
                for (auto& y : sp) out.D0.push_back(S.star(x, y));
            }
        }
    out.D = span_basis(out.D, R);
    out.D0 = span_basis(out.D0, R);
    auto ud_of = [&](const SVec& X) {
        SVec u;
        for (auto& [g, x] : X) sv_axpy(u, x, S.ud[g], R);
        return u;
    };
    std::vector<SVec> uD, uD0;
    for (auto& X : out.D) uD.push_back(ud_of(X));
    for (auto& X : out.D0) uD0.push_back(ud_of(X));
    out.ud_D = rank_of(uD, R);
    out.ud_D0_ops = span_basis(uD0, R);
    out.ud_D0 = (int)out.ud_D0_ops.size();
    std::vector<SVec> both = out.D;
    both.insert(both.end(), out.D0.begin(), out.D0.end());
    out.direct = rank_of(both, R) == S.dim() && (int)(out.D.size() + out.D0.size()) == S.dim();
    // X with ud(X) e_i = 0 for every idempotent
    std::map<int, std::vector<Entry>> rows;
    for (int g = 0; g < S.dim(); ++g) {
        Mat m = Mat::unflat(S.ud[g], n, n);
        for (int i = 0; i < k; ++i)
            for (auto& [c, x] : mat_apply(m, idempotents[i], R)) rows[i * n + c].emplace_back(g, x);
    }
    SparseMatrix M(0, S.dim());
    for (auto& [c, t] : rows) M.push_row(combine(t, R));
    out.D0_annihilator = kernel_basis(M, R);
    out.D0_matches = same_span(out.D0, out.D0_annihilator, R);
    Span d0(R);
    for (auto& v : out.D0) d0.insert(v);
    out.kernel_in_D0 = true;
    for (auto& v : S.kernel)
        if (!d0.contains(v)) out.kernel_in_D0 = false;
    return out;
}

OperatorLieAlgebra ider(const JordanAlgebra& J)
{
    const BaseRing& R = J.ring;
    if (!R.invertible(2)) throw precondition_error("L_a = 1/2 Lo_a needs 1/2");
    int n = J.dim;
    std::vector<SVec> lc(n), gens;
    for (int a = 0; a < n; ++a) lc[a] = lcirc_flat(J, a);
    Scalar q = R.inv(4);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) gens.push_back(sv_scale(op_comm(lc[a], lc[b], n, R), q, R));
    CoordDegreeFn deg = nullptr;
    if ((int)J.degree.size() == n) {
        std::vector<IVec> aux;
        for (auto& d : J.degree) aux.push_back(tail(d, J.root_coords));
        bool ok = true;
        for (auto& d : aux) ok &= d.size() == aux[0].size();
        if (ok && !aux.empty() && !aux[0].empty()) deg = [aux, n](int idx) { return sub(aux[idx / n], aux[idx % n]); };
    }
    return lie_closure(R, n, gens, [n, R](const SVec& a, const SVec& b) { return op_comm(a, b, n, R); }, deg);
}

// ---- root gradings ----

RootGrading assign_root_grading(const GradedLieAlgebra& T, const JordanPair& V, const GridReport& grid,
                                const std::vector<PairElement>& family, const RootSystem& R,
                                const std::vector<IVec>& R1)
{
    RootGrading out;
    int rc = V.root_coords, d0 = V.dim[0], d1 = V.dim[1], N = T.dim, m = N - d0 - d1;
    const BaseRing& K = T.ring;
    BaseRing F = field_of(K);
    auto fail = [&](const std::string& s) {
        if (out.failures.size() < 20) out.failures.push_back(s);
    };
    if (!grid.ok) fail("grid not verified");
    if ((int)T.degree.size() != N || T.root_coords != rc || rc != R.ambient) {
        fail("algebra degrees do not carry root coordinates of " + R.name());
        return out;
    }
    out.L = T;
    for (auto& d : out.L.degree) d = head(d, rc);
    auto in_joint = [&](int s, const IVec& a, int idx) {
        auto it = grid.joint[s].find(a);
        if (it == grid.joint[s].end()) return false;
        Span sp(F);
        for (auto& v : it->second) sp.insert(v);
        return sp.contains(sv_unit(idx));
    };
    for (int i = 0; i < d0; ++i)
        if (!in_joint(0, out.L.degree[i], i)) fail("V+ basis element " + V.labels[0][i] + " outside its grid space");
    for (int j = 0; j < d1; ++j)
        if (!in_joint(1, neg(out.L.degree[d0 + m + j]), j))
            fail("V- basis element " + V.labels[1][j] + " outside its grid space");
    for (auto& d : out.L.degree) {
        out.support.insert(d);
        if (!R.is_root(d)) fail("degree " + R.eps_str(d) + " is not a root");
    }
    // orthogonal alpha, beta in R1: [L_alpha, L_-beta] = 0
    for (auto& a : R1)
        for (auto& b : R1) {
            if (a == b || R.pairing(a, b) != 0) continue;
            for (int i = 0; i < d0; ++i) {
                if (out.L.degree[i] != a) continue;
                for (int j = 0; j < d1; ++j)
                    if (out.L.degree[d0 + m + j] == neg(b) && !T.b(i, d0 + m + j).empty())
                        fail("orthogonal pair " + R.eps_str(a) + ", " + R.eps_str(b) + " has nonzero bracket");
            }
        }
    // sl2 triples act by <gamma, alpha^vee>
    for (size_t k = 0; k < family.size() && k < R1.size(); ++k) {
        SVec e = family[k].plus, f = shift(family[k].minus, d0 + m);
        SVec h = T.bracket(e, f);
        for (int t = 0; t < N; ++t) {
            Scalar ev = R.pairing(out.L.degree[t], R1[k]);
            if (T.bracket(h, sv_unit(t)) != sv_scale(sv_unit(t), ev, K)) {
                fail("h for " + R.eps_str(R1[k]) + " does not act by <gamma, alpha^vee> on " + T.labels[t]);
                break;
            }
        }
    }
    out.L.root_coords = rc;
    return out;
}

}
