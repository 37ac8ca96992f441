#include "rograd/central.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

namespace rograd {

namespace {

BaseRing field_of(const BaseRing& R)
{
    return R.is_field() ? R : BaseRing::Q();
}

bool is_perfect(const GradedLieAlgebra& L)
{
    Span d(L.ring);
    for (int i = 0; i < L.dim; ++i)
        for (int j = i + 1; j < L.dim; ++j) d.insert(L.b(i, j));
    if (d.rank() != L.dim) return false;
    if (!L.ring.is_field())
        for (auto& [c, r] : d.row_map())
            if (r.front().second != 1) return false;
    return true;
}

int thread_count()
{
    long n = std::thread::hardware_concurrency();
    if (const char* s = std::getenv("ROGRAD_THREADS")) n = std::atol(s);
    return (int)std::max(1L, n);
}

template <class F>
void parallel_for(int n, F f)
{
    int t = std::min(thread_count(), n);
    if (t <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex m;
    for (int k = 0; k < t; ++k)
        pool.emplace_back([&] {
            for (int i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(m);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

IVec head(const IVec& v, int n)
{
    return IVec(v.begin(), v.begin() + std::min<size_t>(n, v.size()));
}

SVec sorted(std::vector<Entry> t, const BaseRing& R)
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

}

// ---- uce ----

Uce uce(const GradedLieAlgebra& L)
{
    if (!is_perfect(L))
        throw precondition_error("uce needs a perfect Lie algebra; " + L.name + " is not perfect over " + L.ring.name());
    Uce out;
    out.L = &L;
    int n = L.dim;
    bool graded = (int)L.degree.size() == n;
    auto deg = [&](int i) { return graded ? L.degree[i] : IVec{}; };
    std::map<IVec, int> block_of;
    std::vector<int> glocal((size_t)n * n, -1);
    std::map<IVec, std::vector<std::pair<int, int>>> gens;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) gens[add(deg(i), deg(j))].push_back({i, j});
    for (auto& [d, g] : gens) {
        UceBlock b;
        b.degree = d;
        b.gens = g;
        block_of[d] = (int)out.blocks.size();
        for (size_t k = 0; k < g.size(); ++k) {
            glocal[(size_t)g[k].first * n + g[k].second] = (int)k;
        }
        b.module.ring = L.ring;
        b.module.gens = (int)g.size();
        b.module.relations = SparseMatrix(0, (int)g.size());
        b.u = SparseMatrix(0, n);
        for (auto& [i, j] : g) b.u.push_row(L.b(i, j));
        out.blocks.push_back(std::move(b));
    }
    // x_i ^ [x_j, x_k] + x_j ^ [x_k, x_i] + x_k ^ [x_i, x_j]
    std::vector<Entry> t;
    auto wedge = [&](int a, const SVec& v, const Scalar& s) {
        for (auto& [c, x] : v) {
            if (c == a) continue;
            if (a < c)
                t.emplace_back(glocal[(size_t)a * n + c], s * x);
            else
                t.emplace_back(glocal[(size_t)c * n + a], -s * x);
        }
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                auto it = block_of.find(add(add(deg(i), deg(j)), deg(k)));
                if (it == block_of.end()) continue;
                t.clear();
                wedge(i, L.b(j, k), 1);
                wedge(j, L.b(k, i), 1);
                wedge(k, L.b(i, j), 1);
                SVec r = sorted(t, L.ring);
                if (r.empty()) continue;
                out.blocks[it->second].module.relations.push_row(std::move(r));
                ++out.relations;
            }
    parallel_for((int)out.blocks.size(), [&](int k) {
        UceBlock& b = out.blocks[k];
        b.quotient = module_invariants(b.module);
        b.kernel = induced_kernel(b.module, b.u);
        b.image_rank = rank_of(b.u.row, field_of(L.ring));
    });
    out.total.field = L.ring.is_field();
    for (auto& b : out.blocks) out.total = nf_direct_sum(out.total, b.kernel);
    return out;
}

UceAlgebra uce_algebra(const GradedLieAlgebra& L)
{
    if (!L.ring.is_field()) throw precondition_error("uce_algebra is built over a field");
    Uce u = uce(L);
    int n = L.dim;
    UceAlgebra A;
    // quotient basis: non-pivot generators per block
    std::vector<Span> spans;
    std::vector<std::map<int, int>> pos(u.blocks.size());
    std::map<std::pair<int, int>, std::pair<int, int>> where;
    std::vector<IVec> degree;
    for (size_t k = 0; k < u.blocks.size(); ++k) {
        auto& b = u.blocks[k];
        Span s(L.ring);
        for (auto& r : b.module.relations.row) s.insert(r);
        std::set<int> piv;
        for (int c : s.pivots()) piv.insert(c);
        for (int g = 0; g < (int)b.gens.size(); ++g) {
            where[b.gens[g]] = {(int)k, g};
            if (piv.count(g)) continue;
            pos[k][g] = (int)A.basis_gens.size();
            A.basis_gens.push_back(b.gens[g]);
            degree.push_back(b.degree);
        }
        spans.push_back(std::move(s));
    }
    int m = (int)A.basis_gens.size();
    // <x, y> for x, y in L as an element of the quotient
    auto angle = [&](const SVec& x, const SVec& y) {
        std::map<int, std::vector<Entry>> per;
        for (auto& [i, a] : x)
            for (auto& [j, c] : y) {
                if (i == j) continue;
                auto [k, g] = where.at({std::min(i, j), std::max(i, j)});
                per[k].emplace_back(g, i < j ? Scalar(a * c) : Scalar(-a * c));
            }
        std::vector<Entry> out;
        for (auto& [k, t] : per)
            for (auto& [g, v] : spans[k].reduce(sorted(t, L.ring))) out.emplace_back(pos[k].at(g), v);
        return sorted(out, L.ring);
    };
    GradedLieAlgebra& U = A.U;
    U.ring = L.ring;
    U.name = "uce(" + L.name + ")";
    U.dim = m;
    U.root_coords = L.root_coords;
    if ((int)L.degree.size() == n) U.degree = degree;
    U.br.assign((size_t)m * m, {});
    A.cover = SparseMatrix(0, n);
    for (int p = 0; p < m; ++p) {
        auto [i, j] = A.basis_gens[p];
        U.labels.push_back("<" + L.labels[i] + "," + L.labels[j] + ">");
        A.cover.push_row(L.b(i, j));
    }
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q) {
            SVec v = angle(A.cover.row[p], A.cover.row[q]);
            U.br[(size_t)q * m + p] = sv_scale(v, -1, U.ring);
            U.br[(size_t)p * m + q] = std::move(v);
        }
    return A;
}

// ---- kernel report ----

ExtensionReport kernel_report(const Uce& u, const RootSystem& R)
{
    const GradedLieAlgebra& L = *u.L;
    if (L.root_coords != R.ambient)
        throw precondition_error(L.name + " does not carry a grading by the root lattice of " + R.name());
    ExtensionReport rep;
    rep.algebra = L.name;
    rep.ring = L.ring.name();
    rep.dim = L.dim;
    rep.total = u.total;
    bool field = L.ring.is_field();
    std::map<IVec, long> ldim, image;
    for (int i = 0; i < L.dim; ++i) ++ldim[L.root_degree(i)];
    for (auto& b : u.blocks) {
        IVec g = head(b.degree, L.root_coords);
        auto& k = rep.by_degree.try_emplace(g).first->second;
        auto& q = rep.uce_by_degree.try_emplace(g).first->second;
        k.field = q.field = field;
        k = nf_direct_sum(k, b.kernel);
        q = nf_direct_sum(q, b.quotient);
        image[g] += b.image_rank;
    }
    auto fail = [&](const std::string& s) { rep.failures.push_back(s); };
    for (auto& [g, k] : rep.by_degree) {
        if (k.trivial()) continue;
        rep.support.insert(g);
        if (is_zero(g)) {
            rep.classification[g] = "zero_degree";
        } else if (R.is_root(g)) {
            rep.classification[g] = "root";
            rep.roots_bijective = false;
            fail("kernel in root degree " + R.eps_str(g) + ": " + k.str());
        } else {
            long n = divisor(g, R);
            rep.classification[g] = "degenerate_sum(" + std::to_string(n) + ")";
            if (n <= 1 || degenerate_pairs(g, R).empty()) fail("support degree " + R.eps_str(g) + " is not a degenerate sum");
            bool law = field ? (L.ring.characteristic() != 0 && n % L.ring.characteristic() == 0)
                             : k.free == 0 && std::all_of(k.torsion.begin(), k.torsion.end(),
                                                           [n](const mpz_class& d) { return mpz_class(n) % d == 0; });
            if (!law) {
                rep.torsion_law = false;
                fail("degree " + R.eps_str(g) + " kernel " + k.str() + " is not annihilated by " + std::to_string(n));
            }
        }
    }
    for (auto& [g, d] : ldim)
        if (!is_zero(g) && image[g] != d) {
            rep.roots_bijective = false;
            fail("u is not onto in root degree " + R.eps_str(g));
        }
    return rep;
}

json ExtensionReport::to_json() const
{
    json supp = json::array(), ker = json::object(), cls = json::object();
    for (auto& g : support) supp.push_back(vec_str(g));
    for (auto& [g, k] : by_degree)
        if (!k.trivial()) ker[vec_str(g)] = k.to_json();
    for (auto& [g, c] : classification) cls[vec_str(g)] = c;
    return {{"algebra", algebra},
            {"ring", ring},
            {"dim", dim},
            {"total_kernel", total.to_json()},
            {"support", supp},
            {"kernel", ker},
            {"classification", cls},
            {"roots_bijective", roots_bijective},
            {"torsion_law", torsion_law},
            {"failures", failures}};
}

std::string ExtensionReport::table() const
{
    std::ostringstream os;
    os << "uce(" << algebra << ") over " << ring << ", dim " << dim << "\n";
    os << "kernel: " << total.str() << "\n";
    size_t w = 8;
    for (auto& g : support) w = std::max(w, vec_str(g).size() + 2);
    os << std::string(w, '-') << "+---------------------+-----------\n";
    for (auto& g : support) {
        std::string d = vec_str(g);
        std::string c = classification.at(g);
        os << d << std::string(w - d.size(), ' ') << "| " << c << std::string(c.size() < 20 ? 20 - c.size() : 1, ' ')
           << "| " << by_degree.at(g).str() << "\n";
    }
    if (support.empty()) os << "(no kernel)\n";
    for (auto& f : failures) os << "! " << f << "\n";
    return os.str();
}

// ---- cocycles ----

bool CocycleExtension::ok() const
{
    if (alternating_failures || cocycle_failures) return false;
    for (auto& [g, h] : hits)
        if (!h) return false;
    if (extension && !check_lie(*extension).ok()) return false;
    return true;
}

void verify_cocycle(CocycleExtension& E)
{
    const GradedLieAlgebra& L = E.L;
    const BaseRing& R = L.ring;
    int N = L.dim;
    E.pairs = E.triples = E.alternating_failures = E.cocycle_failures = 0;
    for (int i = 0; i < N; ++i) {
        if (!E.relations.contains(E.value(i, i))) ++E.alternating_failures;
        for (int j = i + 1; j < N; ++j) {
            ++E.pairs;
            if (!E.relations.contains(sv_add(E.value(i, j), E.value(j, i), R))) ++E.alternating_failures;
        }
    }
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            for (int k = j + 1; k < N; ++k) {
                ++E.triples;
                std::vector<Entry> t;
                auto add_psi = [&](int a, const SVec& v) {
                    for (auto& [l, x] : v)
                        for (auto& [c, y] : E.value(a, l)) t.emplace_back(c, x * y);
                };
                add_psi(i, L.b(j, k));
                add_psi(j, L.b(k, i));
                add_psi(k, L.b(i, j));
                if (!E.relations.contains(sorted(t, R))) ++E.cocycle_failures;
            }
}

CocycleExtension cocycle_extension(const std::string& kind, const StructureAlgebra& D)
{
    if (kind != "A2" && kind != "A3") throw precondition_error("cocycle kind must be A2 or A3");
    bool a2 = kind == "A2";
    int K = a2 ? 3 : 4;
    long n = a2 ? 3 : 2;
    CocycleExtension E;
    E.kind = kind;
    E.L = sl_algebra(K, D);
    E.ddim = D.dim;
    const BaseRing& R = D.ring;
    auto RS = build_root_system('A', K - 1);
    auto ds = degenerate_sums_algorithm(RS);
    for (auto& g : ds.by_divisor[n]) E.copies.push_back(g);
    HomologyQuotient q = a2 ? d3(D) : d2(D);
    int dd = D.dim, zdim = (int)E.copies.size() * dd;
    E.relations = Span(R);
    std::map<RootPair, std::pair<int, int>> sign;  // (alpha, beta) -> (copy, s)
    for (size_t c = 0; c < E.copies.size(); ++c) {
        E.fiber[E.copies[c]] = q.nf;
        for (auto& r : q.module.relations.row) {
            SVec v = r;
            for (auto& e : v) e.first += (int)c * dd;
            E.relations.insert(v);
        }
        for (auto& [a, b] : degenerate_pairs(E.copies[c], RS)) {
            sign[{a, b}] = {(int)c, 1};
            sign[{b, a}] = {(int)c, a2 ? -1 : 1};
        }
    }
    const GradedLieAlgebra& L = E.L;
    int N = L.dim;
    auto root = [&](int idx) {
        IVec r(K, 0);
        r[idx / dd / K] += 1;
        r[idx / dd % K] -= 1;
        return r;
    };
    E.psi.assign((size_t)N * N, {});
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            std::vector<Entry> t;
            for (auto& [x, a] : L.real[i]) {
                IVec al = root(x);
                for (auto& [y, b] : L.real[j]) {
                    auto it = sign.find({al, root(y)});
                    if (it == sign.end()) continue;
                    auto [c, s] = it->second;
                    for (auto& [k, v] : D.prod(x % dd, y % dd)) t.emplace_back(c * dd + k, s * a * b * v);
                }
            }
            E.psi[(size_t)i * N + j] = sorted(t, R);
        }
    verify_cocycle(E);
    // each copy of the fiber is generated by psi values and its relations
    for (size_t c = 0; c < E.copies.size(); ++c) {
        Span s(R);
        int lo = (int)c * dd, hi = lo + dd;
        for (auto& r : q.module.relations.row) s.insert(r);
        for (auto& v : E.psi) {
            SVec p;
            for (auto& [k, x] : v)
                if (k >= lo && k < hi) p.emplace_back(k - lo, x);
            if (!p.empty()) s.insert(p);
        }
        bool hit = true;
        for (int k = 0; k < dd; ++k) hit &= s.contains(sv_unit(k));
        E.hits[E.copies[c]] = hit;
    }
    if (R.is_field()) {
        std::set<int> piv;
        for (int c : E.relations.pivots()) piv.insert(c);
        std::map<int, int> zpos;
        std::vector<int> zbasis;
        for (int k = 0; k < zdim; ++k)
            if (!piv.count(k)) {
                zpos[k] = (int)zbasis.size();
                zbasis.push_back(k);
            }
        GradedLieAlgebra X;
        X.ring = R;
        X.name = L.name + "+psi";
        X.dim = N + (int)zbasis.size();
        X.labels = L.labels;
        for (int k : zbasis) X.labels.push_back("z" + vec_str(E.copies[k / dd]) + ":" + D.labels[k % dd]);
        X.br.assign((size_t)X.dim * X.dim, {});
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                SVec v = L.b(i, j);
                for (auto& [k, x] : E.relations.reduce(E.value(i, j))) v.emplace_back(N + zpos.at(k), x);
                X.br[(size_t)i * X.dim + j] = v;
            }
        E.extension = X;
    }
    return E;
}

// ---- star kernel ----

StarKernel star_kernel(int n, const StructureAlgebra& D)
{
    if (n < 3) throw precondition_error("star_kernel needs at least three diagonal idempotents");
    JordanAlgebra J = hermitian_algebra(n, D);
    HermitianCoords hc = hermitian_coords(n, D);
    StarKernel out;
    out.S = star_module(J);
    out.hc = out.S.hc;
    std::vector<SVec> idem;
    for (int i = 0; i < n; ++i) idem.push_back(hermitian_entry(hc, i, i, D.one()));
    out.in_D0 = star_decomposition(J, out.S, idem).kernel_in_D0;
    if (n < 4 || !D.associative) return out;
    const BaseRing& R = D.ring;
    int dd = D.dim;
    // Cent(D) cap D_-
    SparseMatrix C(0, dd);
    {
        std::map<int, std::vector<Entry>> rows;
        for (int a = 0; a < dd; ++a) {
            for (auto& [k, x] : sv_add(D.bar(sv_unit(a)), sv_unit(a), R)) rows[k].emplace_back(a, x);
            for (int b = 0; b < dd; ++b)
                for (auto& [k, x] : commutator(D, sv_unit(a), sv_unit(b))) rows[dd * (b + 1) + k].emplace_back(a, x);
        }
        for (auto& [r, t] : rows) C.push_row(sorted(t, R));
    }
    std::vector<SVec> cent = kernel_basis(C, R);
    // variables: pairs (a, b) at a*dd + b, then the elements of cent
    int nv = dd * dd + (int)cent.size();
    std::vector<SVec> psi1(nv), psi2(nv);
    SVec one01 = hermitian_entry(hc, 0, 1, D.one());
    for (int a = 0; a < dd; ++a)
        for (int b = 0; b < dd; ++b) {
            SVec ea = sv_unit(a), eb = sv_unit(b);
            psi1[a * dd + b] = sv_add(commutator(D, D.bar(ea), eb), commutator(D, ea, D.bar(eb)), R);
            SVec T = sv_sub(out.S.star(hermitian_entry(hc, 0, 1, ea), hermitian_entry(hc, 0, 1, eb)),
                            out.S.star(one01, hermitian_entry(hc, 0, 1, D.mul(D.bar(ea), eb))), R);
            psi2[a * dd + b] = T;
        }
    for (size_t c = 0; c < cent.size(); ++c) {
        psi1[dd * dd + c] = sv_scale(cent[c], 2 * n, R);
        SVec h;
        for (int j = 1; j < n; ++j)
            h = sv_add(h, out.S.star(hermitian_entry(hc, 0, j, D.one()), hermitian_entry(hc, 0, j, cent[c])), R);
        psi2[dd * dd + c] = h;
    }
    std::map<int, std::vector<Entry>> rows;
    for (int v = 0; v < nv; ++v)
        for (auto& [k, x] : psi1[v]) rows[k].emplace_back(v, x);
    SparseMatrix M(0, nv);
    for (auto& [k, t] : rows) M.push_row(sorted(t, R));
    std::vector<SVec> described;
    for (auto& w : kernel_basis(M, R)) {
        SVec img;
        for (auto& [v, x] : w) sv_axpy(img, x, psi2[v], R);
        if (!img.empty()) described.push_back(img);
    }
    out.described_dim = rank_of(described, R);
    out.cross_checked = true;
    out.cross_check_ok = same_span(described, out.S.kernel, R);
    return out;
}

}
