#include "rograd/jordan.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace rograd {

namespace {

IVec cat(IVec a, const IVec& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

IVec unit_vec(int n, std::initializer_list<std::pair<int, long>> c)
{
    IVec v(n, 0);
    for (auto [i, x] : c) v[i] += x;
    return v;
}

std::vector<Scalar> acc_new(int n)
{
    return std::vector<Scalar>(n);
}

SVec acc_done(std::vector<Scalar>& acc, const BaseRing& R)
{
    if (R.is_fp())
        for (auto& x : acc) x = R.norm(x);
    return sv_from_dense(acc);
}

void acc_add(std::vector<Scalar>& acc, const Scalar& c, const SVec& v)
{
    for (auto& [k, x] : v) acc[k] += c * x;
}

SparseMatrix rows_of(const Mat& m)
{
    SparseMatrix s(0, m.c);
    for (int i = 0; i < m.r; ++i) {
        std::vector<Scalar> row(m.a.begin() + (size_t)i * m.c, m.a.begin() + (size_t)(i + 1) * m.c);
        s.push_row(sv_from_dense(row));
    }
    return s;
}

BaseRing field_of(const BaseRing& R)
{
    return R.is_field() ? R : BaseRing::Q();
}

std::vector<SVec> column_span(const Mat& m, const BaseRing& R)
{
    std::vector<SVec> cols;
    for (int j = 0; j < m.c; ++j) cols.push_back(sv_from_dense(m.col(j)));
    return span_basis(cols, field_of(R));
}

bool in_span(const std::vector<SVec>& basis, const SVec& v, const BaseRing& R)
{
    Span s(field_of(R));
    for (auto& b : basis) s.insert(b);
    return s.contains(v);
}

std::string pair_name(int a, int b)
{
    if (a == 2 && b == 2) return "associated";
    if (a == 1 && b == 1) return "collinear";
    if (a == 0 && b == 0) return "orthogonal";
    if (a == 1 && b == 2) return "governed";
    if (a == 2 && b == 1) return "governs";
    return "unrelated";
}

}

SVec JordanPair::triple(int s, const SVec& x, const SVec& y, const SVec& z) const
{
    auto acc = acc_new(dim[s]);
    for (auto& [i, a] : x)
        for (auto& [j, b] : y)
            for (auto& [k, c] : z) acc_add(acc, a * b * c, t(s, i, j, k));
    return acc_done(acc, ring);
}

SVec JordanPair::Q(int s, const SVec& x, const SVec& y) const
{
    auto acc = acc_new(dim[s]);
    for (size_t p = 0; p < x.size(); ++p) {
        auto& [i, a] = x[p];
        for (auto& [j, b] : y) acc_add(acc, a * a * b, qd(s, i, j));
        for (size_t q = p + 1; q < x.size(); ++q) {
            auto& [k, c] = x[q];
            for (auto& [j, b] : y) acc_add(acc, a * c * b, t(s, i, j, k));
        }
    }
    return acc_done(acc, ring);
}

Mat JordanPair::D(int s, const SVec& x, const SVec& y) const
{
    Mat m(dim[s], dim[s]);
    for (int k = 0; k < dim[s]; ++k)
        for (auto& [i, v] : triple(s, x, y, sv_unit(k))) m(i, k) = v;
    return m;
}

Mat JordanPair::Qop(int s, const SVec& x) const
{
    Mat m(dim[s], dim[1 - s]);
    for (int j = 0; j < dim[1 - s]; ++j)
        for (auto& [i, v] : Q(s, x, sv_unit(j))) m(i, j) = v;
    return m;
}

json JordanPair::to_json() const
{
    auto tensor = [&](int s, bool cubic) {
        json out = json::array();
        int n = dim[s], m = dim[1 - s];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                if (!cubic) {
                    json v = json::array();
                    for (auto& [k, x] : qd(s, i, j)) v.push_back({k, scalar_str(x)});
                    if (!v.empty()) out.push_back({i, j, v});
                    continue;
                }
                for (int k = 0; k < n; ++k) {
                    json v = json::array();
                    for (auto& [l, x] : t(s, i, j, k)) v.push_back({l, scalar_str(x)});
                    if (!v.empty()) out.push_back({i, j, k, v});
                }
            }
        return out;
    };
    json j = {{"name", name}, {"ring", ring.name()}, {"dim", {dim[0], dim[1]}}};
    for (int s = 0; s < 2; ++s) {
        std::string key = s == 0 ? "plus" : "minus";
        j[key] = {{"labels", labels[s]}, {"degrees", degree[s]}, {"triple", tensor(s, true)},
                  {"quadratic", tensor(s, false)}};
    }
    return j;
}

int rect_index(int p, int q, const StructureAlgebra& D, int side, int r, int c, int k)
{
    int cols = side == 0 ? q : p;
    return (r * cols + c) * D.dim + k;
}

JordanPair rectangular_pair(int p, int q, const StructureAlgebra& D)
{
    if (p < 1 || q < 1) throw precondition_error("rectangular pair needs positive sizes");
    if (!D.unit) throw precondition_error("rectangular pair needs a unital coordinate algebra");
    if (!D.alternative) throw precondition_error("rectangular pair needs an alternative coordinate algebra");
    if (p + q >= 4 && !D.associative) throw precondition_error("rectangular pair of size >= 4 needs associative coordinates");
    const BaseRing& R = D.ring;
    int n = D.dim;
    JordanPair V;
    V.ring = R;
    V.name = "M(" + std::to_string(p) + "," + std::to_string(q) + ")";
    V.root_coords = p + q;
    int rows[2] = {p, q}, cols[2] = {q, p};
    for (int s = 0; s < 2; ++s) {
        V.dim[s] = p * q * n;
        for (int r = 0; r < rows[s]; ++r)
            for (int c = 0; c < cols[s]; ++c)
                for (int k = 0; k < n; ++k) {
                    // global row/column in the (p+q) x (p+q) matrix
                    int gr = s == 0 ? r : p + r, gc = s == 0 ? p + c : c;
                    V.labels[s].push_back("E" + std::to_string(gr + 1) + std::to_string(gc + 1) + ":" + D.labels[k]);
                    IVec aux = D.degree.empty() ? IVec{} : D.degree[k];
                    V.degree[s].push_back(cat(unit_vec(p + q, {{gr, 1}, {gc, -1}}), aux));
                }
    }
    // x = E_ab al (side s), y = E_cd be (other), z = E_ef ga (side s)
    // on V+: {xyz} = d_bc d_de E_af (al(be ga)) + d_fc d_da E_eb (ga(be al)), Q_x y = d_da d_bc E_ab (al(be al))
    // on V-: the same with (xy)z + (zy)x, Q_x y = (xy)x
    for (int s = 0; s < 2; ++s) {
        int o = 1 - s;
        V.T[s].assign((size_t)V.dim[s] * V.dim[o] * V.dim[s], {});
        V.Qd[s].assign((size_t)V.dim[s] * V.dim[o], {});
        for (int a = 0; a < rows[s]; ++a)
            for (int b = 0; b < cols[s]; ++b)
                for (int ka = 0; ka < n; ++ka) {
                    int xi = rect_index(p, q, D, s, a, b, ka);
                    SVec al = sv_unit(ka);
                    // y = E_ba be is the only y with nonzero Q_x y
                    for (int kb = 0; kb < n; ++kb) {
                        int yi = rect_index(p, q, D, o, b, a, kb);
                        SVec v = s == 0 ? D.mul(al, D.mul(sv_unit(kb), al)) : D.mul(D.mul(al, sv_unit(kb)), al);
                        SVec out;
                        for (auto& [k, x] : v) out.push_back({rect_index(p, q, D, s, a, b, k), x});
                        V.Qd[s][(size_t)xi * V.dim[o] + yi] = out;
                    }
                    for (int c = 0; c < rows[o]; ++c)
                        for (int d = 0; d < cols[o]; ++d)
                            for (int kb = 0; kb < n; ++kb) {
                                int yi = rect_index(p, q, D, o, c, d, kb);
                                for (int e = 0; e < rows[s]; ++e)
                                    for (int f = 0; f < cols[s]; ++f)
                                        for (int kc = 0; kc < n; ++kc) {
                                            int zi = rect_index(p, q, D, s, e, f, kc);
                                            auto acc = acc_new(V.dim[s]);
                                            if (b == c && d == e) {
                                                SVec v = s == 0 ? D.mul(al, D.prod(kb, kc)) : D.mul(D.prod(ka, kb), sv_unit(kc));
                                                for (auto& [k, x] : v) acc[rect_index(p, q, D, s, a, f, k)] += x;
                                            }
                                            if (f == c && d == a) {
                                                SVec v = s == 0 ? D.mul(sv_unit(kc), D.prod(kb, ka)) : D.mul(D.prod(kc, kb), al);
                                                for (auto& [k, x] : v) acc[rect_index(p, q, D, s, e, b, k)] += x;
                                            }
                                            V.T[s][((size_t)xi * V.dim[o] + yi) * V.dim[s] + zi] = acc_done(acc, R);
                                        }
                            }
                }
    }
    return V;
}

SVec JordanAlgebra::circle(const SVec& a, const SVec& b) const
{
    auto acc = acc_new(dim);
    for (auto& [i, x] : a)
        for (auto& [j, y] : b) acc_add(acc, x * y, c(i, j));
    return acc_done(acc, ring);
}

Mat JordanAlgebra::Lcirc(const SVec& a) const
{
    Mat m(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (auto& [i, v] : circle(a, sv_unit(j))) m(i, j) = v;
    return m;
}

SVec JordanAlgebra::U(const SVec& x, const SVec& y) const
{
    if (!ring.invertible(2)) throw precondition_error("U operator from the circle product needs 1/2");
    SVec a = sv_scale(circle(x, circle(x, y)), ring.inv(2), ring);
    SVec b = sv_scale(circle(circle(x, x), y), ring.inv(4), ring);
    return sv_sub(a, b, ring);
}

SVec JordanAlgebra::triple(const SVec& a, const SVec& b, const SVec& c) const
{
    if (!ring.invertible(2)) throw precondition_error("triple product from the circle product needs 1/2");
    SVec s = sv_add(circle(a, circle(b, c)), circle(c, circle(b, a)), ring);
    s = sv_sub(s, circle(b, circle(c, a)), ring);
    return sv_scale(s, ring.inv(2), ring);
}

JordanPair JordanAlgebra::pair() const
{
    JordanPair V;
    V.ring = ring;
    V.name = "(" + name + ", " + name + ")";
    V.root_coords = root_coords;
    for (int s = 0; s < 2; ++s) {
        V.dim[s] = dim;
        V.labels[s] = labels;
        for (auto& d : degree) {
            IVec e = d;
            if (s == 1)
                for (int k = 0; k < root_coords && k < (int)e.size(); ++k) e[k] = -e[k];
            V.degree[s].push_back(e);
        }
    }
    std::vector<SVec> T((size_t)dim * dim * dim), Qd((size_t)dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Qd[(size_t)i * dim + j] = U(sv_unit(i), sv_unit(j));
            for (int k = i; k < dim; ++k) {
                SVec v = triple(sv_unit(i), sv_unit(j), sv_unit(k));
                T[((size_t)i * dim + j) * dim + k] = v;
                T[((size_t)k * dim + j) * dim + i] = v;
            }
        }
    V.T[0] = V.T[1] = T;
    V.Qd[0] = V.Qd[1] = Qd;
    return V;
}

json JordanAlgebra::to_json() const
{
    json table = json::array(), uop = json::array(), u = json::array();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            json v = json::array();
            for (auto& [k, x] : c(i, j)) v.push_back({k, scalar_str(x)});
            if (!v.empty()) table.push_back({i, j, v});
            if (ring.invertible(2)) {
                json w = json::array();
                for (auto& [k, x] : U(sv_unit(i), sv_unit(j))) w.push_back({k, scalar_str(x)});
                if (!w.empty()) uop.push_back({i, j, w});
            }
        }
    for (auto& [k, x] : unit) u.push_back({k, scalar_str(x)});
    return {{"name", name}, {"ring", ring.name()}, {"dim", dim}, {"labels", labels},
            {"unit", u},    {"table", table},      {"u_op", uop}, {"degrees", degree}};
}

int HermitianCoords::diag_index(int i, int h) const
{
    return i * (int)sym.size() + h;
}

int HermitianCoords::offdiag_index(int i, int j, int k) const
{
    if (i > j) std::swap(i, j);
    // pairs (i, j), i < j, in lexicographic order
    int before = i * n - i * (i + 1) / 2 + (j - i - 1);
    return n * (int)sym.size() + before * D->dim + k;
}

SVec hermitian_entry(const HermitianCoords& hc, int i, int j, const SVec& d)
{
    const StructureAlgebra& D = *hc.D;
    SVec out;
    if (i == j) {
        // reduce d + 0 against sym[h] + e_h; the tail holds minus the coordinates
        BaseRing F = D.ring.is_field() ? D.ring : BaseRing::Q();
        Span s(F);
        for (size_t h = 0; h < hc.sym.size(); ++h) {
            SVec v = hc.sym[h];
            v.push_back({D.dim + (int)h, Scalar(1)});
            s.insert(v);
        }
        for (auto& [k, x] : s.reduce(d)) {
            if (k < D.dim) throw precondition_error("diagonal entry is not symmetric");
            out.push_back({hc.diag_index(i, k - D.dim), F.norm(-x)});
        }
        return out;
    }
    SVec v = i < j ? d : D.bar(d);
    for (auto& [k, x] : v) out.push_back({hc.offdiag_index(i, j, k), x});
    return out;
}

HermitianCoords hermitian_coords(int n, const StructureAlgebra& D)
{
    if (!D.involution) throw precondition_error("hermitian matrices need an involution");
    HermitianCoords hc;
    hc.n = n;
    hc.D = &D;
    SparseMatrix M(0, D.dim);
    for (int i = 0; i < D.dim; ++i) {
        std::vector<Scalar> row(D.dim);
        for (int j = 0; j < D.dim; ++j) row[j] = (*D.involution)(i, j) - (i == j ? 1 : 0);
        M.push_row(sv_from_dense(row));
    }
    hc.sym = span_basis(kernel_basis(M, D.ring), D.ring);
    return hc;
}

JordanAlgebra hermitian_algebra(int n, const StructureAlgebra& D)
{
    if (n < 3) throw precondition_error("hermitian algebra needs n >= 3");
    if (!D.alternative) throw precondition_error("hermitian algebra needs alternative coordinates");
    if (n >= 4 && !D.associative) throw precondition_error("hermitian algebra of size >= 4 needs associative coordinates");
    if (!D.ring.is_field() || !D.ring.invertible(2)) throw precondition_error("hermitian algebra needs 1/2 in a base field");
    if (!D.unit) throw precondition_error("hermitian algebra needs a unit");
    const BaseRing& R = D.ring;
    auto hc = hermitian_coords(n, D);
    // the involution must be nuclear: symmetric elements lie in the nucleus
    for (auto& h : hc.sym)
        for (int a = 0; a < D.dim; ++a)
            for (int b = 0; b < D.dim; ++b)
                if (!associator(D, h, sv_unit(a), sv_unit(b)).empty() ||
                    !associator(D, sv_unit(a), h, sv_unit(b)).empty())
                    throw precondition_error("involution is not nuclear");
    int nh = (int)hc.sym.size();
    JordanAlgebra J;
    J.ring = R;
    J.name = "H" + std::to_string(n);
    J.dim = n * nh + n * (n - 1) / 2 * D.dim;
    J.root_coords = n;
    J.labels.resize(J.dim);
    J.degree.resize(J.dim);
    Span sym_span(R);
    for (auto& h : hc.sym) sym_span.insert(h);
    auto aux_of = [&](const SVec& v) {
        if (D.degree.empty() || v.empty()) return IVec{};
        IVec d = D.degree[v[0].first];
        for (auto& [k, x] : v)
            if (D.degree[k] != d) throw precondition_error("symmetric basis element is not homogeneous");
        return d;
    };
    for (int i = 0; i < n; ++i)
        for (int h = 0; h < nh; ++h) {
            int idx = hc.diag_index(i, h);
            J.labels[idx] = (nh == 1 ? std::string("1") : "h" + std::to_string(h + 1)) + "[" + std::to_string(i + 1) +
                            std::to_string(i + 1) + "]";
            J.degree[idx] = cat(unit_vec(n, {{i, 2}}), aux_of(hc.sym[h]));
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < D.dim; ++k) {
                int idx = hc.offdiag_index(i, j, k);
                J.labels[idx] = D.labels[k] + "[" + std::to_string(i + 1) + std::to_string(j + 1) + "]";
                J.degree[idx] = cat(unit_vec(n, {{i, 1}, {j, 1}}), D.degree.empty() ? IVec{} : D.degree[k]);
            }
    // basis element -> n x n matrix over D
    auto to_matrix = [&](int idx) {
        std::vector<SVec> m((size_t)n * n);
        if (idx < n * nh) {
            int i = idx / nh, h = idx % nh;
            m[i * n + i] = hc.sym[h];
        } else {
            int rest = idx - n * nh, pr = rest / D.dim, k = rest % D.dim;
            int i = 0, j = 1;
            for (int c = 0; c < pr; ++c)
                if (++j == n) ++i, j = i + 1;
            m[i * n + j] = sv_unit(k);
            m[j * n + i] = D.bar(sv_unit(k));
        }
        return m;
    };
    auto from_matrix = [&](const std::vector<SVec>& m) {
        SVec out;
        for (int i = 0; i < n; ++i) {
            for (auto& [h, x] : sym_span.coords(m[i * n + i])) out.push_back({hc.diag_index(i, h), x});
            for (int j = i + 1; j < n; ++j) {
                if (D.bar(m[i * n + j]) != m[j * n + i]) throw precondition_error("product is not hermitian");
                for (auto& [k, x] : m[i * n + j]) out.push_back({hc.offdiag_index(i, j, k), x});
            }
        }
        std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        return out;
    };
    std::vector<std::vector<SVec>> mats(J.dim);
    for (int i = 0; i < J.dim; ++i) mats[i] = to_matrix(i);
    auto mprod = [&](const std::vector<SVec>& x, const std::vector<SVec>& y, std::vector<SVec>& out) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (x[i * n + j].empty()) continue;
                for (int k = 0; k < n; ++k)
                    if (!y[j * n + k].empty()) out[i * n + k] = sv_add(out[i * n + k], D.mul(x[i * n + j], y[j * n + k]), R);
            }
    };
    J.circ.assign((size_t)J.dim * J.dim, {});
    for (int a = 0; a < J.dim; ++a)
        for (int b = a; b < J.dim; ++b) {
            std::vector<SVec> m((size_t)n * n);
            mprod(mats[a], mats[b], m);
            mprod(mats[b], mats[a], m);
            SVec v = from_matrix(m);
            J.circ[(size_t)a * J.dim + b] = v;
            J.circ[(size_t)b * J.dim + a] = v;
        }
    SVec one_c = sym_span.coords(D.one());
    for (int i = 0; i < n; ++i)
        for (auto& [h, x] : one_c) J.unit.push_back({hc.diag_index(i, h), x});
    std::sort(J.unit.begin(), J.unit.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return J;
}

JordanAlgebra albert_algebra(BaseRing R)
{
    if (!R.is_field() || !R.invertible(2) || !R.invertible(3))
        throw precondition_error("Albert algebra needs 1/2 and 1/3 in a base field");
    auto O = split_octonions(R);
    JordanAlgebra J;
    J.ring = R;
    J.name = "Albert";
    J.dim = 27;
    J.root_coords = 3;
    J.circ.assign(27 * 27, {});
    J.labels.resize(27);
    J.degree.resize(27);
    auto set = [&](int a, int b, SVec v) {
        J.circ[a * 27 + b] = v;
        J.circ[b * 27 + a] = v;
    };
    auto P = [&](int i, const SVec& x) {
        SVec v;
        for (auto& [k, c] : x) v.push_back({albert_p(i, k), c});
        return v;
    };
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        J.labels[albert_e(i)] = "e" + std::to_string(i + 1);
        J.degree[albert_e(i)] = cat(unit_vec(3, {{i, 2}}), {0, 0});
        set(albert_e(i), albert_e(i), sv_scale(sv_unit(albert_e(i)), 2, R));
        for (int m = 0; m < 8; ++m) {
            int pi = albert_p(i, m);
            J.labels[pi] = "P" + std::to_string(i + 1) + "(" + O.labels[m] + ")";
            J.degree[pi] = cat(unit_vec(3, {{j, 1}, {k, 1}}), O.degree[m]);
            set(albert_e(j), pi, sv_unit(pi));
            set(albert_e(k), pi, sv_unit(pi));
            for (int l = 0; l < 8; ++l) {
                Scalar nn = O.norm(sv_unit(m), sv_unit(l));
                if (nn != 0) set(pi, albert_p(i, l), SVec{{albert_e(j), nn}, {albert_e(k), nn}});
                // (i, j, k) cyclic: P_i(x) o P_j(y) = P_k(y^ x^)
                set(pi, albert_p(j, l), P(k, O.mul(O.bar(sv_unit(l)), O.bar(sv_unit(m)))));
            }
        }
    }
    J.unit = {{0, Scalar(1)}, {1, Scalar(1)}, {2, Scalar(1)}};
    return J;
}

PeirceDecomposition peirce(const JordanAlgebra& J, const std::vector<SVec>& idem)
{
    const BaseRing& R = J.ring;
    int n = (int)idem.size();
    for (int i = 0; i < n; ++i) {
        if (J.circle(idem[i], idem[i]) != sv_scale(idem[i], 2, R)) throw precondition_error("element is not idempotent");
        for (int j = i + 1; j < n; ++j)
            if (!J.circle(idem[i], idem[j]).empty()) throw precondition_error("idempotents are not orthogonal");
    }
    std::vector<Mat> L;
    for (auto& e : idem) L.push_back(J.Lcirc(e));
    auto shifted = [&](int i, long c) {
        Mat m = L[i];
        for (int k = 0; k < J.dim; ++k) m(k, k) = R.norm(m(k, k) - c);
        return m;
    };
    BaseRing F = field_of(R);
    PeirceDecomposition P;
    P.n = n;
    std::vector<SVec> all;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<SVec> sp;
            if (i == j) {
                sp = kernel_basis(rows_of(shifted(i, 2)), F);
            } else {
                SparseMatrix M = rows_of(shifted(i, 1));
                for (auto& r : rows_of(shifted(j, 1)).row) M.push_row(r);
                sp = kernel_basis(M, F);
            }
            P.spaces[{i, j}] = sp;
            all.insert(all.end(), sp.begin(), sp.end());
        }
    if ((int)all.size() != J.dim || rank_of(all, F) != J.dim)
        throw precondition_error("idempotent family does not decompose J");
    auto space = [&](int i, int j) -> const std::vector<SVec>& { return P.spaces.at({std::min(i, j), std::max(i, j)}); };
    auto check = [&](int rule, int i, int j, int k, int l, std::vector<SVec> target) {
        Span s(F);
        for (auto& t : target) s.insert(t);
        for (auto& x : space(i, j))
            for (auto& y : space(k, l))
                if (!s.contains(J.circle(x, y))) {
                    ++P.rule_violations;
                    if (P.failures.size() < 10)
                        P.failures.push_back("rule " + std::to_string(rule) + " fails on J" + std::to_string(i + 1) +
                                             std::to_string(j + 1) + " o J" + std::to_string(k + 1) +
                                             std::to_string(l + 1));
                }
    };
    for (int i = 0; i < n; ++i) {
        check(2, i, i, i, i, space(i, i));
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            check(1, i, i, i, j, space(i, j));
            auto t = space(i, i);
            t.insert(t.end(), space(j, j).begin(), space(j, j).end());
            check(5, i, j, i, j, t);
            for (int k = 0; k < n; ++k)
                if (k != i && k != j) check(3, i, j, j, k, space(i, k));
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = k; l < n; ++l)
                    if (k != i && k != j && l != i && l != j) check(4, i, j, k, l, {});
    return P;
}

bool PairPeirce::contains(int i, const PairElement& x, const BaseRing& R) const
{
    return in_span(V[i][0], x.plus, R) && in_span(V[i][1], x.minus, R);
}

PairPeirce pair_idempotent_peirce(const JordanPair& V, const PairElement& e)
{
    const BaseRing& R = V.ring;
    if (V.Q(0, e.plus, e.minus) != e.plus || V.Q(1, e.minus, e.plus) != e.minus)
        throw precondition_error("element is not an idempotent of the pair");
    BaseRing F = field_of(R);
    PairPeirce P;
    for (int s = 0; s < 2; ++s) {
        const SVec& es = s == 0 ? e.plus : e.minus;
        const SVec& eo = s == 0 ? e.minus : e.plus;
        P.V[2][s] = column_span(V.Qop(s, es), R);
        Mat d = V.D(s, es, eo);
        SparseMatrix M0 = rows_of(d);
        for (auto& r : rows_of(V.Qop(1 - s, eo)).row) M0.push_row(r);
        P.V[0][s] = kernel_basis(M0, F);
        for (int k = 0; k < V.dim[s]; ++k) d(k, k) -= 1;
        P.V[1][s] = kernel_basis(rows_of(d), F);
    }
    return P;
}

GridReport verify_grid(const JordanPair& V, const std::vector<PairElement>& family, const RootSystem& R,
                       const std::vector<IVec>& R1)
{
    if (family.size() != R1.size()) throw precondition_error("grid family must be indexed by R1");
    GridReport rep;
    int m = (int)family.size();
    std::vector<PairPeirce> P;
    for (auto& e : family) P.push_back(pair_idempotent_peirce(V, e));
    auto level = [&](int a, int b) {
        for (int i = 2; i >= 0; --i)
            if (P[b].contains(i, family[a], V.ring)) return i;
        return -1;
    };
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            long ea = R.pairing(R1[a], R1[b]), eb = R.pairing(R1[b], R1[a]);
            int la = level(a, b), lb = level(b, a);
            if (la != ea || lb != eb) {
                rep.ok = false;
                rep.failures.push_back(pair_name(la, lb) + " ≠ expected " + pair_name((int)ea, (int)eb) +
                                       " for " + R.eps_str(R1[a]) + ", " + R.eps_str(R1[b]));
            }
        }
    BaseRing F = field_of(V.ring);
    for (int s = 0; s < 2; ++s) {
        std::vector<SVec> all;
        for (int a = 0; a < m; ++a) {
            std::vector<SVec> cur;
            bool first = true;
            for (int b = 0; b < m; ++b) {
                long k = R.pairing(R1[a], R1[b]);
                if (k < 0 || k > 2) {
                    rep.ok = false;
                    rep.failures.push_back("pairing out of range for " + R.eps_str(R1[a]));
                    continue;
                }
                auto& sp = P[b].V[k][s];
                cur = first ? sp : intersect_spaces(cur, sp, V.dim[s], F);
                first = false;
            }
            rep.joint[s][R1[a]] = cur;
            all.insert(all.end(), cur.begin(), cur.end());
        }
        if (rank_of(all, F) != V.dim[s]) {
            rep.ok = false;
            rep.failures.push_back(std::string("joint Peirce spaces do not span V") + (s == 0 ? "+" : "-"));
        }
    }
    return rep;
}

std::vector<PairElement> rectangular_grid(int p, int q, const StructureAlgebra& D, std::vector<IVec>& R1)
{
    R1.clear();
    std::vector<PairElement> fam;
    SVec one = D.one();
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            R1.push_back(unit_vec(p + q, {{i, 1}, {p + j, -1}}));
            PairElement e;
            for (auto& [k, x] : one) {
                e.plus.push_back({rect_index(p, q, D, 0, i, j, k), x});
                e.minus.push_back({rect_index(p, q, D, 1, j, i, k), x});
            }
            fam.push_back(e);
        }
    return fam;
}

std::vector<PairElement> hermitian_grid(int n, const StructureAlgebra& D, std::vector<IVec>& R1)
{
    auto hc = hermitian_coords(n, D);
    Span s(D.ring);
    for (auto& h : hc.sym) s.insert(h);
    SVec one = D.one(), one_h = s.coords(one);
    R1.clear();
    std::vector<PairElement> fam;
    for (int i = 0; i < n; ++i) {
        R1.push_back(unit_vec(n, {{i, 2}}));
        SVec v;
        for (auto& [h, x] : one_h) v.push_back({hc.diag_index(i, h), x});
        fam.push_back({v, v});
        for (int j = i + 1; j < n; ++j) {
            R1.push_back(unit_vec(n, {{i, 1}, {j, 1}}));
            SVec w;
            for (auto& [k, x] : one) w.push_back({hc.offdiag_index(i, j, k), x});
            fam.push_back({w, w});
        }
    }
    return fam;
}

// ---- exhaustive identity checker ----

namespace {

struct Term {
    uint32_t m;
    int i;
    long long c;
};
using Poly = std::vector<Term>;

struct IVecHash {
    size_t operator()(const IVec& v) const
    {
        size_t h = 1469598103934665603ull;
        for (long x : v) h = (h ^ (size_t)(x + 0x9e37)) * 1099511628211ull;
        return h;
    }
};

// variables: a_1..a_4 in 4-bit fields 0..3, b_1..b_2 in fields 4..5
constexpr int kBVar = 4;

class Engine {
public:
    explicit Engine(const JordanPair& V) : V_(V)
    {
        if (V.ring.is_fp()) p_ = V.ring.p;
        mpz_class den = 1;
        for (int s = 0; s < 2; ++s) {
            for (auto& v : V.T[s])
                for (auto& [k, x] : v) den = lcm(den, mpz_class(x.get_den()));
            for (auto& v : V.Qd[s])
                for (auto& [k, x] : v) den = lcm(den, mpz_class(x.get_den()));
        }
        for (int s = 0; s < 2; ++s) {
            flatten(V.T[s], den, toff_[s], tidx_[s], tval_[s]);
            flatten(V.Qd[s], den, qoff_[s], qidx_[s], qval_[s]);
        }
    }

    bool overflow = false;

    Poly var(const std::vector<int>& idx, int first_field) const
    {
        Poly x;
        for (size_t k = 0; k < idx.size(); ++k) x.push_back({1u << (4 * (first_field + k)), idx[k], 1});
        return x;
    }

    Poly Q(int s, const Poly& X, const Poly& Y)
    {
        Poly out;
        int dimo = V_.dim[1 - s], dims = V_.dim[s];
        for (size_t p = 0; p < X.size(); ++p) {
            const Term& a = X[p];
            long long aa = mul(a.c, a.c);
            for (auto& y : Y) {
                size_t r = (size_t)a.i * dimo + y.i;
                long long c = mul(aa, y.c);
                uint32_t m = 2 * a.m + y.m;
                for (int t = qoff_[s][r]; t < qoff_[s][r + 1]; ++t) out.push_back({m, qidx_[s][t], mul(c, qval_[s][t])});
            }
            for (size_t q = p + 1; q < X.size(); ++q) {
                const Term& b = X[q];
                long long ab = mul(a.c, b.c);
                for (auto& y : Y) {
                    size_t r = ((size_t)a.i * dimo + y.i) * dims + b.i;
                    long long c = mul(ab, y.c);
                    uint32_t m = a.m + b.m + y.m;
                    for (int t = toff_[s][r]; t < toff_[s][r + 1]; ++t)
                        out.push_back({m, tidx_[s][t], mul(c, tval_[s][t])});
                }
            }
        }
        normalize(out);
        return out;
    }

    Poly T(int s, const Poly& X, const Poly& Y, const Poly& Z)
    {
        Poly out;
        int dimo = V_.dim[1 - s], dims = V_.dim[s];
        for (auto& x : X)
            for (auto& y : Y) {
                long long xy = mul(x.c, y.c);
                for (auto& z : Z) {
                    size_t r = ((size_t)x.i * dimo + y.i) * dims + z.i;
                    long long c = mul(xy, z.c);
                    uint32_t m = x.m + y.m + z.m;
                    for (int t = toff_[s][r]; t < toff_[s][r + 1]; ++t)
                        out.push_back({m, tidx_[s][t], mul(c, tval_[s][t])});
                }
            }
        normalize(out);
        return out;
    }

    Poly sub(Poly a, const Poly& b)
    {
        for (auto& t : b) a.push_back({t.m, t.i, neg(t.c)});
        normalize(a);
        return a;
    }

private:
    const JordanPair& V_;
    long long p_ = 0;
    std::vector<int> toff_[2], tidx_[2], qoff_[2], qidx_[2];
    std::vector<long long> tval_[2], qval_[2];

    void flatten(const std::vector<SVec>& src, const mpz_class& den, std::vector<int>& off, std::vector<int>& idx,
                 std::vector<long long>& val)
    {
        off.assign(src.size() + 1, 0);
        for (size_t r = 0; r < src.size(); ++r) {
            for (auto& [k, x] : src[r]) {
                mpq_class y = x * den;
                if (y.get_den() != 1 || !y.get_num().fits_slong_p())
                    throw precondition_error("structure constants too large for the identity checker");
                idx.push_back(k);
                val.push_back(y.get_num().get_si());
            }
            off[r + 1] = (int)idx.size();
        }
    }

    long long mul(long long a, long long b)
    {
        if (p_) return (long long)((__int128)a * b % p_);
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) overflow = true;
        return r;
    }

    long long neg(long long a) const { return p_ ? (p_ - a) % p_ : -a; }

    void normalize(Poly& x)
    {
        std::sort(x.begin(), x.end(), [](const Term& a, const Term& b) { return a.m != b.m ? a.m < b.m : a.i < b.i; });
        size_t w = 0;
        for (size_t r = 0; r < x.size();) {
            Term t = x[r++];
            while (r < x.size() && x[r].m == t.m && x[r].i == t.i) {
                if (p_) t.c = (t.c + x[r].c) % p_;
                else if (__builtin_add_overflow(t.c, x[r].c, &t.c)) overflow = true;
                ++r;
            }
            if (t.c != 0) x[w++] = t;
        }
        x.resize(w);
    }
};

void subsets(int n, int maxk, std::vector<std::vector<int>>& out)
{
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (!cur.empty()) out.push_back(cur);
        if ((int)cur.size() == maxk) return;
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// exponent tuples with m positive parts summing to d
void compositions(int m, int d, std::vector<std::vector<int>>& out)
{
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int parts) {
        if (parts == 1) {
            cur.push_back(left);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (int e = 1; e <= left - parts + 1; ++e) {
            cur.push_back(e);
            rec(left - e, parts - 1);
            cur.pop_back();
        }
    };
    if (m <= d) rec(d, m);
}

bool pair_is_graded(const JordanPair& V)
{
    for (int s = 0; s < 2; ++s) {
        if ((int)V.degree[s].size() != V.dim[s]) return false;
        int o = 1 - s;
        for (int i = 0; i < V.dim[s]; ++i)
            for (int j = 0; j < V.dim[o]; ++j) {
                IVec dij = add(V.degree[s][i], V.degree[o][j]);
                for (auto& [k, x] : V.qd(s, i, j))
                    if (add(dij, V.degree[s][i]) != V.degree[s][k]) return false;
                for (int l = 0; l < V.dim[s]; ++l)
                    for (auto& [k, x] : V.t(s, i, j, l))
                        if (add(dij, V.degree[s][l]) != V.degree[s][k]) return false;
            }
    }
    return true;
}

}

IdentityReport check_pair_identities(const JordanPair& V)
{
    IdentityReport rep;
    Engine E(V);
    bool graded = pair_is_graded(V);
    // identity: degrees in a and b, side of c
    struct Id {
        const char* name;
        int da, db;
        bool c_same;
    };
    const Id ids[3] = {{"JP1", 3, 1, false}, {"JP2", 2, 2, true}, {"JP3", 4, 2, false}};
    for (int sg = 0; sg < 2; ++sg) {
        int o = 1 - sg;
        for (auto& id : ids) {
            int cs = id.c_same ? sg : o;
            std::vector<std::vector<int>> As, Bs;
            subsets(V.dim[sg], id.da, As);
            subsets(V.dim[o], id.db, Bs);
            // c candidates by degree, and the reachable set W = supp(out) - deg(c)
            std::unordered_map<IVec, std::vector<int>, IVecHash> c_by_deg;
            std::unordered_set<IVec, IVecHash> out_supp, W;
            if (graded) {
                for (int c = 0; c < V.dim[cs]; ++c) c_by_deg[V.degree[cs][c]].push_back(c);
                for (auto& d : V.degree[sg]) out_supp.insert(d);
                for (auto& s : out_supp)
                    for (auto& [dc, l] : c_by_deg) W.insert(sub(s, dc));
            }
            auto pattern_sums = [&](const std::vector<int>& S, int d, int side) {
                std::vector<IVec> sums;
                std::vector<std::vector<int>> comp;
                compositions((int)S.size(), d, comp);
                for (auto& e : comp) {
                    IVec v(V.degree[side].empty() ? 0 : V.degree[side][S[0]].size(), 0);
                    for (size_t k = 0; k < S.size(); ++k) v = add(v, mul(e[k], V.degree[side][S[k]]));
                    sums.push_back(v);
                }
                return sums;
            };
            std::vector<std::vector<IVec>> Bsums;
            if (graded)
                for (auto& B : Bs) Bsums.push_back(pattern_sums(B, id.db, o));
            for (auto& A : As) {
                std::vector<IVec> asums;
                if (graded) asums = pattern_sums(A, id.da, sg);
                Poly a = E.var(A, 0);
                for (size_t bi = 0; bi < Bs.size(); ++bi) {
                    std::set<int> cands;
                    if (graded) {
                        for (auto& sa : asums)
                            for (auto& sb : Bsums[bi]) {
                                IVec ab = add(sa, sb);
                                if (!W.count(ab)) continue;
                                for (auto& s : out_supp) {
                                    auto it = c_by_deg.find(sub(s, ab));
                                    if (it != c_by_deg.end()) cands.insert(it->second.begin(), it->second.end());
                                }
                            }
                        if (cands.empty()) continue;
                    } else {
                        for (int c = 0; c < V.dim[cs]; ++c) cands.insert(c);
                    }
                    Poly b = E.var(Bs[bi], kBVar);
                    Poly qab;
                    if (id.da != 3) qab = E.Q(sg, a, b);
                    for (int c : cands) {
                        Poly cc{{0u, c, 1}};
                        Poly lhs, rhs;
                        if (id.da == 3) {
                            lhs = E.T(sg, a, b, E.Q(sg, a, cc));
                            rhs = E.Q(sg, a, E.T(o, b, a, cc));
                        } else if (id.da == 2) {
                            lhs = E.T(sg, qab, b, cc);
                            rhs = E.T(sg, a, E.Q(o, b, a), cc);
                        } else {
                            lhs = E.Q(sg, qab, cc);
                            rhs = E.Q(sg, a, E.Q(o, b, E.Q(sg, a, cc)));
                        }
                        ++rep.tuples;
                        Poly diff = E.sub(lhs, rhs);
                        if (!diff.empty()) {
                            rep.violations += (long)diff.size();
                            if (rep.failures.size() < 10) {
                                std::string msg = std::string(id.name) + (sg == 0 ? " (+)" : " (-)") + " a={";
                                for (int x : A) msg += V.labels[sg][x] + " ";
                                msg += "} b={";
                                for (int x : Bs[bi]) msg += V.labels[o][x] + " ";
                                msg += "} c=" + V.labels[cs][c];
                                rep.failures.push_back(msg);
                            }
                        }
                    }
                }
            }
        }
    }
    if (E.overflow) {
        rep.violations += 1;
        rep.failures.push_back("integer overflow in the identity checker");
    }
    return rep;
}

}
