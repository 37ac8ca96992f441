#include "rograd/algebra.hpp"

namespace rograd {

namespace {

Mat op_from(const StructureAlgebra& A, const SVec& a, bool left)
{
    Mat m(A.dim, A.dim);
    for (int j = 0; j < A.dim; ++j) {
        SVec v = left ? A.mul(a, sv_unit(j)) : A.mul(sv_unit(j), a);
        for (auto& [i, x] : v) m(i, j) = x;
    }
    return m;
}

SVec col_vec(const Mat& m, int j)
{
    return sv_from_dense(m.col(j));
}

bool basis_triples_vanish(const StructureAlgebra& A, bool alt)
{
    int n = A.dim;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                SVec x = sv_unit(i), y = sv_unit(j), z = sv_unit(k);
                SVec s = associator(A, x, y, z);
                if (!alt) {
                    if (!s.empty()) return false;
                    continue;
                }
                // linearized left and right alternative laws
                if (!sv_add(s, associator(A, y, x, z), A.ring).empty()) return false;
                if (!sv_add(s, associator(A, x, z, y), A.ring).empty()) return false;
                if (i == j && !s.empty()) return false;
                if (j == k && !s.empty()) return false;
            }
    return true;
}

}

SVec StructureAlgebra::mul(const SVec& a, const SVec& b) const
{
    std::vector<Scalar> acc(dim);
    for (auto& [i, x] : a)
        for (auto& [j, y] : b) {
            Scalar c = x * y;
            for (auto& [k, z] : prod(i, j)) acc[k] += c * z;
        }
    if (ring.is_fp())
        for (auto& t : acc) t = ring.norm(t);
    return sv_from_dense(acc);
}

SVec StructureAlgebra::bar(const SVec& a) const
{
    if (!involution) throw precondition_error("algebra has no involution");
    return mat_apply(*involution, a, ring);
}

Scalar StructureAlgebra::norm(const SVec& a, const SVec& b) const
{
    if (!norm_form) throw precondition_error("algebra has no norm form");
    Scalar s = 0;
    for (auto& [i, x] : a)
        for (auto& [j, y] : b) s += x * y * (*norm_form)(i, j);
    return ring.norm(s);
}

SVec StructureAlgebra::one() const
{
    if (!unit) throw precondition_error("algebra has no unit");
    return *unit;
}

void StructureAlgebra::finalize()
{
    if ((int)table.size() != dim * dim) throw std::invalid_argument("multiplication table has wrong size");
    if (unit) {
        for (int i = 0; i < dim; ++i) {
            SVec e = sv_unit(i);
            if (mul(*unit, e) != e || mul(e, *unit) != e) throw precondition_error("unit law fails");
        }
    }
    commutative = true;
    for (int i = 0; i < dim && commutative; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (prod(i, j) != prod(j, i)) {
                commutative = false;
                break;
            }
    associative = basis_triples_vanish(*this, false);
    alternative = associative || basis_triples_vanish(*this, true);
    if (involution) {
        const Mat& s = *involution;
        if (!(mat_mul(s, s, ring) == Mat::identity(dim))) throw precondition_error("involution is not of order 2");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                SVec l = bar(prod(i, j));
                SVec r = mul(bar(sv_unit(j)), bar(sv_unit(i)));
                if (l != r) throw precondition_error("involution is not an anti-automorphism");
            }
    }
}

json StructureAlgebra::to_json() const
{
    json t = json::array();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (prod(i, j).empty()) continue;
            json v = json::array();
            for (auto& [k, x] : prod(i, j)) v.push_back({k, scalar_str(x)});
            t.push_back({i, j, v});
        }
    json j = {{"ring", ring.name()}, {"dim", dim}, {"labels", labels}, {"table", t}};
    if (unit) {
        json u = json::array();
        for (auto& [k, x] : *unit) u.push_back({k, scalar_str(x)});
        j["unit"] = u;
    } else {
        j["unit"] = nullptr;
    }
    if (involution) {
        SparseMatrix s(dim, dim);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) s.set(a, b, (*involution)(a, b));
        j["involution"] = s.to_json();
    }
    j["flags"] = {{"associative", associative}, {"alternative", alternative}, {"commutative", commutative}};
    return j;
}

StructureAlgebra matrix_algebra(int n, BaseRing R, bool transpose_involution)
{
    if (n < 1) throw precondition_error("matrix algebra needs n >= 1");
    StructureAlgebra A;
    A.ring = R;
    A.dim = n * n;
    A.table.assign((size_t)A.dim * A.dim, {});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            A.labels.push_back(n == 1 ? "1" : "E" + std::to_string(i + 1) + std::to_string(j + 1));
            A.degree.push_back({});
            for (int l = 0; l < n; ++l) A.table[(size_t)(i * n + j) * A.dim + (j * n + l)] = sv_unit(i * n + l);
        }
    SVec u;
    for (int i = 0; i < n; ++i) u.push_back({i * n + i, Scalar(1)});
    A.unit = u;
    if (transpose_involution) {
        Mat s(A.dim, A.dim);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1;
        A.involution = s;
    }
    A.finalize();
    return A;
}

// Zorn vector matrices [[a1, u], [x, a2]] with
// (a1,u,x,a2)(b1,v,y,b2) = (a1 b1 - u.y, a1 v + b2 u + x*y, b1 x + a2 y + u*v, a2 b2 - x.v)
// and norm N = a1 a2 + x.u. Basis: e11, u_1..u_3, e22, w_1..w_3 (unit vectors in the x slot),
// so that N(x_i, x^j) = delta_ij for x_1 = e11, x_{i+1} = u_i, x^1 = e22, x^{i+1} = w_i.
StructureAlgebra split_octonions(BaseRing R)
{
    struct Z {
        long a1 = 0, a2 = 0;
        long u[3] = {0, 0, 0}, x[3] = {0, 0, 0};
    };
    auto basis = [](int k) {
        Z z;
        if (k == 0) z.a1 = 1;
        else if (k < 4) z.u[k - 1] = 1;
        else if (k == 4) z.a2 = 1;
        else z.x[k - 5] = 1;
        return z;
    };
    auto cross = [](const long* a, const long* b, long* out) {
        out[0] = a[1] * b[2] - a[2] * b[1];
        out[1] = a[2] * b[0] - a[0] * b[2];
        out[2] = a[0] * b[1] - a[1] * b[0];
    };
    auto dot = [](const long* a, const long* b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
    StructureAlgebra A;
    A.ring = R;
    A.dim = 8;
    A.labels = {"e11", "u1", "u2", "u3", "e22", "w1", "w2", "w3"};
    A.table.assign(64, {});
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            Z a = basis(i), b = basis(j), c;
            c.a1 = a.a1 * b.a1 - dot(a.u, b.x);
            c.a2 = a.a2 * b.a2 - dot(a.x, b.u);
            long xy[3], uv[3];
            cross(a.x, b.x, xy);
            cross(a.u, b.u, uv);
            for (int t = 0; t < 3; ++t) {
                c.u[t] = a.a1 * b.u[t] + b.a2 * a.u[t] + xy[t];
                c.x[t] = b.a1 * a.x[t] + a.a2 * b.x[t] + uv[t];
            }
            std::vector<Scalar> d(8);
            d[0] = c.a1;
            d[4] = c.a2;
            for (int t = 0; t < 3; ++t) {
                d[1 + t] = c.u[t];
                d[5 + t] = c.x[t];
            }
            for (auto& v : d) v = R.norm(v);
            A.table[i * 8 + j] = sv_from_dense(d);
        }
    A.unit = SVec{{0, Scalar(1)}, {4, Scalar(1)}};
    Mat s(8, 8), g(8, 8);
    s(4, 0) = 1;
    s(0, 4) = 1;
    g(0, 4) = g(4, 0) = 1;
    for (int t = 0; t < 3; ++t) {
        s(1 + t, 1 + t) = R.from_long(-1);
        s(5 + t, 5 + t) = R.from_long(-1);
        g(1 + t, 5 + t) = g(5 + t, 1 + t) = 1;
    }
    A.involution = s;
    A.norm_form = g;
    // torus grading: u_i -> eps_i, w_i -> -eps_i with eps_3 = -eps_1 - eps_2
    IVec eps[3] = {{1, 0}, {0, 1}, {-1, -1}};
    A.degree.assign(8, IVec{0, 0});
    for (int t = 0; t < 3; ++t) {
        A.degree[1 + t] = eps[t];
        A.degree[5 + t] = neg(eps[t]);
    }
    A.finalize();
    return A;
}

SVec commutator(const StructureAlgebra& A, const SVec& a, const SVec& b)
{
    return sv_sub(A.mul(a, b), A.mul(b, a), A.ring);
}

SVec associator(const StructureAlgebra& A, const SVec& a, const SVec& b, const SVec& c)
{
    return sv_sub(A.mul(A.mul(a, b), c), A.mul(a, A.mul(b, c)), A.ring);
}

Mat left_op(const StructureAlgebra& A, const SVec& a)
{
    return op_from(A, a, true);
}

Mat right_op(const StructureAlgebra& A, const SVec& a)
{
    return op_from(A, a, false);
}

bool is_derivation(const StructureAlgebra& A, const Mat& d)
{
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            SVec l = mat_apply(d, A.prod(i, j), A.ring);
            SVec r = sv_add(A.mul(col_vec(d, i), sv_unit(j)), A.mul(sv_unit(i), col_vec(d, j)), A.ring);
            if (l != r) return false;
        }
    return true;
}

long alternative_identity_violations(const StructureAlgebra& A)
{
    const BaseRing& R = A.ring;
    int n = A.dim;
    std::vector<Mat> L(n), Rt(n);
    for (int i = 0; i < n; ++i) {
        L[i] = left_op(A, sv_unit(i));
        Rt[i] = right_op(A, sv_unit(i));
    }
    long bad = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            SVec ab = commutator(A, sv_unit(a), sv_unit(b));
            Mat lab = left_op(A, ab), rab = right_op(A, ab);
            Mat lr = mat_comm(L[a], Rt[b], R);
            Mat two = mat_scale(lr, 2, R);
            bool ok = mat_comm(L[a], L[b], R) == mat_sub(lab, two, R) &&
                      mat_comm(Rt[a], Rt[b], R) == mat_sub(mat_scale(rab, -1, R), two, R);
            for (int c = 0; c < n; ++c) {
                SVec abc = associator(A, sv_unit(a), sv_unit(b), sv_unit(c));
                bool ok3 = mat_comm(lr, L[c], R) == mat_sub(left_op(A, abc), mat_comm(lab, Rt[c], R), R) &&
                           mat_comm(lr, Rt[c], R) == mat_add(right_op(A, abc), mat_comm(rab, L[c], R), R);
                bad += !(ok && ok3);
            }
        }
    return bad;
}

Mat standard_derivation(const StructureAlgebra& A, const SVec& a, const SVec& b)
{
    if (!A.alternative) throw precondition_error("standard derivations need an alternative algebra");
    const BaseRing& R = A.ring;
    SVec c = commutator(A, a, b);
    Mat m = mat_sub(left_op(A, c), right_op(A, c), R);
    return mat_add(m, mat_scale(mat_comm(left_op(A, a), right_op(A, b), R), -3, R), R);
}

std::vector<SVec> standard_derivation_span(const StructureAlgebra& A)
{
    std::vector<SVec> v;
    for (int i = 0; i < A.dim; ++i)
        for (int j = i + 1; j < A.dim; ++j) v.push_back(standard_derivation(A, sv_unit(i), sv_unit(j)).flat());
    return span_basis(v, A.ring);
}

Triality triality_add(const Triality& x, const Triality& y, const BaseRing& R)
{
    return {mat_add(x.t1, y.t1, R), mat_add(x.t2, y.t2, R), mat_add(x.t3, y.t3, R)};
}

Triality triality_scale(const Triality& x, const Scalar& s, const BaseRing& R)
{
    return {mat_scale(x.t1, s, R), mat_scale(x.t2, s, R), mat_scale(x.t3, s, R)};
}

Triality triality_bracket(const Triality& x, const Triality& y, const BaseRing& R)
{
    return {mat_comm(x.t1, y.t1, R), mat_comm(x.t2, y.t2, R), mat_comm(x.t3, y.t3, R)};
}

bool is_triality(const StructureAlgebra& A, const Triality& t)
{
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            SVec l = mat_apply(t.t1, A.prod(i, j), A.ring);
            SVec r = sv_add(A.mul(col_vec(t.t2, i), sv_unit(j)), A.mul(sv_unit(i), col_vec(t.t3, j)), A.ring);
            if (l != r) return false;
        }
    return true;
}

Triality lambda_triality(const StructureAlgebra& A, const SVec& a)
{
    if (!A.alternative) throw precondition_error("trialities need an alternative algebra");
    Mat l = left_op(A, a), r = right_op(A, a);
    return {l, mat_add(l, r, A.ring), mat_scale(l, -1, A.ring)};
}

Triality rho_triality(const StructureAlgebra& A, const SVec& b)
{
    if (!A.alternative) throw precondition_error("trialities need an alternative algebra");
    Mat l = left_op(A, b), r = right_op(A, b);
    return {r, mat_scale(r, -1, A.ring), mat_add(l, r, A.ring)};
}

Triality sigma_triality(const StructureAlgebra& A, const SVec& a, const SVec& b)
{
    return triality_bracket(lambda_triality(A, a), rho_triality(A, b), A.ring);
}

Triality triality_h(const StructureAlgebra& A, const Mat& d, const SVec& a, const SVec& b)
{
    Triality t{d, d, d};
    t = triality_add(t, lambda_triality(A, a), A.ring);
    return triality_add(t, triality_scale(rho_triality(A, b), -1, A.ring), A.ring);
}

DerivationPair triality_h_inverse(const StructureAlgebra& A, const Triality& t)
{
    const BaseRing& R = A.ring;
    if (!R.invertible(3)) throw precondition_error("h^-1 needs 1/3 in the base ring");
    Scalar third = R.inv(3);
    SVec t21 = mat_apply(t.t2, A.one(), R), t31 = mat_apply(t.t3, A.one(), R);
    // 3a = 2 t2(1) + t3(1), 3b = -t2(1) - 2 t3(1)
    SVec a = sv_scale(sv_add(sv_scale(t21, 2, R), t31, R), third, R);
    SVec b = sv_scale(sv_add(sv_scale(t21, -1, R), sv_scale(t31, -2, R), R), third, R);
    Mat d = mat_add(mat_sub(t.t1, left_op(A, a), R), right_op(A, b), R);
    return {d, a, b};
}

Mat g1_operator(const StructureAlgebra& A, const SVec& a, const SVec& b)
{
    const BaseRing& R = A.ring;
    SVec ab = A.bar(a), bb = A.bar(b);
    SVec l = sv_sub(A.mul(a, bb), A.mul(b, ab), R);
    SVec r = sv_sub(A.mul(ab, b), A.mul(bb, a), R);
    Mat m = mat_sub(left_op(A, l), right_op(A, r), R);
    for (int j = 0; j < A.dim; ++j) {
        SVec s = sv_scale(associator(A, a, b, sv_unit(j)), 2, R);
        for (auto& [i, x] : s) m(i, j) = R.norm(m(i, j) + x);
    }
    return m;
}

std::vector<SVec> g1_span(const StructureAlgebra& A)
{
    std::vector<SVec> v;
    for (int i = 0; i < A.dim; ++i)
        for (int j = i + 1; j < A.dim; ++j) v.push_back(g1_operator(A, sv_unit(i), sv_unit(j)).flat());
    return span_basis(v, A.ring);
}

std::vector<SVec> skew_operators(const StructureAlgebra& A)
{
    if (!A.norm_form) throw precondition_error("algebra has no norm form");
    const Mat& g = *A.norm_form;
    int n = A.dim;
    // unknown T(r,c) at index r*n+c; condition (G T)(i,j) + (G T)(j,i) = 0
    SparseMatrix M(0, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<Scalar> row(n * n);
            for (int k = 0; k < n; ++k) {
                row[k * n + j] += g(i, k);
                row[k * n + i] += g(j, k);
            }
            M.push_row(sv_from_dense(row));
        }
    return kernel_basis(M, A.ring);
}

bool is_skew(const StructureAlgebra& A, const Mat& t)
{
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            Scalar s = A.norm(col_vec(t, i), sv_unit(j)) + A.norm(sv_unit(i), col_vec(t, j));
            if (A.ring.norm(s) != 0) return false;
        }
    return true;
}

}
