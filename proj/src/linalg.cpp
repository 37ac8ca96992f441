#include "rograd/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rograd {

Scalar sv_get(const SVec& v, int i)
{
    auto it = std::lower_bound(v.begin(), v.end(), i, [](const Entry& e, int k) { return e.first < k; });
    if (it != v.end() && it->first == i) return it->second;
    return 0;
}

void sv_axpy(SVec& y, const Scalar& a, const SVec& x, const BaseRing& R)
{
    if (a == 0 || x.empty()) return;
    SVec out;
    out.reserve(y.size() + x.size());
    size_t i = 0, j = 0;
    bool fp = R.is_fp();
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(std::move(y[i++]));
        } else if (i == y.size() || x[j].first < y[i].first) {
            Scalar t = a * x[j].second;
            if (fp) t = R.norm(t);
            if (t != 0) out.emplace_back(x[j].first, std::move(t));
            ++j;
        } else {
            Scalar t = y[i].second + a * x[j].second;
            if (fp) t = R.norm(t);
            if (t != 0) out.emplace_back(x[j].first, std::move(t));
            ++i, ++j;
        }
    }
    y.swap(out);
}

SVec sv_add(const SVec& x, const SVec& y, const BaseRing& R)
{
    SVec r = x;
    sv_axpy(r, 1, y, R);
    return r;
}

SVec sv_sub(const SVec& x, const SVec& y, const BaseRing& R)
{
    SVec r = x;
    sv_axpy(r, -1, y, R);
    return r;
}

SVec sv_scale(const SVec& x, const Scalar& a, const BaseRing& R)
{
    SVec r;
    if (a == 0) return r;
    for (auto& [i, v] : x) {
        Scalar t = R.is_fp() ? R.norm(a * v) : a * v;
        if (t != 0) r.emplace_back(i, t);
    }
    return r;
}

SVec sv_unit(int i)
{
    return {{i, Scalar(1)}};
}

SVec sv_from_dense(const std::vector<Scalar>& d)
{
    SVec r;
    for (int i = 0; i < (int)d.size(); ++i)
        if (d[i] != 0) r.emplace_back(i, d[i]);
    return r;
}

std::vector<Scalar> sv_to_dense(const SVec& v, int n)
{
    std::vector<Scalar> d(n);
    for (auto& [i, x] : v) d[i] = x;
    return d;
}

SVec sv_lincomb(const std::vector<std::pair<Scalar, const SVec*>>& terms, const BaseRing& R)
{
    std::map<int, Scalar> acc;
    for (auto& [c, v] : terms) {
        if (c == 0) continue;
        for (auto& [i, x] : *v) acc[i] += c * x;
    }
    SVec r;
    for (auto& [i, x] : acc) {
        Scalar t = R.is_fp() ? R.norm(x) : x;
        if (t != 0) r.emplace_back(i, t);
    }
    return r;
}

bool sv_is_zero(const SVec& v)
{
    return v.empty();
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Scalar>>& d, int cols)
{
    SparseMatrix m((int)d.size(), cols >= 0 ? cols : (d.empty() ? 0 : (int)d[0].size()));
    for (int i = 0; i < m.rows; ++i) m.row[i] = sv_from_dense(d[i]);
    return m;
}

void SparseMatrix::set(int r, int c, const Scalar& x)
{
    SVec& v = row[r];
    auto it = std::lower_bound(v.begin(), v.end(), c, [](const Entry& e, int k) { return e.first < k; });
    if (it != v.end() && it->first == c) {
        if (x == 0)
            v.erase(it);
        else
            it->second = x;
    } else if (x != 0) {
        v.insert(it, {c, x});
    }
}

long SparseMatrix::nnz() const
{
    long n = 0;
    for (auto& r : row) n += (long)r.size();
    return n;
}

json SparseMatrix::to_json() const
{
    json e = json::array();
    for (int i = 0; i < rows; ++i)
        for (auto& [c, x] : row[i]) e.push_back({i, c, scalar_str(x)});
    return {{"rows", rows}, {"cols", cols}, {"entries", e}};
}

SparseMatrix SparseMatrix::from_json(const json& j)
{
    SparseMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (auto& e : j.at("entries")) {
        int r = e.at(0).get<int>(), c = e.at(1).get<int>();
        if (r < 0 || r >= m.rows || c < 0 || c >= m.cols) throw std::invalid_argument("matrix entry out of range");
        Scalar x = e.at(2).is_string() ? parse_scalar(e.at(2).get<std::string>()) : Scalar(e.at(2).get<long>());
        m.set(r, c, x);
    }
    return m;
}

Mat Mat::identity(int n)
{
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool Mat::is_zero() const
{
    for (auto& x : a)
        if (x != 0) return false;
    return true;
}

SVec Mat::flat() const
{
    return sv_from_dense(a);
}

Mat Mat::unflat(const SVec& v, int r, int c)
{
    Mat m(r, c);
    for (auto& [i, x] : v) m.a[i] = x;
    return m;
}

std::vector<Scalar> Mat::col(int j) const
{
    std::vector<Scalar> v(r);
    for (int i = 0; i < r; ++i) v[i] = (*this)(i, j);
    return v;
}

Mat mat_mul(const Mat& x, const Mat& y, const BaseRing& R)
{
    Mat z(x.r, y.c);
    for (int i = 0; i < x.r; ++i)
        for (int k = 0; k < x.c; ++k) {
            const Scalar& a = x(i, k);
            if (a == 0) continue;
            for (int j = 0; j < y.c; ++j)
                if (y(k, j) != 0) z(i, j) += a * y(k, j);
        }
    if (R.is_fp())
        for (auto& v : z.a) v = R.norm(v);
    return z;
}

Mat mat_add(const Mat& x, const Mat& y, const BaseRing& R)
{
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = R.norm(z.a[i] + y.a[i]);
    return z;
}

Mat mat_sub(const Mat& x, const Mat& y, const BaseRing& R)
{
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = R.norm(z.a[i] - y.a[i]);
    return z;
}

Mat mat_scale(const Mat& x, const Scalar& s, const BaseRing& R)
{
    Mat z = x;
    for (auto& v : z.a) v = R.norm(v * s);
    return z;
}

Mat mat_comm(const Mat& x, const Mat& y, const BaseRing& R)
{
    return mat_sub(mat_mul(x, y, R), mat_mul(y, x, R), R);
}

std::vector<Scalar> mat_apply(const Mat& m, const std::vector<Scalar>& v, const BaseRing& R)
{
    std::vector<Scalar> out(m.r);
    for (int i = 0; i < m.r; ++i) {
        Scalar s = 0;
        for (int j = 0; j < m.c; ++j)
            if (v[j] != 0 && m(i, j) != 0) s += m(i, j) * v[j];
        out[i] = R.norm(s);
    }
    return out;
}

SVec mat_apply(const Mat& m, const SVec& v, const BaseRing& R)
{
    std::vector<Scalar> out(m.r);
    for (auto& [j, x] : v)
        for (int i = 0; i < m.r; ++i)
            if (m(i, j) != 0) out[i] += m(i, j) * x;
    if (R.is_fp())
        for (auto& t : out) t = R.norm(t);
    return sv_from_dense(out);
}

mpz_class mat_det_z(const Mat& m)
{
    // Bareiss
    int n = m.r;
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j).get_num();
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return n == 0 ? mpz_class(1) : sign * a[n - 1][n - 1];
}

Mat mat_inverse(const Mat& m, const BaseRing& R)
{
    if (m.r != m.c) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.r;
    Mat a = m, inv = Mat::identity(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) throw precondition_error("singular matrix");
        if (p != k)
            for (int j = 0; j < n; ++j) {
                std::swap(a(p, j), a(k, j));
                std::swap(inv(p, j), inv(k, j));
            }
        Scalar s = R.inv(a(k, k));
        for (int j = 0; j < n; ++j) {
            a(k, j) = R.norm(a(k, j) * s);
            inv(k, j) = R.norm(inv(k, j) * s);
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Scalar f = a(i, k);
            for (int j = 0; j < n; ++j) {
                a(i, j) = R.norm(a(i, j) - f * a(k, j));
                inv(i, j) = R.norm(inv(i, j) - f * inv(k, j));
            }
        }
    }
    return inv;
}

// ---- Span ----

bool Span::insert(SVec v)
{
    if (R_.is_field()) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        int piv = v.front().first;
        Scalar s = R_.inv(v.front().second);
        v = sv_scale(v, s, R_);
        // keep reduced form: clear the new pivot column from older rows
        for (auto& [c, row] : rows_) {
            Scalar x = sv_get(row, piv);
            if (x != 0) sv_axpy(row, -x, v, R_);
        }
        rows_.emplace(piv, std::move(v));
        return true;
    }
    // integers: gcd based echelon insertion
    bool grew = false;
    while (!v.empty()) {
        int c = v.front().first;
        auto it = rows_.find(c);
        if (it == rows_.end()) {
            if (v.front().second < 0) v = sv_scale(v, -1, R_);
            rows_.emplace(c, std::move(v));
            return true;
        }
        SVec& r = it->second;
        mpz_class p = r.front().second.get_num(), a = v.front().second.get_num();
        if (a % p == 0) {
            sv_axpy(v, Scalar(-(a / p)), r, R_);
            continue;
        }
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
        SVec nr = sv_scale(r, Scalar(s), R_);
        sv_axpy(nr, Scalar(t), v, R_);
        SVec nv = sv_scale(v, Scalar(p / g), R_);
        sv_axpy(nv, Scalar(-(a / g)), r, R_);
        if (nr.front().second < 0) nr = sv_scale(nr, -1, R_);
        r = std::move(nr);
        v = std::move(nv);
        grew = true;
    }
    return grew;
}

SVec Span::reduce(SVec v) const
{
    if (rows_.empty()) return v;
    size_t pos = 0;
    while (pos < v.size()) {
        int c = v[pos].first;
        auto it = rows_.find(c);
        if (it == rows_.end()) {
            ++pos;
            continue;
        }
        const SVec& r = it->second;
        if (R_.is_field()) {
            Scalar x = v[pos].second;
            sv_axpy(v, -x, r, R_);
        } else {
            mpz_class p = r.front().second.get_num(), a = v[pos].second.get_num();
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
            if (q == 0) {
                ++pos;
                continue;
            }
            sv_axpy(v, Scalar(-q), r, R_);
            // the entry at c is now in [0, p); move on
            if (pos < v.size() && v[pos].first == c) ++pos;
        }
    }
    return v;
}

bool Span::contains(const SVec& v) const
{
    return reduce(v).empty();
}

SVec Span::coords(const SVec& v0) const
{
    SVec v = v0, out;
    int k = 0;
    for (auto& [c, r] : rows_) {
        Scalar x = sv_get(v, c);
        if (x != 0) {
            Scalar q = x / r.front().second;
            if (!R_.is_field() && q.get_den() != 1) throw precondition_error("vector not in lattice span");
            q = R_.norm(q);
            sv_axpy(v, -q, r, R_);
            out.emplace_back(k, q);
        }
        ++k;
    }
    if (!v.empty()) throw precondition_error("vector not in span");
    return out;
}

std::vector<SVec> Span::rows() const
{
    std::vector<SVec> r;
    for (auto& [c, row] : rows_) r.push_back(row);
    return r;
}

std::vector<int> Span::pivots() const
{
    std::vector<int> r;
    for (auto& [c, row] : rows_) r.push_back(c);
    return r;
}

int rank_of(const std::vector<SVec>& vs, const BaseRing& R)
{
    BaseRing F = R.is_field() ? R : BaseRing::Q();
    Span s(F);
    for (auto& v : vs) s.insert(v);
    return s.rank();
}

std::vector<SVec> span_basis(const std::vector<SVec>& vs, const BaseRing& R)
{
    Span s(R);
    for (auto& v : vs) s.insert(v);
    return s.rows();
}

std::vector<SVec> kernel_basis(const SparseMatrix& M, const BaseRing& R)
{
    if (!R.is_field()) throw precondition_error("kernel_basis needs a field");
    Span s(R);
    for (auto& r : M.row) s.insert(r);
    std::set<int> piv;
    for (int c : s.pivots()) piv.insert(c);
    std::vector<SVec> out;
    auto rows = s.row_map();
    for (int f = 0; f < M.cols; ++f) {
        if (piv.count(f)) continue;
        std::map<int, Scalar> v;
        v[f] = 1;
        for (auto& [c, row] : rows) {
            Scalar x = sv_get(row, f);
            if (x != 0) v[c] = R.norm(-x);
        }
        SVec sv;
        for (auto& [i, x] : v)
            if (x != 0) sv.emplace_back(i, x);
        out.push_back(sv);
    }
    return out;
}

std::vector<SVec> intersect_spaces(const std::vector<SVec>& a, const std::vector<SVec>& b, int n,
                                   const BaseRing& R)
{
    // x = sum s_i a_i = sum t_j b_j ; solve on stacked columns
    int na = (int)a.size(), nb = (int)b.size();
    SparseMatrix M(n, na + nb);
    for (int i = 0; i < na; ++i)
        for (auto& [k, x] : a[i]) M.set(k, i, x);
    for (int j = 0; j < nb; ++j)
        for (auto& [k, x] : b[j]) M.set(k, na + j, R.norm(-x));
    auto ker = kernel_basis(M, R);
    std::vector<SVec> vs;
    for (auto& kv : ker) {
        SVec x;
        for (auto& [i, c] : kv)
            if (i < na) sv_axpy(x, c, a[i], R);
        vs.push_back(x);
    }
    return span_basis(vs, R);
}

// ---- Smith normal form ----

namespace {

using ZRow = std::vector<mpz_class>;

struct DenseSnf {
    std::vector<ZRow> a;
    int m, n;
    bool track;
    std::vector<ZRow> U, V;

    DenseSnf(std::vector<ZRow> a_, int m_, int n_, bool t) : a(std::move(a_)), m(m_), n(n_), track(t)
    {
        if (track) {
            U.assign(m, ZRow(m));
            V.assign(n, ZRow(n));
            for (int i = 0; i < m; ++i) U[i][i] = 1;
            for (int i = 0; i < n; ++i) V[i][i] = 1;
        }
    }

    void swap_rows(int i, int j)
    {
        std::swap(a[i], a[j]);
        if (track) std::swap(U[i], U[j]);
    }
    void swap_cols(int i, int j)
    {
        for (auto& r : a) std::swap(r[i], r[j]);
        if (track)
            for (auto& r : V) std::swap(r[i], r[j]);
    }
    // row_i += q*row_j
    void add_row(int i, int j, const mpz_class& q)
    {
        for (int k = 0; k < n; ++k)
            if (a[j][k] != 0) a[i][k] += q * a[j][k];
        if (track)
            for (int k = 0; k < m; ++k)
                if (U[j][k] != 0) U[i][k] += q * U[j][k];
    }
    void add_col(int i, int j, const mpz_class& q)
    {
        for (int k = 0; k < m; ++k)
            if (a[k][j] != 0) a[k][i] += q * a[k][j];
        if (track)
            for (int k = 0; k < n; ++k)
                if (V[k][j] != 0) V[k][i] += q * V[k][j];
    }
    void neg_row(int i)
    {
        for (auto& x : a[i]) x = -x;
        if (track)
            for (auto& x : U[i]) x = -x;
    }

    std::vector<mpz_class> run()
    {
        std::vector<mpz_class> d;
        int t = 0;
        while (t < m && t < n) {
            // pivot: smallest absolute value, ties by (row, col)
            int pi = -1, pj = -1;
            mpz_class best;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j)
                    if (a[i][j] != 0) {
                        mpz_class v = abs(a[i][j]);
                        if (pi < 0 || v < best) best = v, pi = i, pj = j;
                    }
            if (pi < 0) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = false;
            while (!clean) {
                clean = true;
                for (int i = t + 1; i < m; ++i) {
                    if (a[i][t] == 0) continue;
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                    add_row(i, t, -q);
                    if (a[i][t] != 0) {
                        swap_rows(t, i);
                        clean = false;
                    }
                }
                for (int j = t + 1; j < n; ++j) {
                    if (a[t][j] == 0) continue;
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                    add_col(j, t, -q);
                    if (a[t][j] != 0) {
                        swap_cols(t, j);
                        clean = false;
                    }
                }
                if (clean) {
                    // divisibility of the remaining block
                    for (int i = t + 1; i < m && clean; ++i)
                        for (int j = t + 1; j < n; ++j)
                            if (a[i][j] % a[t][t] != 0) {
                                add_row(t, i, 1);
                                clean = false;
                                break;
                            }
                }
            }
            if (a[t][t] < 0) neg_row(t);
            d.push_back(a[t][t]);
            ++t;
        }
        return d;
    }
};

}

SnfResult smith_normal_form(const SparseMatrix& M)
{
    std::vector<ZRow> a(M.rows, ZRow(M.cols));
    for (int i = 0; i < M.rows; ++i)
        for (auto& [j, x] : M.row[i]) {
            if (x.get_den() != 1) throw precondition_error("smith_normal_form needs integer entries");
            a[i][j] = x.get_num();
        }
    DenseSnf s(std::move(a), M.rows, M.cols, true);
    SnfResult r;
    r.diag = s.run();
    r.U = Mat(M.rows, M.rows);
    r.V = Mat(M.cols, M.cols);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.rows; ++j) r.U(i, j) = Scalar(s.U[i][j]);
    for (int i = 0; i < M.cols; ++i)
        for (int j = 0; j < M.cols; ++j) r.V(i, j) = Scalar(s.V[i][j]);
    return r;
}

std::vector<mpz_class> invariant_factors(const SparseMatrix& M)
{
    // sparse phase: eliminate unit pivots with smallest Markowitz cost
    std::vector<std::map<int, mpz_class>> rows(M.rows);
    std::vector<std::set<int>> cols(M.cols);
    for (int i = 0; i < M.rows; ++i)
        for (auto& [j, x] : M.row[i]) {
            if (x.get_den() != 1) throw precondition_error("integer relations expected");
            rows[i][j] = x.get_num();
            cols[j].insert(i);
        }
    std::vector<bool> row_alive(M.rows, true), col_alive(M.cols, true);
    std::vector<mpz_class> ones;
    for (;;) {
        long best = -1;
        int bi = -1, bj = -1;
        for (int i = 0; i < M.rows; ++i) {
            if (!row_alive[i]) continue;
            long rc = (long)rows[i].size() - 1;
            for (auto& [j, x] : rows[i]) {
                if (x != 1 && x != -1) continue;
                long cost = rc * ((long)cols[j].size() - 1);
                if (best < 0 || cost < best) best = cost, bi = i, bj = j;
                if (best == 0) break;
            }
            if (best == 0) break;
        }
        if (bi < 0) break;
        mpz_class piv = rows[bi][bj];
        std::vector<int> targets(cols[bj].begin(), cols[bj].end());
        for (int i : targets) {
            if (i == bi) continue;
            mpz_class f = rows[i][bj] * piv;  // piv = ±1 so f/piv = f*piv
            for (auto& [j, x] : rows[bi]) {
                auto it = rows[i].find(j);
                if (it == rows[i].end()) {
                    rows[i][j] = -f * x;
                    cols[j].insert(i);
                } else {
                    it->second -= f * x;
                    if (it->second == 0) {
                        rows[i].erase(it);
                        cols[j].erase(i);
                    }
                }
            }
        }
        for (auto& [j, x] : rows[bi]) cols[j].erase(bi);
        rows[bi].clear();
        row_alive[bi] = false;
        col_alive[bj] = false;
        ones.push_back(1);
    }
    std::vector<int> ri, ci(M.cols, -1);
    int nc = 0;
    for (int j = 0; j < M.cols; ++j)
        if (col_alive[j] && !cols[j].empty()) ci[j] = nc++;
    for (int i = 0; i < M.rows; ++i)
        if (row_alive[i] && !rows[i].empty()) ri.push_back(i);
    std::vector<ZRow> a(ri.size(), ZRow(nc));
    for (size_t k = 0; k < ri.size(); ++k)
        for (auto& [j, x] : rows[ri[k]]) a[k][ci[j]] = x;
    DenseSnf s(std::move(a), (int)ri.size(), nc, false);
    auto d = s.run();
    ones.insert(ones.end(), d.begin(), d.end());
    std::sort(ones.begin(), ones.end());
    return ones;
}

ModuleNF module_invariants(const FPModule& m)
{
    ModuleNF nf;
    if (m.relations.cols != m.gens) throw std::invalid_argument("relation width differs from generator count");
    if (m.ring.is_field()) {
        nf.field = true;
        Span s(m.ring);
        for (auto& r : m.relations.row) s.insert(m.ring.is_fp() ? sv_scale(r, 1, m.ring) : r);
        nf.dim = m.gens - s.rank();
        return nf;
    }
    nf.field = false;
    auto d = invariant_factors(m.relations);
    nf.free = m.gens - (long)d.size();
    for (auto& x : d)
        if (x != 1) nf.torsion.push_back(x);
    return nf;
}

std::optional<std::vector<mpz_class>> solve_integer(const Mat& A, const std::vector<Scalar>& b)
{
    for (auto& x : b)
        if (x.get_den() != 1) return std::nullopt;
    SparseMatrix M(A.r, A.c);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) M.set(i, j, A(i, j));
    auto s = smith_normal_form(M);
    auto ub = mat_apply(s.U, b, BaseRing::Z());
    std::vector<Scalar> y(A.c);
    for (int i = 0; i < A.r; ++i) {
        if (i < (int)s.diag.size()) {
            if (ub[i].get_num() % s.diag[i] != 0) return std::nullopt;
            y[i] = Scalar(ub[i].get_num() / s.diag[i]);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    auto x = mat_apply(s.V, y, BaseRing::Z());
    std::vector<mpz_class> out;
    for (auto& v : x) out.push_back(v.get_num());
    return out;
}

std::string ModuleNF::str() const
{
    if (field) return "dim " + std::to_string(dim);
    std::string s;
    if (free) s += "Z^" + std::to_string(free);
    for (auto& t : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
    return s.empty() ? "0" : s;
}

json ModuleNF::to_json() const
{
    if (field) return {{"dim", dim}};
    json t = json::array();
    for (auto& x : torsion) t.push_back(x.get_str());
    return {{"free", free}, {"torsion", t}};
}

ModuleNF nf_direct_sum(const ModuleNF& a, const ModuleNF& b)
{
    if (a.field != b.field) throw std::invalid_argument("mixing field and integer normal forms");
    ModuleNF s = a;
    if (a.field) {
        s.dim += b.dim;
        return s;
    }
    s.free += b.free;
    std::vector<mpz_class> t = a.torsion;
    t.insert(t.end(), b.torsion.begin(), b.torsion.end());
    SparseMatrix d(0, (int)t.size());
    for (size_t i = 0; i < t.size(); ++i) d.push_row({{(int)i, Scalar(t[i])}});
    s.torsion.clear();
    for (auto& x : invariant_factors(d))
        if (x != 1) s.torsion.push_back(x);
    return s;
}

}
