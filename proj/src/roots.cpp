#include "rograd/roots.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace rograd {

QVec to_q(const IVec& v)
{
    QVec q;
    for (long x : v) q.emplace_back(x);
    return q;
}

IVec add(const IVec& a, const IVec& b)
{
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IVec sub(const IVec& a, const IVec& b)
{
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IVec neg(const IVec& a)
{
    return mul(-1, a);
}

IVec mul(long k, const IVec& a)
{
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

bool is_zero(const IVec& a)
{
    return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

std::string vec_str(const IVec& v)
{
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

long RootSystem::dot(const IVec& a, const IVec& b) const
{
    long s = 0;
    for (int i = 0; i < ambient; ++i) s += a[i] * b[i];
    return s;
}

Scalar RootSystem::qdot(const QVec& a, const QVec& b) const
{
    Scalar s = 0;
    for (int i = 0; i < ambient; ++i) s += a[i] * b[i];
    return s;
}

Scalar RootSystem::pairing(const QVec& beta, const IVec& alpha) const
{
    long aa = dot(alpha, alpha);
    if (aa == 0) throw precondition_error("pairing with the zero root");
    return 2 * qdot(beta, to_q(alpha)) / aa;
}

long RootSystem::pairing(const IVec& beta, const IVec& alpha) const
{
    long aa = dot(alpha, alpha);
    if (aa == 0) throw precondition_error("pairing with the zero root");
    long n = 2 * dot(beta, alpha);
    if (n % aa) throw precondition_error("non-integral pairing " + vec_str(beta) + " on " + vec_str(alpha));
    return n / aa;
}

QVec RootSystem::reflect(const IVec& alpha, const QVec& x) const
{
    Scalar c = pairing(x, alpha);
    QVec r = x;
    for (int i = 0; i < ambient; ++i) r[i] -= c * alpha[i];
    return r;
}

IVec RootSystem::reflect(const IVec& alpha, const IVec& x) const
{
    return sub(x, mul(pairing(x, alpha), alpha));
}

long RootSystem::max_norm() const
{
    long m = 0;
    for (auto& r : roots) m = std::max(m, dot(r, r));
    return m;
}

QVec RootSystem::eps(const QVec& x) const
{
    QVec r = x;
    for (auto& v : r) v /= scale;
    return r;
}

std::string RootSystem::eps_str(const IVec& x) const
{
    // e.g. 2e1-e2-e3, (1/2)(e1+...) style avoided: coefficients printed as rationals
    QVec e = eps(x);
    std::string s;
    for (int i = 0; i < ambient; ++i) {
        if (e[i] == 0) continue;
        Scalar c = e[i];
        bool negc = c < 0;
        if (negc) c = -c;
        if (!s.empty())
            s += negc ? "-" : "+";
        else if (negc)
            s += "-";
        if (c != 1) s += c.get_str();
        s += "e" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
}

json RootSystem::to_json() const
{
    json r = json::array();
    for (auto& v : roots) r.push_back(v);
    return {{"type", std::string(1, type)}, {"rank", rank}, {"scale", scale}, {"roots", r}};
}

namespace {

IVec unit(int n, int i, long c = 1)
{
    IVec v(n, 0);
    v[i] = c;
    return v;
}

IVec pm(int n, int i, int j, long si, long sj, long c = 1)
{
    IVec v(n, 0);
    v[i] = si * c;
    v[j] += sj * c;
    return v;
}

void finish(RootSystem& R)
{
    std::sort(R.roots.begin(), R.roots.end());
    R.roots.erase(std::unique(R.roots.begin(), R.roots.end()), R.roots.end());
    R.index = std::set<IVec>(R.roots.begin(), R.roots.end());
}

RootSystem e8()
{
    RootSystem R;
    R.type = 'E', R.rank = 8, R.ambient = 8, R.scale = 2;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (long s : {1, -1})
                for (long t : {1, -1}) R.roots.push_back(pm(8, i, j, s, t, 2));
    for (int m = 0; m < 256; ++m) {
        if (__builtin_popcount(m) % 2) continue;
        IVec v(8);
        for (int i = 0; i < 8; ++i) v[i] = (m >> i) & 1 ? -1 : 1;
        R.roots.push_back(v);
    }
    R.simple.push_back({1, -1, -1, -1, -1, -1, -1, 1});
    R.simple.push_back(pm(8, 0, 1, 1, 1, 2));
    for (int i = 0; i < 6; ++i) R.simple.push_back(pm(8, i, i + 1, -1, 1, 2));
    finish(R);
    return R;
}

}

RootSystem build_root_system(char type, int n)
{
    RootSystem R;
    R.type = type;
    R.rank = n;
    auto bad = [&]() {
        return precondition_error("unsupported root system " + std::string(1, type) + std::to_string(n));
    };
    switch (type) {
    case 'A': {
        if (n < 1) throw bad();
        R.ambient = n + 1;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (i != j) R.roots.push_back(pm(n + 1, i, j, 1, -1));
        for (int i = 0; i < n; ++i) R.simple.push_back(pm(n + 1, i, i + 1, 1, -1));
        break;
    }
    case 'B':
    case 'C':
    case 'D': {
        if (n < 2 || (type == 'D' && n < 4)) throw bad();
        R.ambient = n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (long s : {1, -1})
                    for (long t : {1, -1}) R.roots.push_back(pm(n, i, j, s, t));
        if (type != 'D')
            for (int i = 0; i < n; ++i)
                for (long s : {1, -1}) R.roots.push_back(unit(n, i, s * (type == 'B' ? 1 : 2)));
        for (int i = 0; i + 1 < n; ++i) R.simple.push_back(pm(n, i, i + 1, 1, -1));
        if (type == 'B') R.simple.push_back(unit(n, n - 1));
        if (type == 'C') R.simple.push_back(unit(n, n - 1, 2));
        if (type == 'D') R.simple.push_back(pm(n, n - 2, n - 1, 1, 1));
        break;
    }
    case 'E': {
        if (n < 6 || n > 8) throw bad();
        RootSystem E = e8();
        if (n == 8) return E;
        R.ambient = 8;
        R.scale = 2;
        R.simple.assign(E.simple.begin(), E.simple.begin() + n);
        SparseMatrix M(n, 8);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 8; ++j) M.set(i, j, R.simple[i][j]);
        auto comp = kernel_basis(M, BaseRing::Q());
        for (auto& r : E.roots) {
            bool in = true;
            for (auto& c : comp) {
                Scalar s = 0;
                for (auto& [j, x] : c) s += x * r[j];
                if (s != 0) in = false;
            }
            if (in) R.roots.push_back(r);
        }
        break;
    }
    case 'F': {
        if (n != 4) throw bad();
        R.ambient = 4;
        R.scale = 2;
        for (int i = 0; i < 4; ++i) {
            for (long s : {1, -1}) R.roots.push_back(unit(4, i, 2 * s));
            for (int j = i + 1; j < 4; ++j)
                for (long s : {1, -1})
                    for (long t : {1, -1}) R.roots.push_back(pm(4, i, j, s, t, 2));
        }
        for (int m = 0; m < 16; ++m) {
            IVec v(4);
            for (int i = 0; i < 4; ++i) v[i] = (m >> i) & 1 ? -1 : 1;
            R.roots.push_back(v);
        }
        R.simple = {{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}};
        break;
    }
    case 'G': {
        if (n != 2) throw bad();
        R.ambient = 3;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                R.roots.push_back(pm(3, i, j, 1, -1));
                IVec v(3, -1);
                v[i] = 2;
                R.roots.push_back(v);
                R.roots.push_back(neg(v));
            }
        R.simple = {{1, -1, 0}, {-2, 1, 1}};
        break;
    }
    default: throw bad();
    }
    finish(R);
    return R;
}

std::set<QVec> weyl_orbit_simple(const QVec& x, const RootSystem& R)
{
    std::set<QVec> seen{x};
    std::deque<QVec> q{x};
    while (!q.empty()) {
        QVec v = q.front();
        q.pop_front();
        for (auto& a : R.simple) {
            QVec w = R.reflect(a, v);
            if (seen.insert(w).second) q.push_back(w);
        }
    }
    return seen;
}

std::set<QVec> weyl_orbit_all(const QVec& x, const RootSystem& R)
{
    std::set<QVec> seen{x};
    std::deque<QVec> q{x};
    while (!q.empty()) {
        QVec v = q.front();
        q.pop_front();
        for (auto& a : R.roots) {
            QVec w = R.reflect(a, v);
            if (seen.insert(w).second) q.push_back(w);
        }
    }
    return seen;
}

std::set<QVec> weyl_orbit(const QVec& x, const RootSystem& R)
{
    return R.rank <= 4 ? weyl_orbit_all(x, R) : weyl_orbit_simple(x, R);
}

std::vector<QVec> fundamental_weights(const RootSystem& R, const std::vector<IVec>& base)
{
    int n = (int)base.size();
    if (n != R.rank) throw precondition_error("base has wrong size");
    if (rank_of([&] {
            std::vector<SVec> v;
            for (auto& b : base) v.push_back(sv_from_dense(to_q(b)));
            return v;
        }(),
                BaseRing::Q()) != n)
        throw precondition_error("base is not linearly independent");
    for (auto& b : base)
        if (!R.index.count(b)) throw precondition_error("base element is not a root");
    // omega_i = sum_j c_ij alpha_j,  sum_j c_ij <alpha_j, alpha_k^vee> = delta_ik
    Mat P(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) P(j, k) = R.pairing(base[j], base[k]);
    Mat C = mat_inverse(P, BaseRing::Q());
    std::vector<QVec> w;
    for (int i = 0; i < n; ++i) {
        QVec v(R.ambient);
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < R.ambient; ++t) v[t] += C(i, j) * base[j][t];
        w.push_back(v);
    }
    return w;
}

std::vector<QVec> fundamental_weights(const RootSystem& R)
{
    return fundamental_weights(R, R.simple);
}

bool in_weight_lattice(const QVec& x, const RootSystem& R)
{
    for (auto& a : R.simple)
        if (R.pairing(x, a).get_den() != 1) return false;
    return true;
}

bool in_root_lattice(const QVec& x, const RootSystem& R)
{
    Mat A(R.ambient, R.rank);
    for (int j = 0; j < R.rank; ++j)
        for (int i = 0; i < R.ambient; ++i) A(i, j) = R.simple[j][i];
    return solve_integer(A, x).has_value();
}

ThreeGrading three_grading(const RootSystem& R, const std::string& kind, int p)
{
    ThreeGrading g;
    g.kind = kind;
    int n = R.ambient;
    auto incompatible = [&]() {
        return precondition_error("root system " + R.name() + " has no 3-grading of kind " + kind);
    };
    if (R.type == 'A' && (kind == "rectangular" || kind == "collinear")) {
        if (kind == "collinear") p = 1;
        if (p < 1 || p > R.rank) throw precondition_error("rectangular grading needs 1 <= |I| <= rank");
        for (int i = 0; i < p; ++i)
            for (int j = p; j < n; ++j) g.R1.push_back(pm(n, i, j, 1, -1));
    } else if (R.type == 'C' && kind == "hermitian") {
        for (int i = 0; i < n; ++i) {
            g.R1.push_back(unit(n, i, 2));
            for (int j = i + 1; j < n; ++j) g.R1.push_back(pm(n, i, j, 1, 1));
        }
    } else if (R.type == 'B' && kind == "odd-quadratic") {
        g.R1.push_back(unit(n, 0));
        for (int j = 1; j < n; ++j)
            for (long s : {1, -1}) g.R1.push_back(pm(n, 0, j, 1, s));
    } else if (R.type == 'D' && kind == "even-quadratic") {
        for (int j = 1; j < n; ++j)
            for (long s : {1, -1}) g.R1.push_back(pm(n, 0, j, 1, s));
    } else if (R.type == 'D' && kind == "alternating") {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.R1.push_back(pm(n, i, j, 1, 1));
    } else {
        throw incompatible();
    }
    std::sort(g.R1.begin(), g.R1.end());
    std::set<IVec> one(g.R1.begin(), g.R1.end());
    for (auto& r : R.roots) {
        if (one.count(r)) continue;
        if (one.count(neg(r)))
            g.Rm1.push_back(r);
        else
            g.R0.push_back(r);
    }
    verify_three_grading(R, g);
    return g;
}

void verify_three_grading(const RootSystem& R, const ThreeGrading& g)
{
    std::set<IVec> p(g.R1.begin(), g.R1.end()), m(g.Rm1.begin(), g.Rm1.end()), z(g.R0.begin(), g.R0.end());
    z.insert(IVec(R.ambient, 0));
    if (p.size() + m.size() + z.size() != R.roots.size() + 1) throw precondition_error("3-grading is not a partition");
    for (auto& r : g.R1)
        if (!m.count(neg(r))) throw precondition_error("-R_1 != R_-1");
    auto part = [&](const IVec& x) -> int {
        if (p.count(x)) return 1;
        if (m.count(x)) return -1;
        if (z.count(x)) return 0;
        return 99;
    };
    std::vector<std::pair<int, const std::set<IVec>*>> parts{{1, &p}, {-1, &m}, {0, &z}};
    std::set<IVec> r1m1;
    for (auto& [i, A] : parts)
        for (auto& [j, B] : parts)
            for (auto& a : *A)
                for (auto& b : *B) {
                    IVec s = add(a, b);
                    if (!R.is_root(s)) continue;
                    int k = part(s);
                    if (i + j > 1 || i + j < -1 || k != i + j)
                        throw precondition_error("3-grading violates (R_i + R_j) cap R in R_{i+j}");
                    if (i == 1 && j == -1) r1m1.insert(s);
                }
    if (r1m1 != z) throw precondition_error("(R_1 + R_-1) cap R != R_0");
}

RootString root_string(const IVec& alpha, const IVec& beta, const RootSystem& R)
{
    if (is_zero(beta)) throw precondition_error("root string along zero");
    if (!R.is_root(alpha)) throw precondition_error("root string base is not a root");
    const long K = 8;
    std::vector<long> ks;
    for (long k = -K; k <= K; ++k)
        if (R.is_root(add(alpha, mul(k, beta)))) ks.push_back(k);
    RootString s;
    s.d = 0, s.u = 0;
    while (R.is_root(add(alpha, mul(s.d - 1, beta)))) --s.d;
    while (R.is_root(add(alpha, mul(s.u + 1, beta)))) ++s.u;
    if ((long)ks.size() != s.u - s.d + 1) throw precondition_error("root string has a gap");
    if (s.u - s.d > 4) throw precondition_error("root string longer than 5");
    for (long k = s.d; k <= s.u; ++k) s.roots.push_back(add(alpha, mul(k, beta)));
    return s;
}

}
