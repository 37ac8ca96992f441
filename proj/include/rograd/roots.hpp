#pragma once

#include "rograd/linalg.hpp"

#include <set>
#include <string>
#include <vector>

namespace rograd {

using IVec = std::vector<long>;
using QVec = std::vector<Scalar>;

QVec to_q(const IVec& v);
IVec add(const IVec& a, const IVec& b);
IVec sub(const IVec& a, const IVec& b);
IVec neg(const IVec& a);
IVec mul(long k, const IVec& a);
bool is_zero(const IVec& a);
std::string vec_str(const IVec& v);

// Root system in integer coordinates. Stored coordinates are `scale` times
// the usual epsilon coordinates (scale 2 for E and F).
struct RootSystem {
    char type = 'A';
    int rank = 0;
    int ambient = 0;
    long scale = 1;
    std::vector<IVec> roots;   // nonzero roots, sorted
    std::vector<IVec> simple;  // Bourbaki order
    std::set<IVec> index;

    std::string name() const { return std::string(1, type) + std::to_string(rank); }
    bool is_root(const IVec& x) const { return is_zero(x) || index.count(x) > 0; }
    long dot(const IVec& a, const IVec& b) const;
    Scalar qdot(const QVec& a, const QVec& b) const;
    // <beta, alpha^vee> = 2 (beta|alpha)/(alpha|alpha)
    Scalar pairing(const QVec& beta, const IVec& alpha) const;
    long pairing(const IVec& beta, const IVec& alpha) const;
    QVec reflect(const IVec& alpha, const QVec& x) const;
    IVec reflect(const IVec& alpha, const IVec& x) const;
    long max_norm() const;
    bool is_long(const IVec& a) const { return dot(a, a) == max_norm(); }
    // epsilon coordinates
    QVec eps(const QVec& x) const;
    QVec eps(const IVec& x) const { return eps(to_q(x)); }
    std::string eps_str(const IVec& x) const;
    json to_json() const;
};

RootSystem build_root_system(char type, int rank);

std::set<QVec> weyl_orbit(const QVec& x, const RootSystem& R);
std::set<QVec> weyl_orbit_simple(const QVec& x, const RootSystem& R);
std::set<QVec> weyl_orbit_all(const QVec& x, const RootSystem& R);

// omega_i with <omega_i, alpha_j^vee> = delta_ij, in the span of the simple roots
std::vector<QVec> fundamental_weights(const RootSystem& R);
std::vector<QVec> fundamental_weights(const RootSystem& R, const std::vector<IVec>& base);
bool in_root_lattice(const QVec& x, const RootSystem& R);
bool in_weight_lattice(const QVec& x, const RootSystem& R);

struct ThreeGrading {
    std::string kind;
    std::vector<IVec> R1, R0, Rm1;
};

// kind: rectangular (p = |I|), collinear, hermitian, odd-quadratic,
// even-quadratic, alternating
ThreeGrading three_grading(const RootSystem& R, const std::string& kind, int p = 1);
void verify_three_grading(const RootSystem& R, const ThreeGrading& g);

struct RootString {
    long d = 0, u = 0;
    std::vector<IVec> roots;
};

RootString root_string(const IVec& alpha, const IVec& beta, const RootSystem& R);

}
