#pragma once

#include "rograd/ring.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace rograd {

using json = nlohmann::json;

// sparse vector: sorted by index, no zero entries
using Entry = std::pair<int, Scalar>;
using SVec = std::vector<Entry>;

Scalar sv_get(const SVec& v, int i);
// y += a*x
void sv_axpy(SVec& y, const Scalar& a, const SVec& x, const BaseRing& R);
SVec sv_add(const SVec& x, const SVec& y, const BaseRing& R);
SVec sv_sub(const SVec& x, const SVec& y, const BaseRing& R);
SVec sv_scale(const SVec& x, const Scalar& a, const BaseRing& R);
SVec sv_unit(int i);
SVec sv_from_dense(const std::vector<Scalar>& d);
std::vector<Scalar> sv_to_dense(const SVec& v, int n);
// combine a list of (coef, vec) into a single vector
SVec sv_lincomb(const std::vector<std::pair<Scalar, const SVec*>>& terms, const BaseRing& R);
bool sv_is_zero(const SVec& v);

struct SparseMatrix {
    int rows = 0, cols = 0;
    std::vector<SVec> row;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), row(r) {}
    static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& d, int cols = -1);
    void set(int r, int c, const Scalar& x);
    Scalar get(int r, int c) const { return sv_get(row[r], c); }
    void push_row(SVec v) { row.push_back(std::move(v)); ++rows; }
    long nnz() const;
    json to_json() const;
    static SparseMatrix from_json(const json& j);
};

// dense matrix over the ring, used for operators on small modules
struct Mat {
    int r = 0, c = 0;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(int r_, int c_) : r(r_), c(c_), a((size_t)r_ * c_) {}
    static Mat identity(int n);
    Scalar& operator()(int i, int j) { return a[(size_t)i * c + j]; }
    const Scalar& operator()(int i, int j) const { return a[(size_t)i * c + j]; }
    bool is_zero() const;
    bool operator==(const Mat& o) const { return r == o.r && c == o.c && a == o.a; }
    SVec flat() const;
    static Mat unflat(const SVec& v, int r, int c);
    std::vector<Scalar> col(int j) const;
};

Mat mat_mul(const Mat& x, const Mat& y, const BaseRing& R);
Mat mat_add(const Mat& x, const Mat& y, const BaseRing& R);
Mat mat_sub(const Mat& x, const Mat& y, const BaseRing& R);
Mat mat_scale(const Mat& x, const Scalar& s, const BaseRing& R);
Mat mat_comm(const Mat& x, const Mat& y, const BaseRing& R);
std::vector<Scalar> mat_apply(const Mat& m, const std::vector<Scalar>& v, const BaseRing& R);
SVec mat_apply(const Mat& m, const SVec& v, const BaseRing& R);
mpz_class mat_det_z(const Mat& m);
// inverse over a field; throws if singular
Mat mat_inverse(const Mat& m, const BaseRing& R);

// Echelon span. Over a field the rows are kept in reduced echelon form with
// unit pivots; over Z they form a lattice basis in echelon form (positive
// pivots) built by gcd row operations.
class Span {
public:
    explicit Span(BaseRing R) : R_(R) {}
    const BaseRing& ring() const { return R_; }
    // returns true if the span (lattice) grew
    bool insert(SVec v);
    // residual of v after reduction; zero iff v in span (field case)
    SVec reduce(SVec v) const;
    bool contains(const SVec& v) const;
    // coordinates with respect to rows(); throws if v is not in the span
    SVec coords(const SVec& v) const;
    int rank() const { return (int)rows_.size(); }
    std::vector<SVec> rows() const;
    std::vector<int> pivots() const;
    const std::map<int, SVec>& row_map() const { return rows_; }

private:
    BaseRing R_;
    std::map<int, SVec> rows_;
};

int rank_of(const std::vector<SVec>& vs, const BaseRing& R);
std::vector<SVec> kernel_basis(const SparseMatrix& M, const BaseRing& R);
// basis of the span of vs (reduced echelon rows)
std::vector<SVec> span_basis(const std::vector<SVec>& vs, const BaseRing& R);
// basis of intersection of two subspaces of k^n (field only)
std::vector<SVec> intersect_spaces(const std::vector<SVec>& a, const std::vector<SVec>& b, int n,
                                   const BaseRing& R);

struct SnfResult {
    std::vector<mpz_class> diag;  // nonzero invariant factors
    Mat U, V;                     // U*M*V = diag padded with zeros
};

SnfResult smith_normal_form(const SparseMatrix& M);

struct FPModule {
    BaseRing ring;
    int gens = 0;
    SparseMatrix relations;
};

struct ModuleNF {
    bool field = true;
    long dim = 0;     // field case
    long free = 0;    // Z case
    std::vector<mpz_class> torsion;
    bool trivial() const { return field ? dim == 0 : free == 0 && torsion.empty(); }
    std::string str() const;
    json to_json() const;
    bool operator==(const ModuleNF& o) const {
        return field == o.field && dim == o.dim && free == o.free && torsion == o.torsion;
    }
};

ModuleNF module_invariants(const FPModule& m);
ModuleNF nf_direct_sum(const ModuleNF& a, const ModuleNF& b);
// integer solution of A x = b, if one exists
std::optional<std::vector<mpz_class>> solve_integer(const Mat& A, const std::vector<Scalar>& b);
// invariant factors (including 1s) of an integer relation matrix, rank
std::vector<mpz_class> invariant_factors(const SparseMatrix& M);

}
