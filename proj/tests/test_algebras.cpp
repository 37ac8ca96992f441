#include "doctest.h"
#include "rograd/algebra.hpp"

#include <random>

using namespace rograd;

namespace {

SVec rand_vec(std::mt19937& g, int n)
{
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<Scalar> v(n);
    for (auto& x : v) x = d(g);
    return sv_from_dense(v);
}

// alpha1 alpha2 + x.u
Scalar quad_norm(const SVec& a)
{
    auto d = sv_to_dense(a, 8);
    return d[0] * d[4] + d[1] * d[5] + d[2] * d[6] + d[3] * d[7];
}

// derivations as the kernel of d(e_i e_j) - d(e_i) e_j - e_i d(e_j)
int derivation_dim(const StructureAlgebra& A)
{
    int n = A.dim;
    SparseMatrix M(0, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::vector<Scalar> row(n * n);
                // coefficient of e_k; unknown d(r,c) at r*n+c
                for (auto& [l, x] : A.prod(i, j)) row[k * n + l] += x;
                for (int m = 0; m < n; ++m) {
                    row[m * n + i] -= sv_get(A.prod(m, j), k);
                    row[m * n + j] -= sv_get(A.prod(i, m), k);
                }
                M.push_row(sv_from_dense(row));
            }
    return (int)kernel_basis(M, A.ring).size();
}

}

TEST_SUITE("algebras")
{
    TEST_CASE("matrix algebra")
    {
        auto A = matrix_algebra(2, BaseRing::Q());
        CHECK(A.dim == 4);
        CHECK(A.associative);
        CHECK(A.alternative);
        CHECK(!A.commutative);
        CHECK(A.prod(1, 2) == sv_unit(0));  // E12 E21 = E11
        CHECK(A.prod(2, 1) == sv_unit(3));
        CHECK(A.prod(1, 1).empty());
        CHECK(A.bar(sv_unit(1)) == sv_unit(2));
        auto Q = matrix_algebra(1, BaseRing::Q());
        CHECK(Q.commutative);
        CHECK(derivation_dim(A) == 3);
    }

    TEST_CASE("octonion laws")
    {
        for (auto R : {BaseRing::Q(), BaseRing::Z(), BaseRing::Fp(2), BaseRing::Fp(3)}) {
            CAPTURE(R.name());
            auto O = split_octonions(R);
            CHECK(O.dim == 8);
            CHECK(O.alternative);
            CHECK(!O.associative);
            CHECK(!O.commutative);
        }
        auto O = split_octonions(BaseRing::Q());
        // hand computed products
        CHECK(O.prod(1, 2) == sv_unit(7));
        CHECK(O.prod(1, 5) == SVec{{0, Scalar(-1)}});
        CHECK(O.prod(5, 1) == SVec{{4, Scalar(-1)}});
        CHECK(O.prod(0, 1) == sv_unit(1));
        CHECK(O.prod(1, 0).empty());
        // dual bases
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(O.norm(sv_unit(i), sv_unit(4 + j)) == (i == j ? 1 : 0));
        // all triples of basis elements satisfy the alternative laws
        bool nonzero = false;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                for (int k = 0; k < 8; ++k) {
                    SVec a = sv_unit(i), b = sv_unit(j), c = sv_unit(k);
                    SVec s = associator(O, a, b, c);
                    nonzero |= !s.empty();
                    CHECK(sv_add(s, associator(O, b, a, c), O.ring).empty());
                    CHECK(sv_add(s, associator(O, a, c, b), O.ring).empty());
                    CHECK(associator(O, O.bar(a), b, c) == sv_scale(s, -1, O.ring));
                }
        CHECK(nonzero);
        std::mt19937 g(7);
        for (int t = 0; t < 50; ++t) {
            SVec a = rand_vec(g, 8), b = rand_vec(g, 8);
            CHECK(quad_norm(O.mul(a, b)) == quad_norm(a) * quad_norm(b));
            CHECK(O.norm(a, a) == 2 * quad_norm(a));
            CHECK(O.mul(a, O.bar(a)) == sv_scale(O.one(), quad_norm(a), O.ring));
            CHECK(associator(O, a, a, b).empty());
            CHECK(associator(O, b, a, a).empty());
        }
        std::vector<SVec> fixed;
        SparseMatrix M(0, 8);
        for (int i = 0; i < 8; ++i) {
            std::vector<Scalar> row(8);
            for (int j = 0; j < 8; ++j) row[j] = (*O.involution)(i, j) - (i == j ? 1 : 0);
            M.push_row(sv_from_dense(row));
        }
        auto ker = kernel_basis(M, O.ring);
        REQUIRE(ker.size() == 1);
        CHECK(rank_of({ker[0], O.one()}, O.ring) == 1);
        CHECK_THROWS_AS(matrix_algebra(2, BaseRing::Q(), false).bar(sv_unit(0)), precondition_error);
    }

    TEST_CASE("alternative operator identities")
    {
        CHECK(alternative_identity_violations(split_octonions(BaseRing::Q())) == 0);
        CHECK(alternative_identity_violations(split_octonions(BaseRing::Fp(2))) == 0);
        CHECK(alternative_identity_violations(matrix_algebra(2, BaseRing::Z())) == 0);
        // e0 e0 = e1 has vanishing triple products; adding e0 e1 = e0 breaks (e0, e0, e0) = 0
        StructureAlgebra N;
        N.ring = BaseRing::Q();
        N.dim = 2;
        N.labels = {"a", "b"};
        N.table = {sv_unit(1), {}, {}, {}};
        N.finalize();
        CHECK(N.commutative);
        CHECK(N.alternative);
        StructureAlgebra P = N;
        P.table = {sv_unit(1), sv_unit(0), {}, {}};
        P.finalize();
        CHECK(!P.alternative);
        CHECK(alternative_identity_violations(P) > 0);
    }

    TEST_CASE("standard derivations")
    {
        auto O = split_octonions(BaseRing::Q());
        auto sd = standard_derivation_span(O);
        CHECK(sd.size() == 14);
        CHECK(derivation_dim(O) == 14);
        for (auto& v : sd) {
            Mat d = Mat::unflat(v, 8, 8);
            CHECK(is_derivation(O, d));
            CHECK(mat_mul(d, *O.involution, O.ring) == mat_mul(*O.involution, d, O.ring));
            CHECK(is_skew(O, d));
            CHECK(mat_apply(d, O.one(), O.ring).empty());
        }
        auto M = matrix_algebra(2, BaseRing::Q());
        // associative case: SD(a,b) = ad([a,b]), inner derivations of M_2
        auto sm = standard_derivation_span(M);
        CHECK(sm.size() == 3);
    }

    TEST_CASE("trialities")
    {
        auto O = split_octonions(BaseRing::Q());
        auto& R = O.ring;
        std::mt19937 g(11);
        for (int t = 0; t < 6; ++t) {
            SVec a = rand_vec(g, 8), b = rand_vec(g, 8), c = rand_vec(g, 8);
            auto la = lambda_triality(O, a), lb = lambda_triality(O, b);
            auto ra = rho_triality(O, a), rb = rho_triality(O, b);
            CHECK(is_triality(O, la));
            CHECK(is_triality(O, rb));
            CHECK(is_triality(O, sigma_triality(O, a, b)));
            SVec ab = commutator(O, a, b);
            auto s2 = triality_scale(sigma_triality(O, a, b), -2, R);
            CHECK(triality_bracket(ra, rb, R) == triality_add(s2, triality_scale(rho_triality(O, ab), -1, R), R));
            CHECK(triality_bracket(la, lb, R) == triality_add(s2, lambda_triality(O, ab), R));
            SVec abc = associator(O, a, b, c);
            auto lc = lambda_triality(O, c), rc = rho_triality(O, c);
            auto sab = sigma_triality(O, a, b);
            CHECK(triality_bracket(lc, sab, R) ==
                  triality_add(sigma_triality(O, ab, c), triality_scale(lambda_triality(O, abc), -1, R), R));
            CHECK(triality_bracket(rc, sab, R) ==
                  triality_add(sigma_triality(O, c, ab), triality_scale(rho_triality(O, abc), -1, R), R));
            // h round trip
            Mat d = standard_derivation(O, a, c);
            auto h = triality_h(O, d, a, b);
            CHECK(is_triality(O, h));
            auto back = triality_h_inverse(O, h);
            CHECK(back.d == d);
            CHECK(back.a == a);
            CHECK(back.b == b);
        }
        CHECK_THROWS_AS(triality_h_inverse(split_octonions(BaseRing::Fp(3)), {}), precondition_error);
    }

    TEST_CASE("g1 span is so(N)")
    {
        auto O = split_octonions(BaseRing::Q());
        auto g1 = g1_span(O);
        auto so = skew_operators(O);
        CHECK(so.size() == 28);
        CHECK(g1.size() == 28);
        for (auto& v : g1) CHECK(is_skew(O, Mat::unflat(v, 8, 8)));
        CHECK(intersect_spaces(g1, so, 64, O.ring).size() == 28);
    }

    TEST_CASE("json")
    {
        auto O = split_octonions(BaseRing::Q());
        auto j = O.to_json();
        CHECK(j["dim"] == 8);
        CHECK(j["flags"]["alternative"] == true);
        CHECK(j["labels"].size() == 8);
    }
}
