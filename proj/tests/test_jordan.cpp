#include "doctest.h"
#include "rograd/jordan.hpp"

#include <set>

using namespace rograd;

namespace {

SVec e(int i)
{
    return sv_unit(i);
}

// d[ii] for a symmetric element d, written against the symmetric basis directly
SVec diag_elem(const HermitianCoords& hc, int i, const SVec& d)
{
    int k = (int)hc.sym.size();
    std::vector<std::vector<Scalar>> cols;
    for (auto& h : hc.sym) cols.push_back(sv_to_dense(h, hc.D->dim));
    // solve sum c_h sym[h] = d by elimination on the k columns
    Mat A(hc.D->dim, k);
    for (int h = 0; h < k; ++h)
        for (int r = 0; r < hc.D->dim; ++r) A(r, h) = cols[h][r];
    auto c = solve_integer(A, sv_to_dense(d, hc.D->dim));
    REQUIRE(c);
    SVec out;
    for (int h = 0; h < k; ++h)
        if ((*c)[h] != 0) out.push_back({hc.diag_index(i, h), Scalar((*c)[h])});
    return out;
}

SVec off_elem(const HermitianCoords& hc, int i, int j, const SVec& d)
{
    SVec out;
    SVec v = i < j ? d : hc.D->bar(d);
    for (auto& [k, x] : v) out.push_back({hc.offdiag_index(i, j, k), x});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return out;
}

}

TEST_SUITE("jordan")
{
    TEST_CASE("rectangular pair examples")
    {
        auto Q = matrix_algebra(1, BaseRing::Q());
        auto V = rectangular_pair(1, 2, Q);
        CHECK(V.dim[0] == 2);
        CHECK(V.labels[0][0] == "E12:1");
        CHECK(V.labels[1][1] == "E31:1");
        // Q_{E12} E21 = E12, {E12 E21 E13} = E13, Q_{E12} E31 = 0
        CHECK(V.Q(0, e(0), e(0)) == e(0));
        CHECK(V.triple(0, e(0), e(0), e(1)) == e(1));
        CHECK(V.Q(0, e(0), e(1)).empty());
        // orthogonal grid members: {E13 E31 E24} = 0 in M(2,2)
        auto W = rectangular_pair(2, 2, Q);
        int x = rect_index(2, 2, Q, 0, 0, 0, 0), y = rect_index(2, 2, Q, 1, 0, 0, 0),
            z = rect_index(2, 2, Q, 0, 1, 1, 0);
        CHECK(W.triple(0, e(x), e(y), e(z)).empty());
        CHECK_THROWS_AS(rectangular_pair(2, 2, split_octonions(BaseRing::Q())), precondition_error);
    }

    TEST_CASE("pair identities with all linearizations")
    {
        auto Q = matrix_algebra(1, BaseRing::Q());
        auto Z = matrix_algebra(1, BaseRing::Z());
        std::vector<JordanPair> pairs{rectangular_pair(1, 2, Q), rectangular_pair(2, 2, Z),
                                      rectangular_pair(1, 3, matrix_algebra(1, BaseRing::Fp(2))),
                                      rectangular_pair(1, 2, matrix_algebra(2, BaseRing::Z())),
                                      hermitian_algebra(3, Q).pair()};
        for (auto& V : pairs) {
            CAPTURE(V.name);
            auto r = check_pair_identities(V);
            CHECK(r.tuples > 0);
            CHECK(r.violations == 0);
        }
        // a corrupted structure constant is detected
        auto V = rectangular_pair(1, 2, Q);
        V.Qd[0][0] = sv_scale(V.Qd[0][0], 2, V.ring);
        CHECK(check_pair_identities(V).violations > 0);
    }

    TEST_CASE("octonion rectangular pair satisfies the identities")
    {
        auto V = rectangular_pair(1, 2, split_octonions(BaseRing::Z()));
        CHECK(V.dim[0] == 16);
        auto r = check_pair_identities(V);
        CHECK(r.violations == 0);
    }

    TEST_CASE("hermitian algebras")
    {
        auto M2 = matrix_algebra(2, BaseRing::Q());
        auto J = hermitian_algebra(3, M2);
        auto hc = hermitian_coords(3, M2);
        CHECK(hc.sym.size() == 3);
        CHECK(J.dim == 3 * 3 + 3 * 4);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                SVec A = e(a), B = e(b);
                // a[12] o b[23] = (ab)[13]
                CHECK(J.circle(off_elem(hc, 0, 1, A), off_elem(hc, 1, 2, B)) == off_elem(hc, 0, 2, M2.mul(A, B)));
                // a[12] o b[21] = (ab + b^a^)[11] + (ba + a^b^)[22]
                SVec d1 = sv_add(M2.mul(A, B), M2.mul(M2.bar(B), M2.bar(A)), M2.ring);
                SVec d2 = sv_add(M2.mul(B, A), M2.mul(M2.bar(A), M2.bar(B)), M2.ring);
                CHECK(J.circle(off_elem(hc, 0, 1, A), off_elem(hc, 1, 0, B)) ==
                      sv_add(diag_elem(hc, 0, d1), diag_elem(hc, 1, d2), M2.ring));
            }
        for (int i = 0; i < 3; ++i)
            for (auto& h : hc.sym) CHECK(hermitian_entry(hc, i, i, h) == diag_elem(hc, i, h));
        CHECK(hermitian_entry(hc, 1, 0, e(1)) == off_elem(hc, 1, 0, e(1)));
        CHECK_THROWS_AS(hermitian_entry(hc, 0, 0, e(1)), precondition_error);
        // unit acts as 2 id in the circle product
        for (int i = 0; i < J.dim; ++i) CHECK(J.circle(J.unit, e(i)) == sv_scale(e(i), 2, J.ring));
        auto O = split_octonions(BaseRing::Q());
        CHECK(hermitian_algebra(3, O).dim == 27);
        CHECK_THROWS_AS(hermitian_algebra(4, O), precondition_error);
        CHECK_THROWS_AS(hermitian_algebra(3, matrix_algebra(1, BaseRing::Z())), precondition_error);
    }

    TEST_CASE("Albert algebra matches H_3 over the octonions")
    {
        auto A = albert_algebra(BaseRing::Q());
        CHECK(A.dim == 27);
        auto O = split_octonions(BaseRing::Q());
        auto H = hermitian_algebra(3, O);
        auto hc = hermitian_coords(3, O);
        CHECK(A.circle(e(0), e(0)) == sv_scale(e(0), 2, A.ring));
        CHECK(A.circle(e(0), e(albert_p(0, 3))).empty());
        CHECK(A.circle(e(1), e(albert_p(0, 3))) == e(albert_p(0, 3)));
        // P_1(x) = x[23], P_2(y) = y^[13], P_3(z) = z[12]
        std::vector<SVec> phi(27);
        for (int i = 0; i < 3; ++i) phi[albert_e(i)] = diag_elem(hc, i, O.one());
        for (int k = 0; k < 8; ++k) {
            phi[albert_p(0, k)] = off_elem(hc, 1, 2, e(k));
            phi[albert_p(1, k)] = off_elem(hc, 2, 0, e(k));
            phi[albert_p(2, k)] = off_elem(hc, 0, 1, e(k));
        }
        auto map = [&](const SVec& v) {
            SVec out;
            for (auto& [i, x] : v) sv_axpy(out, x, phi[i], A.ring);
            return out;
        };
        bool iso = true;
        for (int a = 0; a < 27; ++a)
            for (int b = 0; b < 27; ++b)
                if (map(A.c(a, b)) != H.circle(phi[a], phi[b])) iso = false;
        CHECK(iso);
        CHECK(map(A.unit) == H.unit);
        CHECK_THROWS_AS(albert_algebra(BaseRing::Fp(3)), precondition_error);
    }

    TEST_CASE("Peirce decompositions")
    {
        auto Q = matrix_algebra(1, BaseRing::Q());
        auto H3 = hermitian_algebra(3, Q);
        auto hc = hermitian_coords(3, Q);
        std::vector<SVec> E;
        for (int i = 0; i < 3; ++i) E.push_back(e(hc.diag_index(i, 0)));
        auto P = peirce(H3, E);
        for (auto& [k, sp] : P.spaces) CHECK(sp.size() == 1);
        CHECK(P.rule_violations == 0);
        // sum over i != k of J_ik o J_ik spans sum J_ii
        std::vector<SVec> sq, diag;
        for (int i = 0; i < 3; ++i) {
            diag.insert(diag.end(), P.spaces[{i, i}].begin(), P.spaces[{i, i}].end());
            for (int k = i + 1; k < 3; ++k)
                for (auto& x : P.spaces[{i, k}])
                    for (auto& y : P.spaces[{i, k}]) sq.push_back(H3.circle(x, y));
        }
        CHECK(rank_of(sq, H3.ring) == 3);
        CHECK(rank_of(diag, H3.ring) == 3);
        CHECK(intersect_spaces(span_basis(sq, H3.ring), diag, H3.dim, H3.ring).size() == 3);

        auto H4 = hermitian_algebra(4, Q);
        auto hc4 = hermitian_coords(4, Q);
        std::vector<SVec> E4;
        for (int i = 0; i < 4; ++i) E4.push_back(e(hc4.diag_index(i, 0)));
        CHECK(peirce(H4, E4).rule_violations == 0);

        auto A = albert_algebra(BaseRing::Q());
        auto PA = peirce(A, {e(0), e(1), e(2)});
        CHECK(PA.rule_violations == 0);
        CHECK(PA.spaces[{0, 1}].size() == 8);
        CHECK(PA.spaces[{0, 0}].size() == 1);

        auto P1 = peirce(H3, {H3.unit});
        CHECK(P1.spaces[{0, 0}].size() == 6);
        CHECK_THROWS_AS(peirce(H3, {sv_scale(H3.unit, 2, H3.ring)}), precondition_error);
        CHECK_THROWS_AS(peirce(H3, {E[0], E[1]}), precondition_error);
    }

    TEST_CASE("pair Peirce spaces and grids")
    {
        auto Q = matrix_algebra(1, BaseRing::Q());
        auto V = rectangular_pair(1, 2, Q);
        PairElement e1{e(0), e(0)}, e2{e(1), e(1)};
        auto P = pair_idempotent_peirce(V, e1);
        CHECK(P.contains(2, e1, V.ring));
        CHECK(P.contains(1, e2, V.ring));
        CHECK(pair_idempotent_peirce(V, e2).contains(1, e1, V.ring));
        auto Z = pair_idempotent_peirce(V, {SVec{}, SVec{}});
        CHECK(Z.V[0][0].size() == 2);
        CHECK(Z.V[0][1].size() == 2);
        CHECK_THROWS_AS(pair_idempotent_peirce(V, {sv_scale(e(0), 2, V.ring), e(0)}), precondition_error);

        auto A2 = build_root_system('A', 2);
        std::vector<IVec> R1;
        auto fam = rectangular_grid(1, 2, Q, R1);
        auto cr1 = three_grading(A2, "collinear").R1;
        CHECK(std::set<IVec>(R1.begin(), R1.end()) == std::set<IVec>(cr1.begin(), cr1.end()));
        auto rep = verify_grid(V, fam, A2, R1);
        CHECK(rep.ok);
        CHECK(rep.joint[0][R1[0]].size() == 1);

        auto O = split_octonions(BaseRing::Q());
        auto VO = rectangular_pair(1, 2, O);
        CHECK(verify_grid(VO, rectangular_grid(1, 2, O, R1), A2, R1).ok);

        auto A3 = build_root_system('A', 3);
        auto fam3 = rectangular_grid(2, 2, Q, R1);
        CHECK(verify_grid(rectangular_pair(2, 2, Q), fam3, A3, R1).ok);

        auto C3 = build_root_system('C', 3);
        auto H3 = hermitian_algebra(3, Q);
        auto hf = hermitian_grid(3, Q, R1);
        auto hr1 = three_grading(C3, "hermitian").R1;
        CHECK(std::set<IVec>(R1.begin(), R1.end()) == std::set<IVec>(hr1.begin(), hr1.end()));
        auto hr = verify_grid(H3.pair(), hf, C3, R1);
        CHECK(hr.ok);

        auto dup = fam;
        dup[1] = dup[0];
        auto bad = verify_grid(V, dup, A2, {IVec{1, -1, 0}, IVec{1, 0, -1}});
        CHECK(!bad.ok);
        REQUIRE(!bad.failures.empty());
        CHECK(bad.failures[0].find("associated ≠ expected") != std::string::npos);
    }
}
