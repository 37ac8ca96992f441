#include "doctest.h"
#include "rograd/quotients.hpp"

using namespace rograd;

TEST_SUITE("central")
{
    TEST_CASE("quotients of the integers")
    {
        auto Z1 = matrix_algebra(1, BaseRing::Z());
        CHECK(d3(Z1).nf.str() == "Z/3");
        CHECK(d2(Z1).nf.str() == "Z/2");
        // 1(x)1 is killed by 2 and by 3
        CHECK(angle(Z1).nf.trivial());
        CHECK(hc1(Z1).nf.trivial());
        CHECK(tilde_wedge(Z1).nf.str() == "Z^2");
        auto Q1 = matrix_algebra(1, BaseRing::Q());
        CHECK(d3(Q1).nf.dim == 0);
        CHECK(d3(matrix_algebra(1, BaseRing::Fp(3))).nf.dim == 1);
        CHECK(d2(matrix_algebra(1, BaseRing::Fp(2))).nf.dim == 1);
    }

    TEST_CASE("matrix coordinates")
    {
        // M_2(Z)/[M_2, M_2] = Z via the trace, so D_2 = Z/2
        auto M = matrix_algebra(2, BaseRing::Z());
        CHECK(d2(M).nf.str() == "Z/2");
        // D[D,D] contains E11 [E12, E21] = E11, so D_3 vanishes
        CHECK(d3(M).nf.trivial());
        // Morita invariance: HC_1(M_2(Q)) = HC_1(Q) = 0
        CHECK(hc1(matrix_algebra(2, BaseRing::Q())).nf.dim == 0);
        CHECK_THROWS_AS(d2(split_octonions(BaseRing::Z())), precondition_error);
        CHECK_THROWS_AS(hc1(split_octonions(BaseRing::Q())), precondition_error);
    }

    TEST_CASE("angle bracket of the octonions")
    {
        auto O = split_octonions(BaseRing::Q());
        auto q = angle(O);
        CHECK(q.nf.dim == 14);
        // <a,b> -> SD(a,b) kills the relations and is injective
        std::vector<SVec> img;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) img.push_back(standard_derivation(O, sv_unit(i), sv_unit(j)).flat());
        for (auto& rel : q.module.relations.row) {
            SVec s;
            for (auto& [g, x] : rel) sv_axpy(s, x, img[g], O.ring);
            CHECK(s.empty());
        }
        CHECK(rank_of(img, O.ring) == q.nf.dim);
        auto t = tilde_wedge(O);
        CHECK(t.module.gens == 80);
        CHECK(t.to_json()["kind"] == "TildeWedge");
    }
}
