#include "doctest.h"
#include "rograd/lie.hpp"

#include <set>

using namespace rograd;

namespace {

SVec e(int i)
{
    return sv_unit(i);
}

int find_label(const GradedLieAlgebra& L, const std::string& s)
{
    for (int i = 0; i < L.dim; ++i)
        if (L.labels[i] == s) return i;
    return -1;
}

// restriction of flattened n x n operators to the coordinates in idx
std::vector<SVec> restrict_ops(const std::vector<SVec>& ops, int n, const std::vector<int>& idx)
{
    std::map<int, int> pos;
    for (size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = (int)k;
    int m = (int)idx.size();
    std::vector<SVec> out;
    for (auto& op : ops) {
        SVec r;
        for (auto& [i, x] : op) {
            auto a = pos.find(i / n), b = pos.find(i % n);
            if (a != pos.end() && b != pos.end()) r.emplace_back(a->second * m + b->second, x);
        }
        out.push_back(r);
    }
    return out;
}

bool same_span(const std::vector<SVec>& a, const std::vector<SVec>& b, const BaseRing& R)
{
    std::vector<SVec> both = a;
    both.insert(both.end(), b.begin(), b.end());
    int r = rank_of(both, R);
    return r == rank_of(a, R) && r == rank_of(b, R);
}

}

TEST_SUITE("lie")
{
    TEST_CASE("operator helpers")
    {
        auto Q = BaseRing::Q();
        Mat a(2, 2), b(2, 2);
        a(0, 1) = 1;
        b(1, 0) = 1;
        CHECK(op_mul(op_flat(a), op_flat(b), 2, Q) == mat_mul(a, b, Q).flat());
        CHECK(op_comm(op_flat(a), op_flat(b), 2, Q) == mat_comm(a, b, Q).flat());
    }

    TEST_CASE("TKK of M(1,2) is sl3")
    {
        auto V = rectangular_pair(1, 2, matrix_algebra(1, BaseRing::Q()));
        auto I = instr(V);
        CHECK(I.dim() == 4);
        CHECK(I.graded);
        auto L = tkk(V, I);
        CHECK(L.dim == 8);
        auto c = check_lie(L);
        CHECK(c.ok());
        CHECK(c.triples == 56);
        auto s = structural_predicates(L);
        CHECK(s.is_perfect);
        CHECK(s.centre.empty());
        auto U = uider(V);
        CHECK(U.hc.trivial());
        CHECK(U.nf.dim == 4);
        auto UT = utkk(V);
        CHECK(UT.L.dim == 8);
        CHECK(UT.kernel_dim == 0);
        CHECK(check_lie(UT.L).ok());
        CHECK(check_lie(UT.target).ok());

        auto V3 = rectangular_pair(1, 3, matrix_algebra(1, BaseRing::Q()));
        CHECK(tkk(V3).dim == 15);
    }

    TEST_CASE("corrupted brackets are detected")
    {
        auto L = tkk(rectangular_pair(1, 2, matrix_algebra(1, BaseRing::Q())));
        auto bad = L;
        int i = 0, j = L.dim - 1;
        REQUIRE(!L.b(i, j).empty());
        bad.br[(size_t)i * L.dim + j] = sv_scale(L.b(i, j), 2, L.ring);
        CHECK(check_lie(bad).antisymmetry > 0);
        // a consistent rescaling of a single bracket breaks Jacobi
        bad.br[(size_t)j * L.dim + i] = sv_scale(L.b(j, i), 2, L.ring);
        auto c = check_lie(bad);
        CHECK(c.antisymmetry == 0);
        CHECK(c.jacobi > 0);
        // abelian algebra
        GradedLieAlgebra A;
        A.ring = BaseRing::Q();
        A.dim = 2;
        A.labels = {"a", "b"};
        A.br.assign(4, {});
        auto s = structural_predicates(A);
        CHECK(s.jacobi_ok);
        CHECK(!s.is_perfect);
        CHECK(s.centre.size() == 2);
    }

    TEST_CASE("sl3 over Q, F3 and Z")
    {
        auto L = sl_algebra(3, matrix_algebra(1, BaseRing::Q()));
        CHECK(L.dim == 8);
        auto s = structural_predicates(L);
        CHECK(s.jacobi_ok);
        CHECK(s.is_perfect);
        CHECK(s.centre.empty());
        auto L3 = sl_algebra(3, matrix_algebra(1, BaseRing::Fp(3)));
        CHECK(L3.dim == 8);
        CHECK(structural_predicates(L3).centre.size() == 1);
        auto LZ = sl_algebra(3, matrix_algebra(1, BaseRing::Z()));
        CHECK(structural_predicates(LZ).is_perfect);
        CHECK(sl_algebra(4, matrix_algebra(1, BaseRing::Z())).dim == 15);

        auto M2 = matrix_algebra(2, BaseRing::Q());
        auto LM = sl_algebra(3, M2);
        CHECK(LM.dim == 9 * 4 - 1);
        CHECK(check_lie(LM).ok());
        // [E12 a, E23 b] = E13 (ab)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                int x = find_label(LM, "E12:" + M2.labels[a]), y = find_label(LM, "E23:" + M2.labels[b]);
                REQUIRE(x >= 0);
                REQUIRE(y >= 0);
                SVec want;
                for (auto& [k, c] : M2.mul(e(a), e(b))) {
                    int z = find_label(LM, "E13:" + M2.labels[k]);
                    REQUIRE(z >= 0);
                    want.emplace_back(z, c);
                }
                std::sort(want.begin(), want.end(), [](auto& p, auto& q) { return p.first < q.first; });
                CHECK(LM.b(x, y) == want);
            }
        CHECK_THROWS_AS(sl_algebra(2, M2), precondition_error);
        CHECK_THROWS_AS(sl_algebra(3, split_octonions(BaseRing::Q())), precondition_error);
    }

    TEST_CASE("TKK algebras are perfect and centreless")
    {
        auto Q1 = matrix_algebra(1, BaseRing::Q());
        std::vector<JordanPair> pairs{rectangular_pair(1, 3, Q1), rectangular_pair(2, 2, Q1),
                                      hermitian_algebra(3, Q1).pair(), hermitian_algebra(4, Q1).pair(),
                                      rectangular_pair(1, 2, split_octonions(BaseRing::Q())),
                                      albert_algebra(BaseRing::Q()).pair()};
        for (auto& V : pairs) {
            CAPTURE(V.name);
            auto s = structural_predicates(tkk(V));
            CHECK(s.jacobi_ok);
            CHECK(s.is_perfect);
            CHECK(s.centre.empty());
        }
        auto J = hermitian_algebra(4, Q1);
        auto D = ider(J);
        CHECK(D.closed);
        CHECK(D.dim() == 6);
        JordanAlgebra k;
        k.ring = BaseRing::Q();
        k.name = "k";
        k.dim = 1;
        k.labels = {"1"};
        k.circ = {sv_scale(e(0), 2, k.ring)};
        k.unit = e(0);
        CHECK(ider(k).dim() == 0);
    }

    TEST_CASE("octonion TKK")
    {
        auto V = rectangular_pair(1, 2, split_octonions(BaseRing::Q()));
        auto L = tkk(V);
        CHECK(L.dim == 78);
        CHECK(check_lie(L).ok());
    }

    TEST_CASE("Albert algebra")
    {
        auto J = albert_algebra(BaseRing::Q());
        auto V = J.pair();
        auto I = instr(V);
        CHECK(I.dim() == 79);
        auto L = tkk(V, I);
        CHECK(L.dim == 133);
        auto D = ider(J);
        CHECK(D.dim() == 52);
        auto S = star_module(J);
        CHECK(S.dim() == 52);
        CHECK(S.kernel.empty());
        std::vector<SVec> E{e(0), e(1), e(2)};
        auto dec = star_decomposition(J, S, E);
        CHECK(dec.D.size() == 24);
        CHECK(dec.D0.size() == 28);
        CHECK(dec.ud_D == 24);
        CHECK(dec.ud_D0 == 28);
        CHECK(dec.direct);
        CHECK(dec.D0_matches);
        CHECK(dec.kernel_in_D0);
        std::vector<int> j12;
        for (int k = 0; k < 8; ++k) j12.push_back(albert_p(2, k));
        auto O = split_octonions(BaseRing::Q());
        auto r = restrict_ops(dec.ud_D0_ops, 27, j12);
        CHECK(rank_of(r, J.ring) == 28);
        CHECK(same_span(r, g1_span(O), J.ring));
    }

    TEST_CASE("star products")
    {
        auto D = matrix_algebra(1, BaseRing::Q());
        auto J = hermitian_algebra(3, D);
        auto hc = hermitian_coords(3, D);
        auto S = star_module(J);
        CHECK(S.kernel.empty());
        auto T = S.lie(J);
        CHECK(check_lie(T).ok());
        // 1 * a = 0
        for (int i = 0; i < J.dim; ++i) CHECK(S.star(J.unit, e(i)).empty());
        // [e_i * x_ij, e_i * y_ij] = -1/2 x_ij * y_ij
        auto M2 = matrix_algebra(2, BaseRing::Q());
        auto JM = hermitian_algebra(3, M2);
        auto hm = hermitian_coords(3, M2);
        auto SM = star_module(JM);
        auto TM = SM.lie(JM);
        CHECK(check_lie(TM).ok());
        int nonzero = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                SVec ei = hermitian_entry(hm, i, i, M2.one());
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        SVec x = hermitian_entry(hm, i, j, e(a)), y = hermitian_entry(hm, i, j, e(b));
                        SVec xy = SM.star(x, y);
                        nonzero += !xy.empty();
                        CHECK(TM.bracket(SM.star(ei, x), SM.star(ei, y)) == sv_scale(xy, Scalar(-1, 2), JM.ring));
                    }
            }
        CHECK(nonzero > 0);
        SVec x = hermitian_entry(hc, 0, 1, D.one());
        CHECK(!S.star(x, hermitian_entry(hc, 1, 2, D.one())).empty());
        CHECK_THROWS_AS(star_module(hermitian_algebra(3, matrix_algebra(1, BaseRing::Fp(2)))), precondition_error);
    }

    TEST_CASE("root gradings")
    {
        auto Q1 = matrix_algebra(1, BaseRing::Q());
        std::vector<IVec> R1;
        {
            auto V = rectangular_pair(1, 2, Q1);
            auto fam = rectangular_grid(1, 2, Q1, R1);
            auto A2 = build_root_system('A', 2);
            auto grid = verify_grid(V, fam, A2, R1);
            auto g = assign_root_grading(tkk(V), V, grid, fam, A2, R1);
            CAPTURE(g.failures);
            CHECK(g.ok());
            CHECK(g.support.size() == 7);
        }
        for (int n : {3, 4}) {
            auto J = hermitian_algebra(n, Q1);
            auto V = J.pair();
            auto fam = hermitian_grid(n, Q1, R1);
            auto C = build_root_system('C', n);
            auto grid = verify_grid(V, fam, C, R1);
            auto L = tkk(V);
            CHECK(check_lie(L).ok());
            auto g = assign_root_grading(L, V, grid, fam, C, R1);
            CAPTURE(g.failures);
            CHECK(g.ok());
            CHECK((int)g.support.size() == 2 * n * n + 1);
        }
    }
}
