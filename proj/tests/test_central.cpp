#include "doctest.h"
#include "rograd/central.hpp"

using namespace rograd;

namespace {

// B x B with the exchange involution, B = Q or Q[e]/(e^2)
StructureAlgebra exchange_algebra(bool dual)
{
    int b = dual ? 2 : 1;
    StructureAlgebra A;
    A.ring = BaseRing::Q();
    A.dim = 2 * b;
    A.labels = dual ? std::vector<std::string>{"p", "pe", "q", "qe"} : std::vector<std::string>{"p", "q"};
    A.degree.assign(A.dim, {});
    A.table.assign(A.dim * A.dim, {});
    Mat s(A.dim, A.dim);
    SVec u;
    for (int h = 0; h < 2; ++h) {
        int o = h * b;
        A.table[o * A.dim + o] = sv_unit(o);
        if (dual) A.table[o * A.dim + o + 1] = A.table[(o + 1) * A.dim + o] = sv_unit(o + 1);
        for (int k = 0; k < b; ++k) s(o + k, (1 - h) * b + k) = 1;
        u.push_back({o, 1});
    }
    A.unit = u;
    A.involution = s;
    A.finalize();
    return A;
}

std::set<IVec> ds_of(char t, int rank, long n)
{
    auto R = build_root_system(t, rank);
    return degenerate_sums_bruteforce(R).by_divisor[n];
}

}

TEST_SUITE("central")
{
    TEST_CASE("uce of sl3 over Q and F3")
    {
        auto L = sl_algebra(3, matrix_algebra(1, BaseRing::Q()));
        auto u = uce(L);
        CHECK(u.total.trivial());
        auto rep = kernel_report(u, build_root_system('A', 2));
        CHECK(rep.support.empty());
        CHECK(rep.roots_bijective);
        auto A = uce_algebra(L);
        CHECK(A.U.dim == 8);
        CHECK(structural_predicates(A.U).is_perfect);

        auto L3 = sl_algebra(3, matrix_algebra(1, BaseRing::Fp(3)));
        auto r3 = kernel_report(uce(L3), build_root_system('A', 2));
        CHECK(r3.support == ds_of('A', 2, 3));
        for (auto& [g, k] : r3.by_degree)
            if (r3.support.count(g)) CHECK(k.dim == 1);
        CHECK(r3.torsion_law);
        auto A3 = uce_algebra(L3);
        CHECK(A3.U.dim == 14);
        CHECK(check_lie(A3.U).ok());
        CHECK(structural_predicates(A3.U).is_perfect);
    }

    TEST_CASE("uce of sl_K over Z")
    {
        auto A2 = build_root_system('A', 2);
        auto r = kernel_report(uce(sl_algebra(3, matrix_algebra(1, BaseRing::Z()))), A2);
        CHECK(r.support == ds_of('A', 2, 3));
        CHECK(r.support.size() == 6);
        for (auto& g : r.support) {
            CHECK(r.by_degree[g].free == 0);
            CHECK(r.by_degree[g].torsion == std::vector<mpz_class>{3});
            CHECK(r.classification[g] == "degenerate_sum(3)");
        }
        CHECK(r.by_degree[IVec{0, 0, 0}].trivial());
        CHECK(r.roots_bijective);
        CHECK(r.torsion_law);
        CHECK(r.failures.empty());

        auto A3 = build_root_system('A', 3);
        auto r4 = kernel_report(uce(sl_algebra(4, matrix_algebra(1, BaseRing::Z()))), A3);
        CHECK(r4.support == ds_of('A', 3, 2));
        for (auto& g : r4.support) CHECK(r4.by_degree[g].torsion == std::vector<mpz_class>{2});
        CHECK(r4.by_degree[IVec{0, 0, 0, 0}].trivial());

        auto r5 = kernel_report(uce(sl_algebra(5, matrix_algebra(1, BaseRing::Z()))), build_root_system('A', 4));
        for (auto& g : r5.support) CHECK(is_zero(g));
        CHECK(r5.failures.empty());

        auto j = r.to_json();
        CHECK(j["support"].size() == 6);
        CHECK(j["kernel"].size() == 6);
        CHECK(r.table().find("degenerate_sum(3)") != std::string::npos);
    }

    TEST_CASE("uce needs a perfect algebra")
    {
        GradedLieAlgebra A;
        A.ring = BaseRing::Q();
        A.dim = 2;
        A.labels = {"a", "b"};
        A.br.assign(4, {});
        CHECK_THROWS_AS(uce(A), precondition_error);
        CHECK_THROWS_AS(kernel_report(uce(sl_algebra(3, matrix_algebra(1, BaseRing::Q()))), build_root_system('A', 3)),
                        precondition_error);
    }

    TEST_CASE("degree zero of uce(TKK) matches uider")
    {
        for (auto R : {BaseRing::Q(), BaseRing::Z()}) {
            CAPTURE(R.name());
            auto V = rectangular_pair(1, 2, matrix_algebra(1, R));
            auto L = tkk(V);
            auto u = uce(L);
            // over Z the A2 degenerate sums contribute Z/3 each
            if (R.is_field())
                CHECK(u.total.trivial());
            else
                CHECK(u.total.torsion == std::vector<mpz_class>(6, 3));
            ModuleNF zero;
            zero.field = R.is_field();
            for (auto& b : u.blocks)
                if (b.degree.back() == 0) zero = nf_direct_sum(zero, b.quotient);
            CHECK(zero == uider(V).nf);
        }
    }

    TEST_CASE("A2 and A3 cocycles")
    {
        for (auto R : {BaseRing::Fp(2), BaseRing::Fp(3), BaseRing::Z()})
            for (std::string kind : {"A2", "A3"}) {
                CAPTURE(R.name());
                CAPTURE(kind);
                auto D = matrix_algebra(1, R);
                auto E = cocycle_extension(kind, D);
                CHECK(E.copies.size() == 6);
                CHECK(E.alternating_failures == 0);
                CHECK(E.cocycle_failures == 0);
                CHECK(E.triples > 0);
                CHECK(E.ok());
                if (E.extension) CHECK(structural_predicates(*E.extension).is_perfect);
            }
        // fibers agree with the uce blocks over Z
        auto E = cocycle_extension("A2", matrix_algebra(1, BaseRing::Z()));
        auto r = kernel_report(uce(E.L), build_root_system('A', 2));
        for (auto& g : E.copies) CHECK(E.fiber[g] == r.by_degree[g]);
        auto E3 = cocycle_extension("A2", matrix_algebra(1, BaseRing::Fp(3)));
        REQUIRE(E3.extension);
        CHECK(E3.extension->dim == 14);
        // a value on a pair that is not degenerate breaks the cocycle law
        auto bad = E3;
        int h = -1, x = -1;
        for (int a = 0; a < bad.L.dim; ++a) {
            if (is_zero(bad.L.root_degree(a)) && h < 0) h = a;
            if (!is_zero(bad.L.root_degree(a)) && x < 0) x = a;
        }
        REQUIRE(h >= 0);
        REQUIRE(x >= 0);
        bad.psi[(size_t)h * bad.L.dim + x] = sv_unit(0);
        bad.psi[(size_t)x * bad.L.dim + h] = sv_scale(sv_unit(0), -1, bad.L.ring);
        verify_cocycle(bad);
        CHECK(bad.alternating_failures == 0);
        CHECK(bad.cocycle_failures > 0);
        CHECK_THROWS_AS(cocycle_extension("B2", matrix_algebra(1, BaseRing::Z())), precondition_error);
    }

    TEST_CASE("star kernels")
    {
        auto Q = matrix_algebra(1, BaseRing::Q());
        auto k3 = star_kernel(3, Q);
        CHECK(k3.hc.trivial());
        CHECK(k3.in_D0);
        CHECK(!k3.cross_checked);
        auto k4 = star_kernel(4, Q);
        CHECK(k4.hc.trivial());
        CHECK(k4.cross_checked);
        CHECK(k4.cross_check_ok);
        for (bool dual : {false, true}) {
            auto kx = star_kernel(4, exchange_algebra(dual));
            CHECK(kx.in_D0);
            CHECK(kx.cross_check_ok);
            CHECK(kx.described_dim == kx.hc.dim);
        }
        auto km = star_kernel(4, matrix_algebra(2, BaseRing::Q()));
        CHECK(km.cross_check_ok);
        CHECK(km.in_D0);
        CHECK_THROWS_AS(star_kernel(2, Q), precondition_error);
    }
}
