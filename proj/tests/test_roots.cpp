#include "doctest.h"
#include "rograd/roots.hpp"

using namespace rograd;

namespace {

std::vector<std::pair<char, int>> all_types()
{
    std::vector<std::pair<char, int>> t;
    for (int n = 1; n <= 7; ++n) t.push_back({'A', n});
    for (int n = 2; n <= 6; ++n) t.push_back({'B', n}), t.push_back({'C', n});
    for (int n = 4; n <= 6; ++n) t.push_back({'D', n});
    for (int n = 6; n <= 8; ++n) t.push_back({'E', n});
    t.push_back({'F', 4});
    t.push_back({'G', 2});
    return t;
}

size_t expected_count(char t, int n)
{
    switch (t) {
    case 'A': return n * (n + 1);
    case 'B':
    case 'C': return 2 * n * n;
    case 'D': return 2 * n * (n - 1);
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    case 'F': return 48;
    case 'G': return 12;
    }
    return 0;
}

}

TEST_SUITE("roots")
{
    TEST_CASE("counts and axioms")
    {
        for (auto [t, n] : all_types()) {
            auto R = build_root_system(t, n);
            CAPTURE(R.name());
            CHECK(R.roots.size() == expected_count(t, n));
            CHECK((int)R.simple.size() == n);
            CHECK(R.is_root(IVec(R.ambient, 0)));
            for (auto& a : R.roots) {
                CHECK(R.pairing(a, a) == 2);
                CHECK(R.reflect(a, a) == neg(a));
                for (long k = 2; k <= 3; ++k) CHECK(!R.is_root(mul(k, a)));
                for (auto& b : R.roots) {
                    CHECK(R.is_root(R.reflect(a, b)));
                    CHECK(R.reflect(a, R.reflect(a, b)) == b);
                }
            }
            for (auto& s : R.simple) CHECK(R.index.count(s));
        }
        CHECK_THROWS_AS(build_root_system('D', 3), precondition_error);
        CHECK_THROWS_AS(build_root_system('G', 3), precondition_error);
        CHECK_THROWS_AS(build_root_system('E', 9), precondition_error);
    }

    TEST_CASE("examples")
    {
        auto A2 = build_root_system('A', 2);
        CHECK(A2.roots.size() == 6);
        CHECK(A2.pairing(IVec{1, -1, 0}, IVec{1, 0, -1}) == 1);
        CHECK(A2.reflect(IVec{1, -1, 0}, IVec{1, 0, -1}) == IVec{0, 1, -1});
        auto D4 = build_root_system('D', 4);
        CHECK(D4.pairing(IVec{1, 1, 0, 0}, IVec{0, 0, 1, 1}) == 0);
        auto C3 = build_root_system('C', 3);
        CHECK(C3.roots.size() == 18);
        auto G2 = build_root_system('G', 2);
        CHECK(G2.is_root(IVec{2, -1, -1}));
        CHECK(G2.is_root(IVec{1, 0, -1}));
        for (auto& r : G2.roots) CHECK(r[0] + r[1] + r[2] == 0);
        // Cartan matrix of G2: short alpha1, long alpha2
        CHECK(G2.pairing(G2.simple[1], G2.simple[0]) == -3);
        CHECK(G2.pairing(G2.simple[0], G2.simple[1]) == -1);
    }

    TEST_CASE("simple roots form a base")
    {
        // every root is an integer combination with coefficients of one sign
        for (auto [t, n] : all_types()) {
            auto R = build_root_system(t, n);
            Mat A(R.ambient, n);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < R.ambient; ++i) A(i, j) = R.simple[j][i];
            int positive = 0;
            for (auto& r : R.roots) {
                auto c = solve_integer(A, to_q(r));
                REQUIRE(c.has_value());
                bool pos = true, negv = true;
                for (auto& x : *c) {
                    if (x < 0) pos = false;
                    if (x > 0) negv = false;
                }
                CHECK((pos || negv));
                positive += pos;
            }
            CHECK(positive * 2 == (int)R.roots.size());
        }
    }

    TEST_CASE("weyl orbits")
    {
        auto A2 = build_root_system('A', 2);
        CHECK(weyl_orbit(to_q({1, -1, 0}), A2).size() == 6);
        CHECK(weyl_orbit(to_q({0, 0, 0}), A2).size() == 1);
        auto A3 = build_root_system('A', 3);
        auto w = fundamental_weights(A3);
        QVec w2 = w[1];
        for (auto& x : w2) x *= 2;
        auto orb = weyl_orbit(w2, A3);
        std::set<QVec> want;
        for (IVec v : {IVec{1, -1, 1, -1}, IVec{1, -1, -1, 1}, IVec{1, 1, -1, -1}}) {
            want.insert(to_q(v));
            want.insert(to_q(neg(v)));
        }
        CHECK(orb == want);
        for (auto [t, n] : all_types()) {
            if (t == 'E' && n == 8) continue;
            auto R = build_root_system(t, n);
            for (auto& om : fundamental_weights(R)) CHECK(weyl_orbit_all(om, R) == weyl_orbit_simple(om, R));
        }
    }

    TEST_CASE("fundamental weights")
    {
        for (auto [t, n] : all_types()) {
            auto R = build_root_system(t, n);
            auto w = fundamental_weights(R);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) CHECK(R.pairing(w[i], R.simple[j]) == (i == j ? 1 : 0));
            for (auto& om : w) CHECK(in_weight_lattice(om, R));
        }
        auto A3 = build_root_system('A', 3);
        auto w = fundamental_weights(A3);
        CHECK(w[1] == QVec{Scalar(1, 2), Scalar(1, 2), Scalar(-1, 2), Scalar(-1, 2)});
        auto C2 = build_root_system('C', 2);
        CHECK(fundamental_weights(C2)[0] == QVec{1, 0});
        CHECK(in_root_lattice(to_q({2, 0}), C2));
        CHECK(!in_root_lattice(to_q({1, 0}), C2));
        CHECK_THROWS_AS(fundamental_weights(C2, {IVec{1, -1}, IVec{-1, 1}}), precondition_error);
    }

    TEST_CASE("three gradings")
    {
        auto A2 = build_root_system('A', 2);
        auto g = three_grading(A2, "collinear");
        CHECK(g.R1 == std::vector<IVec>{{1, -1, 0}, {1, 0, -1}});
        auto C3 = build_root_system('C', 3);
        auto h = three_grading(C3, "hermitian");
        CHECK(h.R1.size() == 6);
        for (auto& r : h.R1) CHECK(std::all_of(r.begin(), r.end(), [](long x) { return x >= 0; }));
        for (auto& [t, n, kind] : std::vector<std::tuple<char, int, std::string>>{
                 {'A', 3, "rectangular"}, {'A', 4, "collinear"}, {'B', 3, "odd-quadratic"}, {'C', 4, "hermitian"},
                 {'D', 4, "even-quadratic"}, {'D', 5, "alternating"}}) {
            auto R = build_root_system(t, n);
            auto gr = three_grading(R, kind, 2);
            std::set<IVec> one(gr.R1.begin(), gr.R1.end());
            for (auto& a : gr.R1)
                for (auto& b : gr.R1) CHECK(!R.index.count(add(a, b)));
        }
        CHECK_THROWS_AS(three_grading(build_root_system('G', 2), "collinear"), precondition_error);
        CHECK_THROWS_AS(three_grading(build_root_system('E', 6), "collinear"), precondition_error);
        CHECK_THROWS_AS(three_grading(build_root_system('B', 3), "hermitian"), precondition_error);
    }

    TEST_CASE("root strings")
    {
        auto D4 = build_root_system('D', 4);
        auto s = root_string({1, 1, 0, 0}, {0, 0, 1, 1}, D4);
        CHECK(s.roots == std::vector<IVec>{{1, 1, 0, 0}});
        auto A2 = build_root_system('A', 2);
        auto t = root_string({1, -1, 0}, {0, 1, -1}, A2);
        CHECK(t.roots == std::vector<IVec>{{1, -1, 0}, {1, 0, -1}});
        auto G2 = build_root_system('G', 2);
        IVec a{1, -1, 0}, b{-2, 1, 1};
        CHECK(G2.pairing(a, b) == -1);
        auto u = root_string(a, b, G2);
        CHECK(u.roots.size() == 2);
        CHECK(u.roots[1] == add(a, b));
        for (auto [ty, n] : all_types()) {
            auto R = build_root_system(ty, n);
            for (auto& x : R.roots)
                for (auto& y : R.roots) {
                    auto rs = root_string(x, y, R);
                    CHECK(rs.u - rs.d <= 4);
                    // sum of end exponents equals minus the pairing
                    if (x != y && x != neg(y)) CHECK(rs.d + rs.u == -R.pairing(x, y));
                }
        }
    }

    TEST_CASE("json export sorted")
    {
        auto R = build_root_system('B', 2);
        auto j = R.to_json();
        CHECK(j["type"] == "B");
        CHECK(j["roots"].size() == 8);
        auto v = j["roots"].get<std::vector<IVec>>();
        CHECK(std::is_sorted(v.begin(), v.end()));
    }
}
