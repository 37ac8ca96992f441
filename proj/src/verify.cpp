#include "rograd/verify.hpp"

#include "rograd/central.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

namespace rograd {

namespace {

using Clock = std::chrono::steady_clock;

VerifyResult timed(const std::string& suite, const std::string& subject, const std::function<void(VerifyResult&)>& f)
{
    VerifyResult r;
    r.suite = suite;
    r.subject = subject;
    auto t0 = Clock::now();
    try {
        f(r);
    } catch (const std::exception& e) {
        ++r.violations;
        r.failures.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

std::string describe(const JordanPair& V)
{
    return V.name + " over " + V.ring.name() + ", dim " + std::to_string(V.dim[0]);
}

std::vector<JordanPair> constructed_pairs()
{
    auto Q = BaseRing::Q(), Z = BaseRing::Z();
    std::vector<JordanPair> v;
    v.push_back(rectangular_pair(1, 2, matrix_algebra(1, Q)));
    v.push_back(rectangular_pair(1, 3, matrix_algebra(1, Q)));
    v.push_back(rectangular_pair(2, 2, matrix_algebra(1, Z)));
    v.push_back(rectangular_pair(1, 3, matrix_algebra(1, BaseRing::Fp(2))));
    v.push_back(rectangular_pair(1, 2, matrix_algebra(2, Z)));
    v.push_back(rectangular_pair(1, 2, split_octonions(Z)));
    v.push_back(hermitian_algebra(3, matrix_algebra(1, Q)).pair());
    v.push_back(hermitian_algebra(4, matrix_algebra(1, Q)).pair());
    v.push_back(hermitian_algebra(3, matrix_algebra(2, Q)).pair());
    v.push_back(albert_algebra(Q).pair());
    return v;
}

void pairs_suite(std::vector<VerifyResult>& out)
{
    for (auto& V : constructed_pairs())
        out.push_back(timed("pairs", describe(V), [&](VerifyResult& r) {
            auto rep = check_pair_identities(V);
            r.checks = rep.tuples;
            r.violations = rep.violations;
            r.failures = rep.failures;
        }));
}

void peirce_suite(std::vector<VerifyResult>& out)
{
    auto Q1 = matrix_algebra(1, BaseRing::Q());
    for (int n : {3, 4}) {
        auto J = hermitian_algebra(n, Q1);
        auto hc = hermitian_coords(n, Q1);
        out.push_back(timed("peirce", J.name, [&](VerifyResult& r) {
            std::vector<SVec> E;
            for (int i = 0; i < n; ++i) E.push_back(hermitian_entry(hc, i, i, Q1.one()));
            auto P = peirce(J, E);
            r.checks = (long)P.spaces.size();
            r.violations = P.rule_violations;
            r.failures = P.failures;
        }));
    }
    auto A = albert_algebra(BaseRing::Q());
    out.push_back(timed("peirce", A.name, [&](VerifyResult& r) {
        auto P = peirce(A, {sv_unit(albert_e(0)), sv_unit(albert_e(1)), sv_unit(albert_e(2))});
        r.checks = (long)P.spaces.size();
        r.violations = P.rule_violations;
        r.failures = P.failures;
    }));
}

void lie_one(std::vector<VerifyResult>& out, const GradedLieAlgebra& L)
{
    out.push_back(timed("lie", L.name + " over " + L.ring.name() + ", dim " + std::to_string(L.dim), [&](VerifyResult& r) {
        auto c = check_lie(L);
        r.checks = c.pairs + c.triples;
        r.violations = c.antisymmetry + c.jacobi + c.grading;
        r.failures = c.failures;
    }));
}

void lie_suite(std::vector<VerifyResult>& out)
{
    auto Q = BaseRing::Q(), Z = BaseRing::Z();
    for (auto& V : constructed_pairs()) lie_one(out, tkk(V));
    for (int K : {3, 4, 5}) lie_one(out, sl_algebra(K, matrix_algebra(1, Z)));
    lie_one(out, sl_algebra(3, matrix_algebra(1, BaseRing::Fp(3))));
    lie_one(out, sl_algebra(3, matrix_algebra(2, Q)));
    lie_one(out, utkk(rectangular_pair(1, 2, matrix_algebra(1, Q))).L);
    lie_one(out, uce_algebra(sl_algebra(3, matrix_algebra(1, BaseRing::Fp(3)))).U);
    auto J = hermitian_algebra(3, matrix_algebra(2, Q));
    lie_one(out, star_module(J).lie(J));
    auto A = albert_algebra(Q);
    lie_one(out, star_module(A).lie(A));
    for (long p : {2, 3})
        for (std::string kind : {"A2", "A3"}) {
            auto E = cocycle_extension(kind, matrix_algebra(1, BaseRing::Fp(p)));
            if (E.extension) lie_one(out, *E.extension);
        }
}

void cocycle_suite(std::vector<VerifyResult>& out)
{
    for (auto R : {BaseRing::Fp(2), BaseRing::Fp(3), BaseRing::Z()})
        for (std::string kind : {"A2", "A3"})
            out.push_back(timed("cocycles", kind + " over " + R.name(), [&](VerifyResult& r) {
                auto E = cocycle_extension(kind, matrix_algebra(1, R));
                r.checks = E.pairs + E.triples;
                r.violations = E.alternating_failures + E.cocycle_failures;
                for (auto& [g, h] : E.hits)
                    if (!h) {
                        ++r.violations;
                        r.failures.push_back("projection misses the copy at " + vec_str(g));
                    }
            }));
}

void torsion_suite(std::vector<VerifyResult>& out)
{
    struct Case {
        int K;
        BaseRing R;
    };
    for (auto c : {Case{3, BaseRing::Z()}, Case{4, BaseRing::Z()}, Case{5, BaseRing::Z()}, Case{3, BaseRing::Fp(3)},
                   Case{4, BaseRing::Fp(2)}})
        out.push_back(timed("torsion", "sl" + std::to_string(c.K) + " over " + c.R.name(), [&](VerifyResult& r) {
            auto L = sl_algebra(c.K, matrix_algebra(1, c.R));
            auto rep = kernel_report(uce(L), build_root_system('A', c.K - 1));
            r.checks = (long)rep.by_degree.size();
            if (!rep.torsion_law || !rep.roots_bijective) r.violations = (long)std::max<size_t>(1, rep.failures.size());
            r.failures = rep.failures;
        }));
}

}

std::vector<std::string> verify_suites()
{
    return {"pairs", "peirce", "lie", "cocycles", "torsion"};
}

std::vector<VerifyResult> run_verify(const std::string& suite)
{
    std::vector<VerifyResult> out;
    bool all = suite == "all";
    bool known = all;
    auto want = [&](const char* s) {
        bool w = all || suite == s;
        known |= w;
        return w;
    };
    if (want("pairs")) pairs_suite(out);
    if (want("peirce")) peirce_suite(out);
    if (want("lie")) lie_suite(out);
    if (want("cocycles")) cocycle_suite(out);
    if (want("torsion")) torsion_suite(out);
    if (!known) throw precondition_error("unknown verify suite " + suite);
    return out;
}

}
