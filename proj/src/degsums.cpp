#include "rograd/degsums.hpp"

#include <numeric>

namespace rograd {

std::set<IVec> DegenerateSumReport::all() const
{
    std::set<IVec> s;
    for (auto& [n, v] : by_divisor) s.insert(v.begin(), v.end());
    return s;
}

long DegenerateSumReport::divisor_of(const IVec& g) const
{
    for (auto& [n, v] : by_divisor)
        if (v.count(g)) return n;
    return 0;
}

long divisor(const IVec& g, const RootSystem& R)
{
    if (is_zero(g)) throw precondition_error("divisor of 0");
    long d = 0;
    for (auto& a : R.roots) d = std::gcd(d, std::labs(R.pairing(g, a)));
    if (d == 0) throw precondition_error("element pairs to zero with every coroot");
    return d;
}

namespace {

bool independent(const IVec& a, const IVec& b)
{
    return a != b && a != neg(b);
}

RootPair ordered(const IVec& a, const IVec& b)
{
    return a < b ? RootPair{a, b} : RootPair{b, a};
}

std::set<RootPair> pairs_summing_to(const IVec& g, const RootSystem& R)
{
    std::set<RootPair> out;
    for (auto& a : R.roots) {
        IVec b = sub(g, a);
        if (R.index.count(b) && independent(a, b)) out.insert(ordered(a, b));
    }
    return out;
}

void add_sum(DegenerateSumReport& rep, const IVec& g, long n, const RootSystem& R)
{
    rep.by_divisor[n].insert(g);
    rep.pairs[g] = pairs_summing_to(g, R);
}

}

std::set<RootPair> degenerate_pairs(const IVec& g, const RootSystem& R)
{
    if (is_zero(g)) return {};
    auto ps = pairs_summing_to(g, R);
    if (ps.empty() || divisor(g, R) == 1) return {};
    return ps;
}

DegenerateSumReport degenerate_sums_bruteforce(const RootSystem& R)
{
    DegenerateSumReport rep;
    rep.system = R.name();
    std::set<IVec> seen;
    for (size_t i = 0; i < R.roots.size(); ++i)
        for (size_t j = i + 1; j < R.roots.size(); ++j) {
            const IVec &a = R.roots[i], &b = R.roots[j];
            if (!independent(a, b)) continue;
            IVec g = add(a, b);
            if (!seen.insert(g).second) continue;
            long n = divisor(g, R);
            if (n > 1) add_sum(rep, g, n, R);
        }
    return rep;
}

DegenerateSumReport degenerate_sums_algorithm(const RootSystem& R)
{
    DegenerateSumReport rep;
    rep.system = R.name();
    long bound = 2 * R.max_norm();
    // divisor 2: orbits of doubled fundamental weights lying in the root lattice
    for (auto& w : fundamental_weights(R)) {
        QVec w2 = w;
        for (auto& x : w2) x *= 2;
        if (!in_root_lattice(w2, R)) continue;
        if (R.qdot(w2, w2) > bound) continue;
        for (auto& q : weyl_orbit(w2, R)) {
            IVec g;
            for (auto& x : q) g.push_back(x.get_num().get_si());
            if (pairs_summing_to(g, R).empty()) continue;
            long n = divisor(g, R);
            if (n > 1) add_sum(rep, g, n, R);
        }
    }
    // divisor 3: sums of long roots with <a, b^vee> = 1
    for (auto& a : R.roots) {
        if (!R.is_long(a)) continue;
        for (auto& b : R.roots) {
            if (!R.is_long(b) || R.pairing(a, b) != 1) continue;
            IVec g = add(a, b);
            if (divisor(g, R) == 3) add_sum(rep, g, 3, R);
        }
    }
    return rep;
}

json degsums_json(const RootSystem& R, const DegenerateSumReport& rep)
{
    json out = json::array();
    for (auto& [n, sums] : rep.by_divisor) {
        json s = json::array(), p = json::object();
        for (auto& g : sums) {
            s.push_back(R.eps_str(g));
            json lst = json::array();
            for (auto& [a, b] : rep.pairs.at(g)) lst.push_back({R.eps_str(a), R.eps_str(b)});
            p[R.eps_str(g)] = lst;
        }
        out.push_back({{"type", std::string(1, R.type)},
                       {"rank", R.rank},
                       {"divisor", n},
                       {"sums", s},
                       {"pairs", p}});
    }
    if (out.empty())
        out.push_back({{"type", std::string(1, R.type)},
                       {"rank", R.rank},
                       {"divisor", nullptr},
                       {"sums", json::array()},
                       {"pairs", json::object()}});
    return out;
}

std::string degsums_table(const RootSystem& R, const DegenerateSumReport& rep)
{
    std::string name = std::string(1, R.type) + "_" + std::to_string(R.rank);
    std::string out;
    if (rep.by_divisor.empty()) return "| " + name + " | - | empty |\n";
    for (auto& [n, sums] : rep.by_divisor) {
        out += "| " + name + " | " + std::to_string(n) + " | {";
        bool first = true;
        for (auto& g : sums) {
            out += (first ? "" : ", ") + R.eps_str(g);
            first = false;
        }
        out += "} (" + std::to_string(sums.size()) + ") |\n";
    }
    return out;
}

}
