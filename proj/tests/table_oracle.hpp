#pragma once

// Degenerate sums transcribed from the classification table, written out
// directly as coordinate vectors (no root-system code involved).

#include "rograd/roots.hpp"

#include <map>
#include <set>

namespace oracle {

using rograd::IVec;

struct Row {
    char type;
    int rank;
    std::map<long, std::set<IVec>> sums;
};

inline IVec e(int n, std::initializer_list<std::pair<int, long>> c)
{
    IVec v(n, 0);
    for (auto [i, x] : c) v[i] = x;
    return v;
}

// +-k e_i
inline std::set<IVec> pm_unit(int n, long k)
{
    std::set<IVec> s;
    for (int i = 0; i < n; ++i) {
        s.insert(e(n, {{i, k}}));
        s.insert(e(n, {{i, -k}}));
    }
    return s;
}

// all (+-k, ..., +-k)
inline std::set<IVec> all_signs(int n, long k)
{
    std::set<IVec> s;
    for (int m = 0; m < (1 << n); ++m) {
        IVec v(n);
        for (int i = 0; i < n; ++i) v[i] = (m >> i) & 1 ? -k : k;
        s.insert(v);
    }
    return s;
}

// +-k(e_i +- e_j), i<j
inline std::set<IVec> pm_pairs(int n, long k)
{
    std::set<IVec> s;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (long a : {k, -k})
                for (long b : {k, -k}) s.insert(e(n, {{i, a}, {j, b}}));
    return s;
}

inline std::set<IVec> with_neg(std::initializer_list<IVec> l)
{
    std::set<IVec> s;
    for (auto& v : l) {
        s.insert(v);
        IVec w = v;
        for (auto& x : w) x = -x;
        s.insert(w);
    }
    return s;
}

inline std::set<IVec> unite(std::set<IVec> a, const std::set<IVec>& b)
{
    a.insert(b.begin(), b.end());
    return a;
}

// k(e_i - e_j) in Z^3, i != j
inline std::set<IVec> g2_mult(long k)
{
    std::set<IVec> s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) s.insert(e(3, {{i, k}, {j, -k}}));
    return s;
}

inline std::vector<Row> table()
{
    std::vector<Row> t;
    t.push_back({'A', 2, {{3, with_neg({{2, -1, -1}, {1, -2, 1}, {1, 1, -2}})}}});
    t.push_back({'A', 3, {{2, with_neg({{1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}})}}});
    t.push_back({'B', 3, {{2, unite(pm_unit(3, 2), all_signs(3, 1))}}});
    t.push_back({'B', 4, {{2, unite(pm_unit(4, 2), all_signs(4, 1))}}});
    t.push_back({'B', 5, {{2, pm_unit(5, 2)}}});
    for (int n : {2, 3, 5}) t.push_back({'C', n, {{2, unite(pm_unit(n, 2), pm_pairs(n, 2))}}});
    t.push_back({'D', 4, {{2, unite(pm_unit(4, 2), all_signs(4, 1))}}});
    t.push_back({'D', 5, {{2, pm_unit(5, 2)}}});
    for (int n : {6, 7, 8}) t.push_back({'E', n, {}});
    // F4 coordinates are stored doubled
    t.push_back({'F', 4, {{2, unite(pm_unit(4, 4), all_signs(4, 2))}}});
    t.push_back({'G', 2, {{2, g2_mult(2)}, {3, g2_mult(3)}}});
    return t;
}

}
