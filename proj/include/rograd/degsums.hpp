#pragma once

#include "rograd/roots.hpp"

#include <map>
#include <set>
#include <utility>

namespace rograd {

using RootPair = std::pair<IVec, IVec>;  // first < second

struct DegenerateSumReport {
    std::string system;
    std::map<long, std::set<IVec>> by_divisor;
    std::map<IVec, std::set<RootPair>> pairs;

    std::set<IVec> all() const;
    long divisor_of(const IVec& g) const;  // 0 if not listed
    bool operator==(const DegenerateSumReport& o) const
    {
        return by_divisor == o.by_divisor && pairs == o.pairs;
    }
};

// gcd over all roots of |<g, alpha^vee>|
long divisor(const IVec& g, const RootSystem& R);
DegenerateSumReport degenerate_sums_bruteforce(const RootSystem& R);
DegenerateSumReport degenerate_sums_algorithm(const RootSystem& R);
std::set<RootPair> degenerate_pairs(const IVec& g, const RootSystem& R);

json degsums_json(const RootSystem& R, const DegenerateSumReport& rep);
std::string degsums_table(const RootSystem& R, const DegenerateSumReport& rep);

}
