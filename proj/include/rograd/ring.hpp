#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace rograd {

using Scalar = mpq_class;

struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient ring. Elements are carried as mpq_class in canonical form:
// integers for Z, reduced residues 0..p-1 for F_p.
struct BaseRing {
    enum Kind { Integers, Rationals, PrimeField };
    Kind kind = Rationals;
    long p = 0;

    static BaseRing Z() { return {Integers, 0}; }
    static BaseRing Q() { return {Rationals, 0}; }
    static BaseRing Fp(long p);
    static BaseRing parse(const std::string& s);

    bool is_field() const { return kind != Integers; }
    bool is_fp() const { return kind == PrimeField; }
    long characteristic() const { return kind == PrimeField ? p : 0; }
    // whether n is a unit
    bool invertible(long n) const;
    std::string name() const;

    Scalar norm(const Scalar& x) const;
    Scalar inv(const Scalar& x) const;
    Scalar from_long(long n) const { return norm(Scalar(n)); }

    bool operator==(const BaseRing& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const BaseRing& o) const { return !(*this == o); }
};

bool is_prime(long n);
std::string scalar_str(const Scalar& x);
Scalar parse_scalar(const std::string& s);

}
