#include "rograd/ring.hpp"

#include <sstream>

namespace rograd {

bool is_prime(long n)
{
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

BaseRing BaseRing::Fp(long p)
{
    if (!is_prime(p)) throw precondition_error("F_p needs p prime, got " + std::to_string(p));
    return {PrimeField, p};
}

BaseRing BaseRing::parse(const std::string& s)
{
    if (s == "Z") return Z();
    if (s == "Q") return Q();
    if (s.rfind("Fp:", 0) == 0) {
        long p = 0;
        try {
            p = std::stol(s.substr(3));
        } catch (...) {
            throw std::invalid_argument("bad ring '" + s + "'");
        }
        if (!is_prime(p)) throw std::invalid_argument("bad ring '" + s + "': not prime");
        return Fp(p);
    }
    throw std::invalid_argument("bad ring '" + s + "' (expected Z, Q or Fp:<p>)");
}

bool BaseRing::invertible(long n) const
{
    switch (kind) {
    case Integers: return n == 1 || n == -1;
    case Rationals: return n != 0;
    case PrimeField: return n % p != 0;
    }
    return false;
}

std::string BaseRing::name() const
{
    switch (kind) {
    case Integers: return "Z";
    case Rationals: return "Q";
    case PrimeField: return "Fp:" + std::to_string(p);
    }
    return "?";
}

Scalar BaseRing::norm(const Scalar& x) const
{
    if (kind == Rationals) return x;
    if (kind == Integers) {
        if (x.get_den() != 1) throw precondition_error("non-integral value " + x.get_str() + " over Z");
        return x;
    }
    mpz_class P(p);
    mpz_class n = x.get_num() % P;
    if (x.get_den() != 1) {
        mpz_class d = x.get_den() % P, di;
        if (d == 0) throw precondition_error("denominator " + x.get_den().get_str() + " not invertible in " + name());
        mpz_invert(di.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
        n = (n * di) % P;
    }
    if (n < 0) n += P;
    return Scalar(n);
}

Scalar BaseRing::inv(const Scalar& x) const
{
    if (x == 0) throw precondition_error("division by zero");
    if (kind == Rationals) return 1 / x;
    if (kind == Integers) {
        if (x != 1 && x != -1) throw precondition_error("non-unit " + x.get_str() + " over Z");
        return x;
    }
    return norm(1 / x);
}

std::string scalar_str(const Scalar& x)
{
    return x.get_str();
}

Scalar parse_scalar(const std::string& s)
{
    Scalar x;
    if (x.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar '" + s + "'");
    x.canonicalize();
    return x;
}

}
