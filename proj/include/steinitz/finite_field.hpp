#ifndef STEINITZ_FINITE_FIELD_HPP_
#define STEINITZ_FINITE_FIELD_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "steinitz/integer.hpp"

namespace steinitz {

/* F_q = F_p[t]/(m(t)) with m monic irreducible of degree f; p < 2^63.
 * Elements are coefficient vectors of length f (constant first). */
class FiniteField {
  public:
    using Elem = std::vector<std::uint64_t>;

    /* modulus: monic, constant first, assumed irreducible mod p. */
    FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus);
    static FiniteField prime_field(std::uint64_t p);

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return static_cast<unsigned>(modulus_.size() - 1); }
    Int order() const;
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    Elem zero() const { return Elem(degree(), 0); }
    Elem one() const;
    Elem from_int(const Int& x) const;
    Elem from_int(std::int64_t x) const { return from_int(Int(static_cast<long>(x))); }
    /* Reduce a polynomial in t (integer coefficients) into the field. */
    Elem from_poly(const std::vector<Int>& coeffs) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem pow(const Elem& a, const Int& e) const;
    bool is_zero(const Elem& a) const;

    /* Enumeration: base-p digits of index; index(element(i)) == i. */
    Elem element(const Int& index) const;
    Int index(const Elem& a) const;

    std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const
    {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
    }

  private:
    std::uint64_t p_;
    std::vector<std::uint64_t> modulus_;
};

/* Polynomials over F_q, constant coefficient first, no trailing zeros. */
using FqPoly = std::vector<FiniteField::Elem>;

namespace fq {

void trim(const FiniteField& F, FqPoly& a);
int degree(const FqPoly& a);
FqPoly add(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const FiniteField& F, const FqPoly& a, const FqPoly& b);
std::pair<FqPoly, FqPoly> divmod(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly rem(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly monic(const FiniteField& F, const FqPoly& a);
FqPoly gcd(const FiniteField& F, FqPoly a, FqPoly b);
FqPoly powmod(const FiniteField& F, FqPoly base, Int e, const FqPoly& m);
FqPoly derivative(const FiniteField& F, const FqPoly& a);
FiniteField::Elem eval(const FiniteField& F, const FqPoly& a, const FiniteField::Elem& x);
FqPoly x_poly(const FiniteField& F);

/* Rabin's test; a must have nonzero leading coefficient. */
bool is_irreducible(const FiniteField& F, const FqPoly& a);

/* Distinct roots of a in F_q, ascending by index. */
std::vector<FiniteField::Elem> roots(const FiniteField& F, const FqPoly& a);

/* Monic irreducible factors with multiplicities, sorted by (degree, coefficients). */
std::vector<std::pair<FqPoly, unsigned>> factor(const FiniteField& F, const FqPoly& a);

}  // namespace fq

}  // namespace steinitz

#endif
