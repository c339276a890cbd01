#ifndef STEINITZ_IDEAL_HPP_
#define STEINITZ_IDEAL_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "steinitz/finite_field.hpp"
#include "steinitz/matrix.hpp"
#include "steinitz/number_field.hpp"

namespace steinitz {

/* I = L / den where L is an integral O_K-lattice given by its row HNF over
 * the w-coordinates.  The pair (hnf, den) is canonical: den > 0 and the
 * gcd of den with all HNF entries is 1. */
struct FractionalIdeal {
    IntMatrix hnf;
    Int den = 1;

    std::size_t degree() const { return hnf.size(); }
    bool is_integral() const { return den == 1; }
    /* Least positive integer in the numerator lattice. */
    const Int& min_integer() const { return hnf[0][0]; }
    Rat norm() const;

    bool operator==(const FractionalIdeal& o) const { return den == o.den && hnf == o.hnf; }
};

/* Canonical ideal order: norm, then denominator, then HNF entries row by row. */
bool ideal_less(const FractionalIdeal& a, const FractionalIdeal& b);

FractionalIdeal unit_ideal(const NumberField& K);
FractionalIdeal principal_ideal(const NumberField& K, const Element& x);
FractionalIdeal ideal_from_gens(const NumberField& K, const std::vector<Element>& gens);
/* Ideal with the given Z-basis (rows over w-coordinates, then / den); the
 * lattice must already be an O_K-module. */
FractionalIdeal ideal_from_lattice(const NumberField& K, IntMatrix rows, const Int& den);

FractionalIdeal ideal_mul(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_add(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_inverse(const NumberField& K, const FractionalIdeal& a);
FractionalIdeal ideal_intersect(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_pow(const NumberField& K, const FractionalIdeal& a, long e);
FractionalIdeal ideal_scale(const NumberField& K, const FractionalIdeal& a, const Element& x);

bool ideal_contains(const FractionalIdeal& I, const Element& x);
bool ideal_contains(const FractionalIdeal& I, const FractionalIdeal& J);
/* Z-basis elements (rows of the HNF divided by den). */
std::vector<Element> ideal_basis(const FractionalIdeal& I);
bool coprime(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b);

struct PrimeIdeal {
    FractionalIdeal ideal;
    Int p;
    unsigned e = 1;
    unsigned f = 1;
    /* Monic factor h of g mod p with P = (p, h(theta)); constant first. */
    std::vector<std::uint64_t> local_factor;

    Int norm() const { return pow_int(p, f); }
    bool operator==(const PrimeIdeal& o) const { return ideal == o.ideal; }
};

bool prime_less(const PrimeIdeal& a, const PrimeIdeal& b);

/* (p) = prod P_i^{e_i} by Kummer-Dedekind; throws unsupported_prime when
 * p divides the index [O_K : Z[theta]].  Sorted in canonical order. */
std::vector<PrimeIdeal> factor_rational_prime(const NumberField& K, const Int& p);

/* All prime ideals of norm <= bound in canonical order.  Index-dividing
 * rational primes are skipped when `skip_index_primes`, else rejected. */
std::vector<PrimeIdeal> prime_ideals_up_to(const NumberField& K, const Int& bound, bool skip_index_primes = false);

/* v_P(I); I nonzero. */
long valuation(const NumberField& K, const FractionalIdeal& I, const PrimeIdeal& P);
/* v_P(x) for a nonzero element. */
long valuation(const NumberField& K, const Element& x, const PrimeIdeal& P);

/* Prime factorization of a nonzero fractional ideal, complete when every
 * rational prime of the norm is supported. */
std::vector<std::pair<PrimeIdeal, long>> factor_ideal(const NumberField& K, const FractionalIdeal& I);

/* O_K/P as a finite field, with reduction and lifting. */
class ResidueField {
  public:
    ResidueField(const NumberField& K, const PrimeIdeal& P);
    const FiniteField& field() const { return F_; }
    /* x must be P-integral (denominator prime to p). */
    FiniteField::Elem reduce(const Element& x) const;
    Element lift(const FiniteField::Elem& a) const;

  private:
    const NumberField* K_;
    PrimeIdeal P_;
    FiniteField F_;
};

/* O_K / m for an integral ideal m; representatives are the reduced
 * vectors 0 <= v_i < h_ii of the HNF. */
class ResidueRing {
  public:
    ResidueRing(const NumberField& K, FractionalIdeal modulus);
    const FractionalIdeal& modulus() const { return m_; }
    Int size() const;
    /* Canonical representative; the denominator of x must be prime to m. */
    Element reduce(const Element& x) const;
    bool is_zero(const Element& x) const { return reduce(x).is_zero(); }
    Element element(const Int& index) const;
    Int index(const Element& reduced) const;
    /* Enumerated representatives in index order (size must be <= limit). */
    std::vector<Element> representatives(const Int& limit) const;

  private:
    const NumberField* K_;
    FractionalIdeal m_;
};

struct Congruence {
    Element residue;
    FractionalIdeal modulus;  // integral
};

/* x with x = r_i mod m_i for all i, reduced modulo the intersection of the
 * moduli.  Non-coprime moduli are accepted when the residues agree; an
 * inconsistent system raises inconsistent_congruences. */
Element crt_solve(const NumberField& K, const std::vector<Congruence>& system);

}  // namespace steinitz

#endif
