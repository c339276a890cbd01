#ifndef STEINITZ_INTEGER_HPP_
#define STEINITZ_INTEGER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace steinitz {

using Int = mpz_class;
using Rat = mpq_class;

struct PrimePower {
    Int prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/* Sorted by prime, exponents positive. */
using Factorization = std::vector<PrimePower>;

struct FactorOptions {
    std::uint64_t trial_bound = 1000000;
    /* Pollard-Brent iterations spent on each composite cofactor. */
    std::uint64_t rho_budget = 2000000;
};

struct FactorResult {
    Factorization factors;
    /* Product of the composite parts that could not be split (1 when complete). */
    Int unfactored = 1;

    bool complete() const { return unfactored == 1; }
};

bool is_probable_prime(const Int& n);

/* Factor |n| (n != 0): trial division, primality test on cofactors,
 * perfect-power detection, then Pollard-Brent rho within budget. */
FactorResult factor_integer(const Int& n, const FactorOptions& opts = {});

Factorization merge_factorizations(const Factorization& a, const Factorization& b);
Int factorization_value(const Factorization& f);
unsigned valuation(Int n, const Int& p);

Int mod_inverse(const Int& a, const Int& m);
Int floor_div(const Int& a, const Int& b);
Int factorial(unsigned n);
Int pow_int(const Int& base, unsigned long e);
Int lcm_den(const std::vector<Rat>& v);

/* Primes p <= bound, ascending (simple Eratosthenes). */
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);
Rat parse_rational(const std::string& s);

inline int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/* Total order used when ties need breaking: 0, 1, -1, 2, -2, ... */
int compare_signed_magnitude(const Int& a, const Int& b);

}  // namespace steinitz

#endif
