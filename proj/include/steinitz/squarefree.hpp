#ifndef STEINITZ_SQUAREFREE_HPP_
#define STEINITZ_SQUAREFREE_HPP_

#include <optional>

#include "steinitz/ideal.hpp"

namespace steinitz {

enum class SquarefreeStatus { squarefree, not_squarefree, unknown };

const char* to_string(SquarefreeStatus s);

struct SquarefreeReport {
    SquarefreeStatus status = SquarefreeStatus::unknown;
    std::optional<PrimeIdeal> witness;  // P with P^2 | I
    Factorization norm_factorization;   // of N(I), possibly partial
    Int unfactored = 1;
};

/* Squarefreeness of an integral ideal.  The norm is factored (trial
 * division to opts.trial_bound, then primality and rho); squarefree is
 * only reported when the factorization is complete.  Rational primes with
 * p^2 | N(I) are resolved at the prime-ideal level. */
SquarefreeReport ideal_is_squarefree(const NumberField& K, const FractionalIdeal& I, const FactorOptions& opts = {});

/* Same, with the norm factorization supplied by the caller (for instance
 * merged from the norms of several factors). */
SquarefreeReport ideal_is_squarefree(const NumberField& K, const FractionalIdeal& I, const FactorResult& norm);

}  // namespace steinitz

#endif
