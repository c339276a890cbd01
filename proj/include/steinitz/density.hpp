#ifndef STEINITZ_DENSITY_HPP_
#define STEINITZ_DENSITY_HPP_

#include <optional>
#include <vector>

#include "steinitz/search.hpp"

namespace steinitz {

/* A(b) = prod (c_i b + d_i) for b ranging over T (all of O_K when unset),
 * squarefreeness tested away from the primes in `exclude`. */
struct DensitySystem {
    std::vector<LinearFactor> factors;
    std::optional<TSet> t;
    std::vector<PrimeIdeal> exclude;
};

/* a(P) = #{b in O_K/P^2 : A(b) not in P^2} / #(O_K/P^2). */
Rat local_density(const NumberField& K, const std::vector<LinearFactor>& factors, const PrimeIdeal& P);

struct LocalDensityRow {
    PrimeIdeal prime;
    Rat density;
};

struct DensityReport {
    std::uint64_t sample = 0;       // elements of T in the box
    std::uint64_t squarefree = 0;
    std::uint64_t unknown = 0;      // excluded from the fraction
    double empirical = 0;           // squarefree / (sample - unknown)
    Rat truncated_product = 1;      // prod over P not in S, N(P) <= B
    double gap = 0;                 // |empirical - truncated_product|
    std::vector<LocalDensityRow> table;
    bool integer_path = false;      // exact integer sieve over Q was used
};

struct DensityOptions {
    Int box = 1000;
    Int prime_bound = 100;
    FactorOptions factor;
    unsigned workers = 1;
};

DensityReport density_report(const NumberField& K, const DensitySystem& sys, const DensityOptions& opts);

/* The discriminant factors of a certificate over its set T, with S = {a, p1}. */
DensitySystem density_system_from_certificate(const NumberField& K, const SearchCertificate& c);

}  // namespace steinitz

#endif
