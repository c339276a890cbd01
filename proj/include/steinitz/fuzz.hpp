#ifndef STEINITZ_FUZZ_HPP_
#define STEINITZ_FUZZ_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "steinitz/class_group.hpp"
#include "steinitz/wood_ring.hpp"

namespace steinitz {

/* Uniform integer in [-h, h] (portable: plain modular reduction). */
long random_coefficient(std::mt19937_64& rng, long h);
Element random_element(const NumberField& K, std::mt19937_64& rng, long h);
BinaryForm random_form(const NumberField& K, std::mt19937_64& rng, std::size_t n, long h, bool monic);

struct RingCampaignOptions {
    std::size_t min_degree = 2;
    std::size_t max_degree = 6;
    std::uint64_t forms = 200;
    std::uint64_t seed = 1;
    long height = 50;
    bool check_oracle = true;   // monic forms only
    bool check_twists = true;   // closure lemma on engineered (f, a)
    /* Twisting primes are drawn from the primes of norm <= this bound. */
    Int twist_prime_bound = 30;
};

struct RingFailure {
    std::string check;  // oracle, axioms, closure, discriminant, steinitz
    BinaryForm form;
    std::optional<FractionalIdeal> twist;
    std::string detail;
};

struct RingCampaignReport {
    std::uint64_t forms = 0;
    std::uint64_t monic = 0;
    std::uint64_t oracle_checks = 0;
    std::uint64_t axiom_checks = 0;
    std::uint64_t twist_checks = 0;
    std::uint64_t twist_successes = 0;
    std::uint64_t disc_checks = 0;
    std::vector<RingFailure> failures;
};

/* Random forms (half monic) checked against the quotient-ring oracle and
 * the ring axioms; twisted variants exercise the closure criterion, the
 * discriminant identity Disc R_f(a) = a^-2 Disc R_f and the Steinitz class. */
RingCampaignReport ring_campaign(const NumberField& K, const ClassGroupTable& G, const RingCampaignOptions& opts);

}  // namespace steinitz

#endif
