#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "steinitz/density.hpp"
#include "steinitz/squarefree.hpp"

using namespace testing;

namespace {

LinearFactor lin(const NumberField& K, long c, long d) { return {K.from_int(Int(c)), K.from_int(Int(d))}; }

}  // namespace

TEST_CASE("local densities by enumeration")
{
    for (long p : {2, 3, 5, 7, 11}) {
        PrimeIdeal P = factor_rational_prime(Q(), p)[0];
        Rat p2(p * p);
        CHECK(local_density(Q(), {lin(Q(), 1, 0)}, P) == 1 - 1 / p2);
        CHECK(local_density(Q(), {lin(Q(), 1, 0), lin(Q(), 1, 1)}, P) == 1 - 2 / p2);
        CHECK(local_density(Q(), {}, P) == 1);
    }
    // a prime dividing every coefficient kills every residue
    PrimeIdeal P3 = factor_rational_prime(Q(), 3)[0];
    CHECK(local_density(Q(), {lin(Q(), 9, 9)}, P3) == 0);
    // over Q(sqrt -5) at a split prime of norm 7: 1 - 1/49
    PrimeIdeal P7 = factor_rational_prime(M5(), 7)[0];
    CHECK(local_density(M5(), {lin(M5(), 1, 0)}, P7) == Rat(48, 49));
    PrimeIdeal P11 = factor_rational_prime(M5(), 11)[0];
    CHECK(local_density(M5(), {lin(M5(), 1, 0)}, P11) == 1 - Rat(1, 121 * 121));
}

TEST_CASE("density report: trivial systems")
{
    DensityOptions o;
    o.box = 1000;
    DensityReport empty = density_report(Q(), DensitySystem{}, o);
    CHECK(empty.empirical == 1.0);
    CHECK(empty.truncated_product == 1);
    o.prime_bound = 0;
    DensitySystem sys{{lin(Q(), 1, 0)}, std::nullopt, {}};
    DensityReport r = density_report(Q(), sys, o);
    CHECK(r.truncated_product == 1);
    CHECK(r.table.empty());
    CHECK(r.sample == 2001);
}

TEST_CASE("integer sieve counts match brute force")
{
    DensityOptions o;
    o.box = 3000;
    o.prime_bound = 10;
    DensitySystem sys{{lin(Q(), 1, 0), lin(Q(), 1, 1)}, std::nullopt, {}};
    DensityReport r = density_report(Q(), sys, o);
    CHECK(r.integer_path);
    std::uint64_t count = 0;
    for (long b = -3000; b <= 3000; ++b)
        if (oracle::is_squarefree_int(Int(b) * Int(b + 1)))
            ++count;
    CHECK(r.squarefree == count);
    CHECK(r.sample == 6001);
    CHECK(r.truncated_product == Rat(1, 2) * Rat(7, 9) * Rat(23, 25) * Rat(47, 49));

    // progression b = 3 + 10 j with the prime 5 excluded
    DensitySystem prog{{lin(Q(), 2, 5)}, TSet{Q().from_int(3), principal_ideal(Q(), Q().from_int(10))},
                       {factor_rational_prime(Q(), 5)[0]}};
    DensityReport pr = density_report(Q(), prog, o);
    std::uint64_t pc = 0, ps = 0;
    for (long b = -3000; b <= 3000; ++b) {
        if (((b - 3) % 10 + 10) % 10)
            continue;
        ++ps;
        Int v = Int(2 * b + 5);
        while (v % 5 == 0)
            v /= 5;
        if (oracle::is_squarefree_int(v))
            ++pc;
    }
    CHECK(pr.sample == ps);
    CHECK(pr.squarefree == pc);
}

TEST_CASE("lattice path over Q(sqrt -5) agrees with per-element squarefreeness")
{
    DensityOptions o;
    o.box = 25;
    o.prime_bound = 20;
    DensitySystem sys{{lin(M5(), 1, 0), lin(M5(), 1, 1)}, std::nullopt, {}};
    DensityReport r = density_report(M5(), sys, o);
    CHECK_FALSE(r.integer_path);
    std::uint64_t sample = 0, sf = 0;
    for (long y = -12; y <= 12; ++y)
        for (long x = -25; x <= 25; ++x) {
            if (2 * x * x + 10 * y * y > 625)
                continue;
            ++sample;
            Element b = el(M5(), {x, y});
            Element v = M5().mul(b, b + M5().one());
            if (!v.is_zero() &&
                ideal_is_squarefree(M5(), principal_ideal(M5(), v)).status == SquarefreeStatus::squarefree)
                ++sf;
        }
    CHECK(r.sample == sample);
    CHECK(r.unknown == 0);
    CHECK(r.squarefree == sf);
}

TEST_CASE("A(b) = b approaches 6/pi^2 as the box grows")
{
    const double target = 6.0 / (M_PI * M_PI);
    DensitySystem sys{{lin(Q(), 1, 0)}, std::nullopt, {}};
    double prev = 1;
    for (long N : {10000L, 100000L, 1000000L}) {
        DensityOptions o;
        o.box = N;
        DensityReport r = density_report(Q(), sys, o);
        double err = std::fabs(r.empirical - target);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.001);
}
