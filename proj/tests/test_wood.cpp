#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wood_oracle.hpp"
#include "steinitz/error.hpp"
#include "steinitz/fuzz.hpp"
#include "steinitz/wood_ring.hpp"

using namespace testing;

namespace {

BinaryForm form(const NumberField& K, std::initializer_list<long> c)
{
    std::vector<Element> v;
    for (long x : c)
        v.push_back(K.from_int(Int(x)));
    return make_form(v);
}

FractionalIdeal prin(const NumberField& K, long m) { return principal_ideal(K, K.from_int(Int(m))); }

// Homogeneous discriminant of f with f_0 != 0, from the Sylvester oracle.
Rat form_discriminant(const BinaryForm& f)
{
    const std::size_t n = f.degree();
    std::vector<Rat> F, D;
    for (std::size_t k = 0; k <= n; ++k)
        F.push_back(f[n - k].coord(0));
    for (std::size_t k = 1; k <= n; ++k)
        D.push_back(Rat(static_cast<long>(k)) * F[k]);
    Rat r = oracle::sylvester_resultant(F, D) / F[n];
    return (n * (n - 1) / 2) % 2 ? -r : r;
}

}  // namespace

TEST_CASE("quadratic table")
{
    const NumberField& K = M5();
    std::mt19937_64 rng(1);
    for (int t = 0; t < 30; ++t) {
        BinaryForm f = random_form(K, rng, 2, 20, false);
        RankNRing R = build_rf(K, f);
        CHECK(R.at(1, 1, 0) == -K.mul(f[0], f[2]));
        CHECK(R.at(1, 1, 1) == -f[1]);
        CHECK(R.at(0, 1, 1) == K.one());
        CHECK(R.at(0, 1, 0) == K.zero());
    }
}

TEST_CASE("cubic table of x^3")
{
    RankNRing R = build_rf(Q(), form(Q(), {1, 0, 0, 0}));
    auto e = [&](std::size_t i, std::size_t j) {
        return std::vector<Element>{R.at(i, j, 0), R.at(i, j, 1), R.at(i, j, 2)};
    };
    Element z = Q().zero(), o = Q().one();
    CHECK(e(1, 1) == std::vector<Element>{z, z, o});
    CHECK(e(1, 2) == std::vector<Element>{z, z, z});
    CHECK(e(2, 2) == std::vector<Element>{z, z, z});
    CHECK_FALSE(oracle::quotient_mismatch(Q(), form(Q(), {1, 0, 0, 0}), R));
}

TEST_CASE("monic forms match the quotient ring")
{
    CHECK_FALSE(oracle::quotient_mismatch(Q(), form(Q(), {1, 3, 5}), build_rf(Q(), form(Q(), {1, 3, 5}))));
    CHECK_FALSE(oracle::quotient_mismatch(Q(), form(Q(), {1, 0, 0, 1}), build_rf(Q(), form(Q(), {1, 0, 0, 1}))));
    std::mt19937_64 rng(2);
    for (const NumberField* K : {&Q(), &M5(), &C2()})
        for (std::size_t n = 2; n <= 6; ++n)
            for (int t = 0; t < 8; ++t) {
                BinaryForm f = random_form(*K, rng, n, 50, true);
                RankNRing R = build_rf(*K, f);
                CHECK_FALSE(oracle::quotient_mismatch(*K, f, R));
                CHECK(monic_oracle(*K, f, R).ok);
            }
}

TEST_CASE("injected faults are caught")
{
    BinaryForm f = form(Q(), {1, 2, -3, 5});
    RankNRing R = build_rf(Q(), f);
    R.at(1, 1, 1) = R.at(1, 1, 1) + Q().one();
    CHECK_FALSE(monic_oracle(Q(), f, R).ok);
    AxiomReport ax = ring_axioms_check(Q(), R);
    CHECK_FALSE(ax.ok);
    CHECK(ax.failure == "associativity");

    RankNRing S = build_rf(Q(), f);
    S.at(1, 2, 0) = S.at(1, 2, 0) + Q().one();
    AxiomReport cm = ring_axioms_check(Q(), S);
    CHECK_FALSE(cm.ok);
    CHECK(cm.failure == "commutativity");
    CHECK(cm.witness[0] == 1);
    CHECK(cm.witness[1] == 2);
}

TEST_CASE("axioms hold for random forms")
{
    std::mt19937_64 rng(3);
    for (const NumberField* K : {&Q(), &M5(), &C2()})
        for (int t = 0; t < 60; ++t) {
            std::size_t n = 2 + rng() % 5;
            BinaryForm f = random_form(*K, rng, n, 50, rng() % 2 == 0);
            CHECK(ring_axioms_check(*K, build_rf(*K, f)).ok);
        }
}

TEST_CASE("closure criterion")
{
    CHECK(closure_obstruction(M5(), form(M5(), {3, 1, 4}), unit_ideal(M5())).ok());
    ClosureReport c = closure_obstruction(Q(), form(Q(), {1, 0, 0, 1}), prin(Q(), 2));
    CHECK(c.fn1_in_a);
    CHECK_FALSE(c.fn_in_a2);
    CHECK(closure_obstruction(Q(), form(Q(), {1, 0, 2, 4}), prin(Q(), 2)).ok());
    CHECK_THROWS_AS(build_rf_a(Q(), form(Q(), {1, 0, 0, 1}), prin(Q(), 2)), Error);
    CHECK_THROWS_AS(build_rf_a(Q(), form(Q(), {1, 1, 4}), prin(Q(), 2)), Error);

    BinaryForm g = form(M5(), {2, 7, 1});
    RankNRing same = build_rf_a(M5(), g, unit_ideal(M5()));
    RankNRing plain = build_rf(M5(), g);
    CHECK(same.constants == plain.constants);
    CHECK(same.ideals == plain.ideals);
}

TEST_CASE("twisted quadratic ring over Q")
{
    BinaryForm f = form(Q(), {1, 2, 4});
    RankNRing R = build_rf_a(Q(), f, prin(Q(), 2));
    CHECK(R.ideals[0] == unit_ideal(Q()));
    CHECK(R.ideals[1] == ideal_inverse(Q(), prin(Q(), 2)));
    CHECK(ring_axioms_check(Q(), R).ok);
    // with u = e_1 / 2: u^2 = -1 - u, an integral relation
    CHECK(R.at(1, 1, 0) == Q().from_int(-4));
    CHECK(R.at(1, 1, 1) == Q().from_int(-2));
    CHECK(*ring_discriminant(Q(), build_rf(Q(), f)) == prin(Q(), 12));
    CHECK(*ring_discriminant(Q(), R) == prin(Q(), 3));
}

TEST_CASE("discriminants")
{
    CHECK(*ring_discriminant(Q(), build_rf(Q(), form(Q(), {1, 0, -1}))) == prin(Q(), 4));
    CHECK(*ring_discriminant(Q(), build_rf(Q(), form(Q(), {1, 3, 5}))) == prin(Q(), 11));
    CHECK_FALSE(ring_discriminant(Q(), build_rf(Q(), form(Q(), {1, 2, 1}))).has_value());
    // the trace-form discriminant equals the discriminant of the form
    std::mt19937_64 rng(4);
    for (int t = 0; t < 80; ++t) {
        std::size_t n = 2 + rng() % 4;
        BinaryForm f = random_form(Q(), rng, n, 12, false);
        if (f[0].is_zero())
            continue;
        Rat d = form_discriminant(f);
        CHECK(trace_form_determinant(Q(), build_rf(Q(), f)) == Q().from_rat(d));
    }
}

TEST_CASE("twisting divides the discriminant by a^2")
{
    const NumberField& K = M5();
    const ClassGroupTable& G = group_of(K);
    std::mt19937_64 rng(5);
    int successes = 0;
    for (auto& P : prime_ideals_up_to(K, 30, true)) {
        for (int t = 0; t < 6; ++t) {
            std::size_t n = 2 + rng() % 3;
            BinaryForm f = random_form(K, rng, n, 20, false);
            std::vector<Element> c = f.coeffs;
            auto member = [&](const FractionalIdeal& I) {
                Element x = K.zero();
                for (auto& b : ideal_basis(I))
                    x = x + Int(static_cast<long>(rng() % 11) - 5) * b;
                return x;
            };
            FractionalIdeal A2 = ideal_mul(K, P.ideal, P.ideal);
            c[n - 1] = member(P.ideal);
            c[n] = member(A2);
            BinaryForm g = make_form(c);
            RankNRing R = build_rf_a(K, g, P.ideal);
            CHECK(ring_axioms_check(K, R).ok);
            auto d0 = ring_discriminant(K, build_rf(K, g));
            auto d1 = ring_discriminant(K, R);
            REQUIRE(d0.has_value() == d1.has_value());
            if (d0) {
                CHECK(*d1 == ideal_mul(K, *d0, ideal_inverse(K, A2)));
                CHECK(hecke_check(K, G, R));
                ++successes;
            }
            CHECK(steinitz_class(K, G, R) == class_of(K, G, ideal_inverse(K, P.ideal)));
        }
    }
    CHECK(successes > 20);
}

TEST_CASE("Steinitz classes and the Hecke relation")
{
    const NumberField& K = M5();
    const ClassGroupTable& G = group_of(K);
    FractionalIdeal p7 = ideal_from_gens(K, {K.from_int(7), el(K, {3, 1})});
    RankNRing R = build_rf(K, form(K, {1, 4, 3}));
    CHECK(G.index_of(steinitz_class(K, G, R)) == 0);
    CHECK(hecke_check(K, G, R));
    // f_1 = 7 and f_2 = 49 lie in p7 and p7^2
    RankNRing R7 = build_rf_a(K, form(K, {1, 7, 49}), p7);
    CHECK(G.index_of(steinitz_class(K, G, R7)) == 1);
    CHECK(hecke_check(K, G, R7));
    RankNRing R5 = build_rf_a(K, form(K, {2, 5, 75}), prin(K, 5));
    CHECK(G.index_of(steinitz_class(K, G, R5)) == 0);
    CHECK(hecke_check(K, G, R5));
}

TEST_CASE("ring campaign reports no failures")
{
    RingCampaignOptions o;
    o.forms = 150;
    o.seed = 9;
    RingCampaignReport rep = ring_campaign(M5(), group_of(M5()), o);
    CHECK(rep.forms == 150);
    CHECK(rep.oracle_checks == rep.monic);
    CHECK(rep.twist_checks == 150);
    CHECK(rep.twist_successes > 0);
    CHECK(rep.twist_successes < rep.twist_checks);
    CHECK(rep.failures.empty());
}
