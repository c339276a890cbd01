#include <random>

#include "doctest.h"
#include "support.hpp"
#include "steinitz/error.hpp"
#include "steinitz/ideal.hpp"
#include "steinitz/squarefree.hpp"

using namespace testing;

namespace {

FractionalIdeal prin(const NumberField& K, const Element& x) { return principal_ideal(K, x); }
FractionalIdeal prin(const NumberField& K, long m) { return principal_ideal(K, K.from_int(Int(m))); }

Element random_el(const NumberField& K, std::mt19937_64& rng, long h)
{
    Element x(K.degree());
    for (auto& c : x.num)
        c = static_cast<long>(rng() % (2 * h + 1)) - h;
    return x;
}

// Random nonzero integral ideal generated by two random elements.
FractionalIdeal random_ideal(const NumberField& K, std::mt19937_64& rng)
{
    while (true) {
        Element x = random_el(K, rng, 6), y = random_el(K, rng, 6);
        if (!x.is_zero())
            return ideal_from_gens(K, {x, y});
    }
}

}  // namespace

TEST_CASE("field construction")
{
    const NumberField& K = M5();
    CHECK(K.degree() == 2);
    CHECK(K.discriminant() == -20);
    CHECK(K.real_embeddings() == 0);
    CHECK(K.complex_pairs() == 1);
    CHECK(Q().degree() == 1);
    CHECK(Q().discriminant() == 1);
    CHECK(C2().discriminant() == -108);
    CHECK_THROWS_AS(field_from({-1, 0, 1}), Error);

    // a non-monogenic presentation: Q(sqrt 5) from t^2 - 5 with basis (1, (1+t)/2)
    FieldPtr F = build_field(load_field_spec(field_file("q_sqrt5_nonmonogenic_basis.json")));
    CHECK(F->discriminant() == 5);
    CHECK(F->index() == 2);
    CHECK(F->polynomial_discriminant() == F->index() * F->index() * F->discriminant());

    // a basis that is not closed under multiplication
    RatMatrix bad{{Rat(1), Rat(0)}, {Rat(0), Rat(1, 3)}};
    CHECK_THROWS_AS(make_field({Int(5), Int(0), Int(1)}, bad), Error);
}

TEST_CASE("basis products are integral")
{
    for (const NumberField* K : {&M5(), &C2(), &QI()})
        for (std::size_t i = 0; i < K->degree(); ++i)
            for (std::size_t j = 0; j < K->degree(); ++j)
                CHECK(K->mul(K->basis_element(i), K->basis_element(j)).is_integral());
}

TEST_CASE("norm and trace")
{
    const NumberField& K = M5();
    CHECK(K.norm(K.one()) == 1);
    CHECK(K.trace(K.one()) == 2);
    CHECK(K.norm(el(K, {1, 1})) == 6);
    CHECK(K.trace(el(K, {1, 1})) == 2);
    CHECK(K.norm(el(K, {0, 1})) == 5);
    CHECK(K.trace(el(K, {0, 1})) == 0);
    // norm form a^2 + 5 b^2 and multiplicativity
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        Element x = random_el(K, rng, 20), y = random_el(K, rng, 20);
        CHECK(K.norm(x) == Rat(x.num[0] * x.num[0] + 5 * x.num[1] * x.num[1]));
        CHECK(K.norm(K.mul(x, y)) == K.norm(x) * K.norm(y));
        if (!x.is_zero())
            CHECK(K.mul(x, K.inverse(x)) == K.one());
    }
    CHECK(C2().norm(el(C2(), {0, 1, 0})) == 2);
}

TEST_CASE("ideals from generators")
{
    const NumberField& K = M5();
    FractionalIdeal p2 = ideal_from_gens(K, {K.from_int(2), el(K, {1, 1})});
    CHECK(p2.norm() == 2);
    CHECK(p2.hnf == IntMatrix{{Int(2), Int(0)}, {Int(1), Int(1)}});
    CHECK(ideal_from_gens(K, {K.one()}) == unit_ideal(K));
    CHECK(ideal_from_gens(K, ideal_basis(p2)) == p2);
    // (6, 2 + 2 sqrt-5) = 2 * (3, 1 + sqrt-5)
    FractionalIdeal I = ideal_from_gens(K, {K.from_int(6), el(K, {2, 2})});
    FractionalIdeal p3 = ideal_from_gens(K, {K.from_int(3), el(K, {1, 1})});
    CHECK(I == ideal_mul(K, prin(K, 2), p3));
    CHECK(I.norm() == 12);
    CHECK_THROWS_AS(ideal_from_gens(K, {K.zero()}), Error);
}

TEST_CASE("ideal products, inverses and norms")
{
    const NumberField& K = M5();
    FractionalIdeal p2 = ideal_from_gens(K, {K.from_int(2), el(K, {1, 1})});
    CHECK(ideal_mul(K, p2, p2) == prin(K, 2));
    CHECK(ideal_inverse(K, unit_ideal(K)) == unit_ideal(K));
    CHECK(ideal_mul(K, prin(K, 3), ideal_inverse(K, prin(K, 3))) == unit_ideal(K));
    CHECK(prin(K, 2).norm() == 4);
    FractionalIdeal p7 = ideal_from_gens(K, {K.from_int(7), el(K, {3, 1})});
    CHECK(ideal_inverse(K, p7).norm() == Rat(1, 7));
}

TEST_CASE("ideal arithmetic properties on random pairs")
{
    std::mt19937_64 rng(2);
    for (const NumberField* K : {&M5(), &C2(), &QI()}) {
        for (int t = 0; t < 30; ++t) {
            FractionalIdeal I = random_ideal(*K, rng), J = random_ideal(*K, rng);
            FractionalIdeal IJ = ideal_mul(*K, I, J);
            CHECK(IJ.norm() == I.norm() * J.norm());
            CHECK(ideal_mul(*K, I, ideal_inverse(*K, I)) == unit_ideal(*K));
            CHECK(ideal_contains(I, IJ));
            CHECK(ideal_contains(ideal_add(*K, I, J), I));
            CHECK(ideal_contains(I, ideal_intersect(*K, I, J)));
            // O_K-module: closed under multiplication by the basis
            for (auto& b : ideal_basis(IJ))
                for (std::size_t i = 0; i < K->degree(); ++i)
                    CHECK(ideal_contains(IJ, K->mul(b, K->basis_element(i))));
            // canonical: the same ideal from a different generating set
            std::vector<Element> gens = ideal_basis(I);
            gens.push_back(gens[0] + gens.back());
            std::reverse(gens.begin(), gens.end());
            CHECK(ideal_from_gens(*K, gens) == I);
        }
    }
}

TEST_CASE("Kummer-Dedekind factorizations")
{
    const NumberField& K = M5();
    auto f7 = factor_rational_prime(K, 7);
    REQUIRE(f7.size() == 2);
    for (auto& P : f7) {
        CHECK(P.e == 1);
        CHECK(P.f == 1);
        CHECK(P.ideal.norm() == 7);
    }
    auto f5 = factor_rational_prime(K, 5);
    REQUIRE(f5.size() == 1);
    CHECK(f5[0].e == 2);
    auto f11 = factor_rational_prime(K, 11);
    REQUIRE(f11.size() == 1);
    CHECK(f11[0].f == 2);
    CHECK(f11[0].ideal == prin(K, 11));

    for (const NumberField* F : {&M5(), &C2(), &QI()})
        for (long p : {2, 3, 5, 7, 11, 13, 29, 31}) {
            if (F->index() % p == 0)
                continue;
            FractionalIdeal prod = unit_ideal(*F);
            unsigned ef = 0;
            for (auto& P : factor_rational_prime(*F, p)) {
                CHECK(P.ideal.norm() == Rat(P.norm()));
                CHECK(ideal_contains(P.ideal, prin(*F, p)));
                prod = ideal_mul(*F, prod, ideal_pow(*F, P.ideal, P.e));
                ef += P.e * P.f;
            }
            CHECK(ef == F->degree());
            CHECK(prod == prin(*F, p));
        }

    FieldPtr F = build_field(load_field_spec(field_file("q_sqrt5_nonmonogenic_basis.json")));
    CHECK_THROWS_AS(factor_rational_prime(*F, 2), Error);
}

TEST_CASE("valuations and ideal factorization")
{
    const NumberField& K = M5();
    FractionalIdeal I = ideal_mul(K, prin(K, 98), ideal_inverse(K, prin(K, 3)));
    auto fac = factor_ideal(K, I);
    FractionalIdeal back = unit_ideal(K);
    for (auto& [P, e] : fac) {
        back = ideal_mul(K, back, ideal_pow(K, P.ideal, e));
        CHECK(valuation(K, I, P) == e);
    }
    CHECK(back == I);
}

TEST_CASE("squarefree status")
{
    auto r12 = ideal_is_squarefree(Q(), prin(Q(), 12));
    CHECK(r12.status == SquarefreeStatus::not_squarefree);
    REQUIRE(r12.witness.has_value());
    CHECK(r12.witness->p == 2);
    CHECK(ideal_is_squarefree(Q(), prin(Q(), 30)).status == SquarefreeStatus::squarefree);
    CHECK(ideal_is_squarefree(M5(), prin(M5(), 49)).status == SquarefreeStatus::not_squarefree);
    // 49 = N(7, 3 + sqrt-5) N(7, 4 + sqrt-5): p^2 in the norm but squarefree
    CHECK(ideal_is_squarefree(M5(), prin(M5(), 7)).status == SquarefreeStatus::squarefree);
    // an unfactorable cofactor stays unknown
    Int big = Int("1000000007") * Int("998244353");
    FactorOptions tiny;
    tiny.trial_bound = 100;
    tiny.rho_budget = 1;
    CHECK(ideal_is_squarefree(Q(), prin(Q(), Element(Q().from_int(big))), tiny).status == SquarefreeStatus::unknown);
}

TEST_CASE("CRT")
{
    Element x = crt_solve(Q(), {{Q().from_int(0), prin(Q(), 2)}, {Q().from_int(1), prin(Q(), 3)}});
    CHECK(x == Q().from_int(4));
    CHECK(crt_solve(Q(), {{Q().from_int(17), prin(Q(), 5)}}) == Q().from_int(2));
    CHECK_THROWS_AS(crt_solve(Q(), {{Q().from_int(0), prin(Q(), 2)}, {Q().from_int(1), prin(Q(), 4)}}), Error);

    const NumberField& K = M5();
    FractionalIdeal p2 = ideal_from_gens(K, {K.from_int(2), el(K, {1, 1})});
    Element y = crt_solve(K, {{K.one(), p2}, {K.zero(), prin(K, 3)}});
    CHECK(ideal_contains(p2, y - K.one()));
    CHECK(ideal_contains(prin(K, 3), y));

    std::mt19937_64 rng(4);
    auto primes = prime_ideals_up_to(K, 40, true);
    for (int t = 0; t < 50; ++t) {
        std::size_t i = rng() % primes.size(), j = rng() % primes.size();
        if (primes[i].p == primes[j].p)
            continue;
        Element r1 = random_el(K, rng, 30), r2 = random_el(K, rng, 30);
        FractionalIdeal m1 = ideal_pow(K, primes[i].ideal, 1 + rng() % 2), m2 = primes[j].ideal;
        Element z = crt_solve(K, {{r1, m1}, {r2, m2}});
        CHECK(ideal_contains(m1, z - r1));
        CHECK(ideal_contains(m2, z - r2));
    }
}

TEST_CASE("residue rings")
{
    const NumberField& K = M5();
    FractionalIdeal m = ideal_pow(K, ideal_from_gens(K, {K.from_int(7), el(K, {3, 1})}), 2);
    ResidueRing R(K, m);
    CHECK(R.size() == 49);
    auto reps = R.representatives(1000);
    CHECK(reps.size() == 49);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 50; ++t) {
        Element x = random_el(K, rng, 100), y = random_el(K, rng, 100);
        CHECK(R.reduce(x + y) == R.reduce(R.reduce(x) + R.reduce(y)));
        CHECK(ideal_contains(m, x - R.reduce(x)));
        CHECK(R.element(R.index(R.reduce(x))) == R.reduce(x));
    }
}

TEST_CASE("class groups")
{
    CHECK(group_of(Q()).order() == 1);
    const ClassGroupTable& G = group_of(M5());
    CHECK(G.cyclic_orders == std::vector<long>{2});
    CHECK(G.order() == oracle::class_number(-20));
    CHECK(group_of(QI()).order() == oracle::class_number(-4));
    CHECK(group_of(C2()).order() == 1);

    const NumberField& K = M5();
    FractionalIdeal p2 = ideal_from_gens(K, {K.from_int(2), el(K, {1, 1})});
    FractionalIdeal p7 = ideal_from_gens(K, {K.from_int(7), el(K, {3, 1})});
    CHECK(G.index_of(class_of(K, G, p2)) == 1);
    CHECK(G.index_of(class_of(K, G, p7)) == 1);
    CHECK(G.index_of(class_of(K, G, ideal_mul(K, p2, p7))) == 0);
    CHECK_FALSE(principal_generator(K, p7).has_value());
    auto gen = principal_generator(K, ideal_mul(K, p2, p7));
    REQUIRE(gen.has_value());
    CHECK(abs(K.norm(*gen)) == 14);

    // homomorphism on random pairs
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        FractionalIdeal I = random_ideal(K, rng), J = random_ideal(K, rng);
        CHECK(class_of(K, G, ideal_mul(K, I, J)) == G.add(class_of(K, G, I), class_of(K, G, J)));
        // I times a representative of the inverse class is principal
        ClassVector c = G.negate(class_of(K, G, I));
        FractionalIdeal rep = G.representatives[static_cast<std::size_t>(G.index_of(c))];
        CHECK(principal_generator(K, ideal_mul(K, I, rep)).has_value());
    }
}

TEST_CASE("principality agrees with the norm form x^2 + 5y^2")
{
    const NumberField& K = M5();
    for (auto& P : prime_ideals_up_to(K, 60, true)) {
        Int N = P.norm();
        bool representable = false;
        for (long y = 0; 5 * y * y <= N; ++y) {
            Int r = N - 5 * y * y;
            Int s = sqrt(r);
            if (s * s == r && ideal_contains(P.ideal, el(K, {s.get_si(), y})) || ideal_contains(P.ideal, el(K, {s.get_si(), -y})))
                representable = true;
        }
        CHECK(principal_generator(K, P.ideal).has_value() == representable);
    }
}

TEST_CASE("prime scans by class")
{
    const NumberField& K = M5();
    const ClassGroupTable& G = group_of(K);
    PrimeScanConstraints c;
    c.coprime_to = prin(K, 6);
    c.min_norm = 3;
    PrimeIdeal P = pick_prime_in_class(K, G, G.vector_of(1), c);
    CHECK(P.ideal.hnf == IntMatrix{{Int(7), Int(0)}, {Int(3), Int(1)}});
    PrimeIdeal T = pick_prime_in_class(K, G, G.zero(), c);
    CHECK(G.index_of(class_of(K, G, T.ideal)) == 0);
    CHECK(principal_generator(K, T.ideal).has_value());
    for (auto& Q2 : prime_ideals_up_to(K, T.norm() - 1, true))
        if (Q2.norm() > 3 && coprime(K, Q2.ideal, prin(K, 6)))
            CHECK_FALSE(principal_generator(K, Q2.ideal).has_value());

    PrimeIdeal five = pick_prime_in_class(Q(), group_of(Q()), group_of(Q()).zero(),
                                          {prin(Q(), 6), Int(3), Int(5000), false});
    CHECK(five.p == 5);
    PrimeScanConstraints none;
    none.min_norm = 100;
    none.scan_bound = 50;
    CHECK_THROWS_AS(pick_prime_in_class(K, G, G.zero(), none), Error);
}

TEST_CASE("house norm")
{
    const NumberField& K = M5();
    CHECK(house_norm(K, K.zero()).value == 0);
    CHECK(*house_norm(K, K.one()).t2 == 2);
    CHECK(*house_norm(K, el(K, {0, 1})).t2 == 10);
    CHECK(std::fabs(static_cast<double>(house_norm(K, el(K, {0, 1})).value) - std::sqrt(10.0)) < 1e-12);
    // comparisons are order-isomorphic to exact T2
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
        Element x = random_el(K, rng, 9), y = random_el(K, rng, 9);
        Rat tx = *K.t2_exact(x), ty = *K.t2_exact(y);
        int c = compare_house_norm(K, x, y);
        CHECK((c < 0) == (tx < ty));
        CHECK((c > 0) == (tx > ty));
    }
    // Q(cbrt 2) has no exact T2 form: the approximation tracks the embeddings
    Element z = el(C2(), {1, 1, 1});
    long double sum = 0;
    for (auto& row : C2().embeddings()) {
        std::complex<long double> s = 0;
        for (std::size_t i = 0; i < 3; ++i)
            s += row[i] * static_cast<long double>(z.num[i].get_si());
        sum += std::norm(s);
    }
    CHECK(std::fabs(static_cast<double>(C2().t2_approx(z) - sum)) < 1e-9);
}
