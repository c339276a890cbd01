#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "steinitz/finite_field.hpp"
#include "steinitz/integer.hpp"
#include "steinitz/matrix.hpp"
#include "steinitz/qpoly.hpp"

using namespace steinitz;

TEST_CASE("factor_integer agrees with trial division")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        Int n = Int(static_cast<unsigned long>(rng() % 1000000000000ULL)) + 1;
        FactorResult r = factor_integer(n);
        REQUIRE(r.complete());
        auto expect = oracle::trial_factor(n);
        REQUIRE(r.factors.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) {
            CHECK(r.factors[i].prime == expect[i].first);
            CHECK(r.factors[i].exponent == expect[i].second);
        }
    }
}

TEST_CASE("factor_integer splits cofactors beyond the trial bound")
{
    Int p("1000000007"), q("998244353"), r("2147483647");
    FactorResult semi = factor_integer(p * q * q);
    REQUIRE(semi.complete());
    CHECK(semi.factors == Factorization{{q, 2}, {p, 1}});

    FactorResult power = factor_integer(pow_int(r, 5) * 12);
    REQUIRE(power.complete());
    CHECK(power.factors == Factorization{{Int(2), 2}, {Int(3), 1}, {r, 5}});

    CHECK(factor_integer(Int(-30)).factors == Factorization{{Int(2), 1}, {Int(3), 1}, {Int(5), 1}});
}

TEST_CASE("small integer helpers")
{
    CHECK(mod_inverse(Int(3), Int(7)) == 5);
    CHECK(floor_div(Int(-7), Int(2)) == -4);
    CHECK(factorial(5) == 120);
    CHECK(valuation(Int(96), Int(2)) == 5);
    CHECK(primes_up_to(30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(parse_rational("-6/4") == Rat(-3, 2));
    // tie-break order 0, 1, -1, 2, -2
    std::vector<Int> v{Int(-2), Int(2), Int(0), Int(-1), Int(1)};
    std::sort(v.begin(), v.end(), [](const Int& a, const Int& b) { return compare_signed_magnitude(a, b) < 0; });
    CHECK(v == std::vector<Int>{Int(0), Int(1), Int(-1), Int(2), Int(-2)});
}

TEST_CASE("hnf is canonical under unimodular changes of generators")
{
    std::mt19937_64 rng(11);
    auto r = [&] { return Int(static_cast<long>(rng() % 21) - 10); };
    for (int t = 0; t < 100; ++t) {
        IntMatrix base(3, IntVector(3));
        for (auto& row : base)
            for (auto& x : row)
                x = r();
        if (determinant(to_rat(base)) == 0)
            continue;
        IntMatrix mixed = base;
        for (int s = 0; s < 6; ++s) {
            std::size_t i = rng() % 3, j = rng() % 3;
            if (i == j)
                continue;
            Int k = r();
            for (std::size_t c = 0; c < 3; ++c)
                mixed[i][c] += k * mixed[j][c];
        }
        mixed.push_back({Int(0), Int(0), Int(0)});
        mixed.push_back(base[0]);
        IntMatrix h = hnf(base, 3);
        CHECK(h == hnf(mixed, 3));
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(h[i][i] > 0);
            for (std::size_t j = i + 1; j < 3; ++j)
                CHECK(h[i][j] == 0);
        }
        CHECK(abs(determinant(to_rat(h))) == abs(determinant(to_rat(base))));
        for (auto& row : base)
            CHECK(hnf_solve(h, row).has_value());
    }
}

TEST_CASE("hnf membership and reduction")
{
    IntMatrix h = hnf({{Int(4), Int(0)}, {Int(1), Int(2)}}, 2);
    CHECK(hnf_solve(h, {Int(5), Int(2)}).has_value());
    CHECK_FALSE(hnf_solve(h, {Int(1), Int(1)}).has_value());
    IntVector red = hnf_reduce(h, {Int(9), Int(7)});
    CHECK(red[1] >= 0);
    CHECK(red[1] < h[1][1]);
    CHECK(red[0] >= 0);
    CHECK(red[0] < h[0][0]);
}

TEST_CASE("smith form and rational linear algebra")
{
    SmithForm s = smith_form({{Int(2), Int(4)}, {Int(6), Int(8)}});
    CHECK(s.diagonal == std::vector<Int>{Int(2), Int(4)});
    RatMatrix m{{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
    CHECK(determinant(m) == -2);
    CHECK(multiply(m, inverse(m)) == identity_rat(2));
}

TEST_CASE("resultant equals the product of evaluations at the roots")
{
    std::mt19937_64 rng(3);
    auto r = [&] { return static_cast<long>(rng() % 11) - 5; };
    for (int t = 0; t < 200; ++t) {
        QPoly a{Rat(1)};
        std::vector<long> roots;
        for (int k = 0; k < 1 + static_cast<int>(rng() % 4); ++k) {
            roots.push_back(r());
            a = qpoly::mul(a, {Rat(-roots.back()), Rat(1)});
        }
        QPoly b;
        for (int k = 0; k < 1 + static_cast<int>(rng() % 4); ++k)
            b.push_back(Rat(r()));
        b.push_back(Rat(1 + rng() % 3));
        Rat expect = 1;
        for (long x : roots)
            expect *= qpoly::eval(b, Rat(x));
        CHECK(qpoly::resultant(a, b) == expect);
        CHECK(qpoly::resultant(a, b) == oracle::sylvester_resultant(a, b));
    }
}

TEST_CASE("discriminant, real roots and irreducibility over Q")
{
    CHECK(qpoly::discriminant({Rat(7), Rat(-3), Rat(1)}) == 9 - 28);
    CHECK(qpoly::discriminant({Rat(5), Rat(0), Rat(1)}) == -20);
    CHECK(qpoly::discriminant({Rat(-2), Rat(0), Rat(0), Rat(1)}) == -108);
    CHECK(qpoly::count_real_roots({Rat(-2), Rat(0), Rat(0), Rat(1)}) == 1);
    CHECK_FALSE(qpoly::is_irreducible_over_q({Rat(-1), Rat(0), Rat(1)}));
    CHECK(qpoly::is_irreducible_over_q({Rat(-2), Rat(0), Rat(0), Rat(1)}));
    CHECK_FALSE(qpoly::is_irreducible_over_q({Rat(4), Rat(0), Rat(0), Rat(0), Rat(1)}));
    CHECK(qpoly::is_irreducible_over_q({Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)}));
}

namespace {

FqPoly to_fq(const FiniteField& F, const oracle::ModPoly& a)
{
    FqPoly r;
    for (auto c : a)
        r.push_back(F.from_int(c));
    fq::trim(F, r);
    return r;
}

}  // namespace

TEST_CASE("residue polynomial profiles on small examples")
{
    FiniteField F2 = FiniteField::prime_field(2), F3 = FiniteField::prime_field(3), F5 = FiniteField::prime_field(5);
    CHECK(fq::is_irreducible(F2, to_fq(F2, {1, 1, 1})));
    auto r = fq::roots(F5, to_fq(F5, {-1, 0, 1}));
    REQUIRE(r.size() == 2);
    CHECK(F5.index(r[0]) == 1);
    CHECK(F5.index(r[1]) == 4);
    CHECK(fq::is_irreducible(F3, to_fq(F3, {5, -5, 1})));
}

TEST_CASE("irreducibility and roots over F_p agree with brute force")
{
    std::mt19937_64 rng(5);
    for (std::int64_t p : {2, 3, 5, 7}) {
        FiniteField F = FiniteField::prime_field(static_cast<std::uint64_t>(p));
        for (int t = 0; t < 150; ++t) {
            int deg = 1 + static_cast<int>(rng() % 5);
            oracle::ModPoly a;
            for (int i = 0; i < deg; ++i)
                a.push_back(static_cast<std::int64_t>(rng() % p));
            a.push_back(1);
            FqPoly A = to_fq(F, a);
            CHECK(fq::is_irreducible(F, A) == oracle::irreducible_brute(a, p));
            std::vector<std::int64_t> got;
            for (auto& x : fq::roots(F, A))
                got.push_back(F.index(x).get_si());
            CHECK(got == oracle::roots(a, p));
            // factors multiply back to the polynomial
            FqPoly prod{F.one()};
            for (auto& [g, e] : fq::factor(F, A))
                for (unsigned k = 0; k < e; ++k)
                    prod = fq::mul(F, prod, g);
            CHECK(prod == A);
        }
    }
}

TEST_CASE("extension fields up to 49 elements: roots by exhaustive evaluation")
{
    std::mt19937_64 rng(9);
    for (auto [p, m] : {std::pair<std::uint64_t, std::vector<std::uint64_t>>{3, {1, 0, 1}},
                        {7, {1, 0, 1}}}) {
        FiniteField F(p, m);
        REQUIRE(F.order() == Int(static_cast<unsigned long>(p * p)));
        const long q = F.order().get_si();
        for (int t = 0; t < 40; ++t) {
            FqPoly a;
            int deg = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < deg; ++i)
                a.push_back(F.element(Int(static_cast<unsigned long>(rng() % q))));
            a.push_back(F.one());
            std::vector<long> brute;
            for (long i = 0; i < q; ++i)
                if (F.is_zero(fq::eval(F, a, F.element(Int(i)))))
                    brute.push_back(i);
            std::vector<long> got;
            for (auto& x : fq::roots(F, a))
                got.push_back(F.index(x).get_si());
            CHECK(got == brute);
            // degree <= 3: irreducible iff no root
            if (deg >= 2)
                CHECK(fq::is_irreducible(F, a) == brute.empty());
        }
    }
}
