#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "steinitz/error.hpp"
#include "steinitz/search.hpp"

using namespace testing;

namespace {

Element I(long x) { return Q().from_int(Int(x)); }

std::vector<Element> ints(std::initializer_list<long> v)
{
    std::vector<Element> r;
    for (long x : v)
        r.push_back(I(x));
    return r;
}

KPoly kp(std::initializer_list<Rat> v)
{
    KPoly r;
    for (auto& x : v)
        r.push_back(Q().from_rat(x));
    return r;
}

std::vector<Rat> to_q(const KPoly& p)
{
    std::vector<Rat> r;
    for (auto& x : p)
        r.push_back(x.coord(0));
    return r;
}

// The pipeline steps of end_to_end up to assembly, exposed for inspection.
struct Prepared {
    SearchContext ctx;
    std::vector<Element> a;
    Element b2;
};

Prepared prepare(const NumberField& K, long target, unsigned n, std::uint64_t seed = 1)
{
    const ClassGroupTable& G = group_of(K);
    Prepared p;
    SearchContext& ctx = p.ctx;
    ctx.n = n;
    PrimeScanConstraints c;
    c.coprime_to = principal_ideal(K, K.from_int(factorial(n)));
    c.min_norm = pow_int(Int(n), n - 2);
    ctx.a = pick_prime_in_class(K, G, G.negate(G.vector_of(target)), c);
    ctx.gamma = find_gamma(K, G, n, 5000);
    ctx.p1 = find_p1(K, ctx.gamma.gamma, n, ctx.a.ideal, 5000);
    ctx.a_prime = find_distinct_seed(n, seed);
    ctx.p2 = find_p2(K, ctx.a_prime, n, ideal_mul(K, ctx.a.ideal, ctx.p1.prime.ideal), 5000);
    ctx.sz_residues = sz_select(K, ctx.a.ideal, n);
    p.a = solve_system(K, congruence_system(K, ctx));
    p.b2 = choose_b2(K, ctx, p.a);
    return p;
}

}  // namespace

TEST_CASE("Q(x) examples")
{
    CHECK(build_q(Q(), ints({7})) == kp({-7, 2}));
    CHECK(build_q(Q(), ints({0, 4})) == kp({0, -12, 3}));
    CHECK(build_q(Q(), ints({3, 1})) == kp({3, -6, 3}));
}

TEST_CASE("P(x) examples")
{
    CHECK(build_p(Q(), ints({7}), I(3)) == kp({3, -7, 1}));
    CHECK(build_p(Q(), ints({0, 4}), I(0)) == kp({0, 0, -6, 1}));
    CHECK(build_p(Q(), ints({0, 0, 0}), I(0)) == kp({0, 0, 0, 0, 1}));
    // half-integral coefficient when a_2 is odd
    CHECK_FALSE(kpoly::is_integral(build_p(Q(), ints({0, 3}), I(0))));
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        std::vector<Element> a;
        Element prod = M5().one();
        for (std::size_t i = 0; i < 1 + rng() % 4; ++i) {
            a.push_back(el(M5(), {static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10}));
            prod = M5().mul(prod, a.back());
        }
        Element b = el(M5(), {static_cast<long>(rng() % 99), 1});
        KPoly P = build_p(M5(), a, b);
        const std::size_t n = a.size() + 1;
        CHECK(P.size() == n + 1);
        CHECK(P[n] == M5().one());
        CHECK(P[0] == b);
        CHECK(P[1] == (n % 2 ? prod : -prod));
        CHECK(kpoly::derivative(M5(), P) == build_q(M5(), a));
    }
}

TEST_CASE("discriminant product against the Sylvester oracle")
{
    // n = 2: Delta = 4b - a_1^2 up to sign
    for (long a1 : {-6, 1, 5, 12})
        for (long b : {-3, 2, 11}) {
            Element d = delta_product(Q(), ints({a1}), I(b));
            CHECK((d == I(4 * b - a1 * a1) || d == I(a1 * a1 - 4 * b)));
        }
    // n = 3 with a = (3, 2) and several b: the 5x5 Sylvester determinant
    for (long b : {1, 7, 100}) {
        KPoly P = build_p(Q(), ints({3, 2}), I(b));
        KPoly Qx = build_q(Q(), ints({3, 2}));
        Rat res = oracle::sylvester_resultant(to_q(P), to_q(Qx));
        CHECK(delta_product(Q(), ints({3, 2}), I(b)) == Q().from_rat(res));
        CHECK(delta_oracle(Q(), ints({3, 2}), I(b)) == Q().from_rat(res));
    }
    CHECK_FALSE(delta_product(Q(), ints({4, 8}), I(1000003)).is_zero());
    // random inputs over Q(sqrt -5)
    std::mt19937_64 rng(2);
    for (int t = 0; t < 60; ++t) {
        std::vector<Element> a;
        for (std::size_t i = 0; i < 1 + rng() % 4; ++i)
            a.push_back(el(M5(), {static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 41) - 20}));
        Element b = el(M5(), {static_cast<long>(rng() % 401) - 200, static_cast<long>(rng() % 41) - 20});
        CHECK(delta_product(M5(), a, b) == delta_oracle(M5(), a, b));
    }
}

TEST_CASE("gamma scan")
{
    Gamma q2 = find_gamma(Q(), group_of(Q()), 2, 1000);
    CHECK(q2.gamma == I(3));
    Gamma q3 = find_gamma(Q(), group_of(Q()), 3, 1000);
    CHECK(q3.gamma == I(5));
    Gamma m3 = find_gamma(M5(), group_of(M5()), 3, 1000);
    CHECK(abs(M5().norm(m3.gamma)) == 5);
    CHECK(principal_ideal(M5(), m3.gamma) == m3.prime.ideal);
}

TEST_CASE("first auxiliary prime")
{
    FractionalIdeal a = principal_ideal(Q(), I(7));
    P1Data d = find_p1(Q(), I(5), 2, a, 1000);
    CHECK(d.prime.p == 3);
    CHECK(d.roots == std::vector<Int>{Int(1)});
    CHECK(d.b1 == I(2));
    for (auto& e : list_p1(Q(), I(5), 2, std::nullopt, 200)) {
        CHECK(e.prime.p != 2);
        CHECK(e.prime.f == 1);
        std::int64_t p = e.prime.p.get_si();
        CHECK(oracle::irreducible_brute({5, -5, 1}, p));
        CHECK(oracle::roots({-5, 2}, p).size() == 1);
    }
    // the avoided ideal is skipped
    P1Data avoid3 = find_p1(Q(), I(5), 2, principal_ideal(Q(), I(3)), 1000);
    CHECK(avoid3.prime.p > 3);
    CHECK(list_p1(C2(), C2().from_int(Int(5)), 3, std::nullopt, 400).size() > 0);
}

TEST_CASE("seed vectors and the second auxiliary prime")
{
    auto v = seed_values({Rat(3), Rat(1)});
    REQUIRE(v.size() == 2);
    CHECK(v[0] == v[1]);
    CHECK(seed_values({Rat(6)}) == std::vector<Rat>{Rat(-9)});
    for (unsigned n = 2; n <= 5; ++n) {
        auto s = find_distinct_seed(n, 17);
        CHECK(s.size() == n - 1);
        CHECK(s[0] != 0);
        auto vals = seed_values(s);
        std::set<Rat> distinct(vals.begin(), vals.end());
        CHECK(distinct.size() == vals.size());
        CHECK(find_distinct_seed(n, 17) == s);

        FractionalIdeal avoid = principal_ideal(Q(), I(11));
        PrimeIdeal P = find_p2(Q(), s, n, avoid, 5000);
        Int p = P.p;
        CHECK(p > n);
        CHECK(p != 11);
        std::set<std::int64_t> red;
        for (auto& x : vals) {
            CHECK(x.get_den() % p != 0);
            red.insert(oracle::mod(Int(x.get_num() * mod_inverse(x.get_den(), p)), p.get_si()));
        }
        CHECK(red.size() == vals.size());
    }
}

TEST_CASE("Schwartz-Zippel residues")
{
    FractionalIdeal a5 = principal_ideal(Q(), I(5));
    CHECK(sz_select(Q(), a5, 2).empty());
    CHECK(sz_select(Q(), a5, 3) == std::vector<Element>{I(-1)});
    auto r4 = sz_select(Q(), a5, 4);
    REQUIRE(r4.size() == 2);
    // F(x2, x3) = P0(x2) P0(x3) with P0 from a = (0, x2, x3), evaluated directly
    auto F = [&](const std::vector<Element>& r) {
        std::vector<Element> a{I(0)};
        a.insert(a.end(), r.begin(), r.end());
        KPoly P0 = build_p(Q(), a, I(0));
        Rat v = 1;
        for (auto& x : r)
            v *= kpoly::eval(Q(), P0, x).coord(0);
        return v;
    };
    Rat at_r = F(r4);
    CHECK(at_r.get_den() % 5 != 0);
    CHECK(at_r.get_num() % 5 != 0);
    if (Rat f = F({I(-1), I(-1)}); f.get_num() % 5 != 0)
        CHECK(r4 == std::vector<Element>{I(-1), I(-1)});
}

TEST_CASE("assembly satisfies every condition")
{
    for (auto [K, target, n] : {std::tuple<const NumberField*, long, unsigned>{&Q(), 0, 2},
                                {&Q(), 0, 3},
                                {&Q(), 0, 4},
                                {&M5(), 1, 3},
                                {&M5(), 0, 2}}) {
        Prepared p = prepare(*K, target, n);
        ConditionReport rep = verify_conditions(*K, p.ctx, p.a, p.b2);
        for (std::size_t i = 0; i < 6; ++i)
            CHECK_MESSAGE(rep.conditions[i].ok, "condition ", i + 1, ": ", rep.conditions[i].detail);
        // every congruence of the system holds for the solution
        CongruenceSystem sys = congruence_system(*K, p.ctx);
        for (std::size_t v = 0; v < sys.per_variable.size(); ++v)
            for (auto& c : sys.per_variable[v])
                CHECK_MESSAGE(ideal_contains(c.congruence.modulus, p.a[v] - c.congruence.residue), c.tag);
        // b2 in a^2 and the first factor escapes a^3
        FractionalIdeal A2 = ideal_pow(*K, p.ctx.a.ideal, 2);
        CHECK(ideal_contains(A2, p.b2));
        CHECK_FALSE(p.b2.is_zero());
        auto lin = delta_linear_factors(*K, p.a);
        CHECK_FALSE(ideal_contains(ideal_pow(*K, p.ctx.a.ideal, 3), K->mul(lin[0].c, p.b2) + lin[0].d));
    }
}

TEST_CASE("a spoiled solution fails the named condition")
{
    Prepared p = prepare(Q(), 0, 3);
    std::vector<Element> bad = p.a;
    bad[0] = bad[0] + I(1);  // no longer in a
    CHECK_FALSE(verify_conditions(Q(), p.ctx, bad, p.b2).conditions[0].ok);
    // duplicate modulus with a conflicting residue
    CongruenceSystem sys = congruence_system(Q(), p.ctx);
    sys.per_variable[0].push_back({{I(1), p.ctx.a.ideal}, "conflict"});
    CHECK_THROWS_AS(solve_system(Q(), sys), Error);
}

TEST_CASE("choose_b2 over Q with a = (5)")
{
    SearchContext ctx;
    ctx.n = 2;
    ctx.a = factor_rational_prime(Q(), 5)[0];
    // first factor 4b - a_1^2 is 0 mod 125 at b = 0 when a_1 = 25
    CHECK(choose_b2(Q(), ctx, ints({25})) == I(25));
    CHECK(choose_b2(Q(), ctx, ints({5})) == I(25));
}

TEST_CASE("T shells are complete and ordered")
{
    Prepared p = prepare(M5(), 1, 3);
    TSet T = make_t(M5(), p.ctx, p.ctx.p1.b1, p.b2);
    Rat hi = Rat(T.modulus.norm()) * 40;
    auto pts = t_shell(M5(), T, Rat(-1), hi);
    REQUIRE(!pts.empty());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(ideal_contains(T.modulus, pts[i].b - T.base));
        CHECK(*M5().t2_exact(pts[i].b) == pts[i].t2);
        if (i)
            CHECK(pts[i - 1].t2 <= pts[i].t2);
    }
    // brute force: T2(x + y w) = 2x^2 + 10y^2 <= hi
    std::size_t count = 0;
    const long xm = Int(sqrt(Int(hi.get_num() / hi.get_den()) / 2)).get_si() + 1;
    const long ym = Int(sqrt(Int(hi.get_num() / hi.get_den()) / 10)).get_si() + 1;
    for (long y = -ym; y <= ym; ++y)
        for (long x = -xm; x <= xm; ++x) {
            Element b = el(M5(), {x, y});
            if (Rat(2 * x * x + 10 * y * y) <= hi && ideal_contains(T.modulus, b - T.base))
                ++count;
        }
    CHECK(count == pts.size());
    // every candidate reduces to the same irreducible polynomial mod p1
    for (std::size_t i = 0; i < std::min<std::size_t>(pts.size(), 10); ++i) {
        KPoly P = build_p(M5(), p.a, pts[i].b);
        oracle::ModPoly r;
        for (auto& c : P)
            r.push_back(reduce_m5(c, p.ctx.p1.prime.ideal));
        CHECK(oracle::irreducible_brute(r, p.ctx.p1.prime.p.get_si()));
    }
}

TEST_CASE("end to end over Q, cubic")
{
    SearchCertificate c = end_to_end(Q(), group_of(Q()), 0, 3, EndToEndOptions{});
    CHECK(c.a.p == 5);
    CHECK(c.gamma == I(5));
    CHECK(c.p1.p == 11);
    CHECK(c.p2.p == 7);
    CHECK(c.avec == ints({1840, 384}));
    CHECK(c.b == I(775));
    CHECK(c.f == ints({1, -1496, 706560, 775}));
    // Res(P, P') from the oracle matches Delta up to sign
    std::vector<Rat> P{Rat(775), Rat(706560), Rat(-1496), Rat(1)}, D{Rat(706560), Rat(-2992), Rat(3)};
    Rat res = oracle::sylvester_resultant(P, D);
    CHECK(abs(res) == abs(c.delta.coord(0)));
    Int reduced = abs(c.delta.num[0]) / 25;
    CHECK(abs(c.delta.num[0]) % 25 == 0);
    CHECK(reduced % 5 != 0);
    Int prod = 1;
    for (auto& pp : c.norm_factorization) {
        CHECK(pp.exponent == 1);
        CHECK(oracle::probable_prime(pp.prime));
        prod *= pp.prime;
    }
    CHECK(prod == reduced);
    for (auto& [name, ok] : c.flags)
        CHECK_MESSAGE(ok, name);
}

TEST_CASE("end to end over Q(sqrt -5), both classes, n = 2 and 3")
{
    const ClassGroupTable& G = group_of(M5());
    for (unsigned n : {2u, 3u})
        for (long target : {0L, 1L}) {
            SearchCertificate c = end_to_end(M5(), G, target, n, EndToEndOptions{});
            CHECK(c.target_class == target);
            CHECK(G.index_of(class_of(M5(), G, ideal_inverse(M5(), c.a.ideal))) == target);
            for (auto& [name, ok] : c.flags)
                CHECK_MESSAGE(ok, name);
        }
}

TEST_CASE("stage errors name the stage")
{
    EndToEndOptions o;
    o.scan_bound = 3;
    try {
        end_to_end(Q(), group_of(Q()), 0, 3, o);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage() == Stage::target_ideal);
        CHECK(std::string(e.what()).rfind("target-ideal", 0) == 0);
    }
    EndToEndOptions tiny;
    tiny.sieve.box = 10;
    try {
        end_to_end(Q(), group_of(Q()), 0, 3, tiny);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage() == Stage::sieve);
        CHECK(e.kind() == ErrorKind::search_budget_exhausted);
    }
}

TEST_CASE("sieve output does not depend on the worker count")
{
    EndToEndOptions one, three;
    three.sieve.workers = 3;
    SearchCertificate a = end_to_end(M5(), group_of(M5()), 1, 3, one);
    SearchCertificate b = end_to_end(M5(), group_of(M5()), 1, 3, three);
    CHECK(a.b == b.b);
    CHECK(a.delta == b.delta);
    CHECK(a.stats.candidates == b.stats.candidates);
}
