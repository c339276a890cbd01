#include "steinitz/search.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "steinitz/lattice.hpp"
#include "steinitz/qpoly.hpp"

namespace steinitz {

namespace {

Int mod_p(const Int& x, const Int& p)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return r;
}

// r mod p for a rational whose denominator is prime to p
Int rat_mod(const Rat& r, const Int& p) { return mod_p(r.get_num() * mod_inverse(mod_p(r.get_den(), p), p), p); }

Int int_pow(unsigned base, unsigned e) { return pow_int(Int(base), e); }

FqPoly reduce_poly(const ResidueField& F, const KPoly& f)
{
    FqPoly r;
    for (auto& c : f)
        r.push_back(F.reduce(c));
    fq::trim(F.field(), r);
    return r;
}

bool pairwise_distinct(const std::vector<Element>& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] == v[j])
                return false;
    return true;
}

// F(x_2, ..) = prod_i P_{(0, x_2, ..), 0}(x_i), evaluated at the given residues
Element sz_polynomial(const NumberField& K, const std::vector<Element>& r)
{
    std::vector<Element> a{K.zero()};
    a.insert(a.end(), r.begin(), r.end());
    KPoly p0 = build_p(K, a, K.zero());
    Element prod = K.one();
    for (auto& x : r)
        prod = K.mul(prod, kpoly::eval(K, p0, x));
    return prod;
}

template <class F>
auto run_stage(Stage s, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(s, e.kind(), e.what());
    }
}

}  // namespace

/* ---- polynomial construction ------------------------------------------ */

KPoly build_q(const NumberField& K, const std::vector<Element>& a)
{
    const unsigned long n = a.size() + 1;
    KPoly q{-a[0], K.from_int(Int(n))};
    for (std::size_t i = 1; i < a.size(); ++i)
        q = kpoly::mul(K, q, KPoly{-a[i], K.one()});
    return q;
}

KPoly build_p(const NumberField& K, const std::vector<Element>& a, const Element& b)
{
    KPoly p = kpoly::integrate(K, build_q(K, a));
    p.resize(a.size() + 2, K.zero());
    p[0] = b;
    return p;
}

std::vector<LinearFactor> delta_linear_factors(const NumberField& K, const std::vector<Element>& a)
{
    const unsigned n = static_cast<unsigned>(a.size() + 1);
    KPoly p0 = build_p(K, a, K.zero());
    Int nn = int_pow(n, n);
    std::vector<LinearFactor> out;
    Element root1 = Rat(1, n) * a[0];
    out.push_back({K.from_int(nn), nn * kpoly::eval(K, p0, root1)});
    for (std::size_t i = 1; i < a.size(); ++i)
        out.push_back({K.one(), kpoly::eval(K, p0, a[i])});
    return out;
}

Element delta_product(const NumberField& K, const std::vector<Element>& a, const Element& b)
{
    Element prod = K.one();
    for (auto& l : delta_linear_factors(K, a))
        prod = K.mul(prod, K.mul(l.c, b) + l.d);
    return prod;
}

Element delta_oracle(const NumberField& K, const std::vector<Element>& a, const Element& b)
{
    return kpoly::resultant(K, build_p(K, a, b), build_q(K, a));
}

/* ---- auxiliary primes ---------------------------------------------------- */

Gamma find_gamma(const NumberField& K, const ClassGroupTable& G, unsigned n, const Int& scan_bound)
{
    Int avoid = Int(n) * Int(n - 1);
    for (auto& P : prime_ideals_up_to(K, scan_bound, true)) {
        if (avoid % P.p == 0)
            continue;
        if (G.order() > 1 && class_of(K, G, P.ideal) != G.zero())
            continue;
        auto g = principal_generator(K, P.ideal, G.principality);
        if (!g)
            continue;
        return Gamma{*g, P};
    }
    throw Error(ErrorKind::scan_exhausted, "no principal prime coprime to n(n-1) below " + scan_bound.get_str());
}

bool lemma_prime_ok(const NumberField& K, const Element& gamma, unsigned n, const PrimeIdeal& P)
{
    if (P.f != 1 || P.p <= n)
        return false;
    ResidueField F(K, P);
    const FiniteField& Fp = F.field();
    FiniteField::Elem g = F.reduce(gamma);
    if (Fp.is_zero(g))
        return false;
    FiniteField::Elem gn1 = Fp.pow(g, Int(n - 1));
    FqPoly R(n + 1, Fp.zero());
    R[0] = g;
    R[1] = Fp.neg(gn1);
    R[n] = Fp.one();
    if (!fq::is_irreducible(Fp, R))
        return false;
    FqPoly Rd(n, Fp.zero());
    Rd[0] = Fp.neg(gn1);
    Rd[n - 1] = Fp.from_int(Int(n));
    return fq::roots(Fp, Rd).size() == n - 1;
}

P1Data p1_data(const NumberField& K, const Element& gamma, unsigned n, const PrimeIdeal& P)
{
    ResidueField F(K, P);
    const FiniteField& Fp = F.field();
    FiniteField::Elem g = F.reduce(gamma);
    FqPoly Rd(n, Fp.zero());
    Rd[0] = Fp.neg(Fp.pow(g, Int(n - 1)));
    Rd[n - 1] = Fp.from_int(Int(n));
    P1Data d;
    d.prime = P;
    for (auto& r : fq::roots(Fp, Rd))
        d.roots.push_back(Int(static_cast<unsigned long>(r[0])));
    std::sort(d.roots.begin(), d.roots.end());
    d.b1 = K.from_int(Int(static_cast<unsigned long>(g[0])));
    return d;
}

namespace {

std::vector<P1Data> scan_p1(const NumberField& K, const Element& gamma, unsigned n,
                            const std::optional<FractionalIdeal>& avoid, const Int& bound, std::size_t max_count)
{
    std::vector<P1Data> out;
    for (auto& P : prime_ideals_up_to(K, bound, true)) {
        if (P.f != 1 || P.p <= n)
            continue;
        if (avoid && ideal_contains(P.ideal, *avoid))
            continue;
        if (!lemma_prime_ok(K, gamma, n, P))
            continue;
        P1Data d = p1_data(K, gamma, n, P);
        out.push_back(std::move(d));
        if (out.size() >= max_count)
            break;
    }
    return out;
}

}  // namespace

std::vector<P1Data> list_p1(const NumberField& K, const Element& gamma, unsigned n,
                            const std::optional<FractionalIdeal>& avoid, const Int& bound)
{
    return scan_p1(K, gamma, n, avoid, bound, SIZE_MAX);
}

P1Data find_p1(const NumberField& K, const Element& gamma, unsigned n, const FractionalIdeal& a, const Int& scan_bound)
{
    auto found = scan_p1(K, gamma, n, a, scan_bound, 1);
    if (found.empty())
        throw Error(ErrorKind::scan_exhausted, "no degree-one prime satisfying the lemma below " + scan_bound.get_str());
    return found.front();
}

std::vector<Rat> seed_values(const std::vector<Rat>& a_prime)
{
    const unsigned long n = a_prime.size() + 1;
    QPoly q{-a_prime[0], Rat(static_cast<long>(n))};
    for (std::size_t i = 1; i < a_prime.size(); ++i)
        q = qpoly::mul(q, QPoly{-a_prime[i], Rat(1)});
    QPoly p{Rat(0)};
    for (std::size_t i = 0; i < q.size(); ++i)
        p.push_back(q[i] / Rat(static_cast<long>(i + 1)));
    std::vector<Rat> v;
    v.push_back(qpoly::eval(p, a_prime[0] / Rat(static_cast<long>(n))));
    for (std::size_t i = 1; i < a_prime.size(); ++i)
        v.push_back(qpoly::eval(p, a_prime[i]));
    return v;
}

std::vector<Rat> find_distinct_seed(unsigned n, std::uint64_t seed, unsigned budget)
{
    if (n < 2)
        throw Error(ErrorKind::invalid_argument, "degree must be at least 2");
    std::mt19937_64 rng(seed);
    for (unsigned attempt = 0; attempt < budget; ++attempt) {
        // the range widens slowly so that small seeds are preferred
        std::uint64_t h = 10 + attempt / 16;
        std::vector<Rat> a;
        for (unsigned i = 0; i + 1 < n; ++i) {
            std::uint64_t r = rng() % (2 * h + 1);
            a.emplace_back(static_cast<long>(r) - static_cast<long>(h));
        }
        if (a[0] == 0)
            continue;
        auto v = seed_values(a);
        bool distinct = true;
        for (std::size_t i = 0; i < v.size() && distinct; ++i)
            for (std::size_t j = i + 1; j < v.size() && distinct; ++j)
                distinct = v[i] != v[j];
        if (distinct)
            return a;
    }
    throw Error(ErrorKind::search_budget_exhausted, "no seed vector with distinct values; retry with another seed");
}

PrimeIdeal find_p2(const NumberField& K, const std::vector<Rat>& a_prime, unsigned n, const FractionalIdeal& avoid,
                   const Int& scan_bound)
{
    auto values = seed_values(a_prime);
    std::vector<Rat> all = values;
    all.insert(all.end(), a_prime.begin(), a_prime.end());
    for (auto& P : prime_ideals_up_to(K, scan_bound, true)) {
        if (P.f != 1 || P.p <= n || ideal_contains(P.ideal, avoid))
            continue;
        bool ok = true;
        for (auto& r : all)
            ok = ok && r.get_den() % P.p != 0;
        if (!ok)
            continue;
        std::vector<Int> res;
        for (auto& v : values)
            res.push_back(rat_mod(v, P.p));
        std::sort(res.begin(), res.end());
        if (std::adjacent_find(res.begin(), res.end()) != res.end())
            continue;
        return P;
    }
    throw Error(ErrorKind::scan_exhausted, "no admissible second auxiliary prime below " + scan_bound.get_str());
}

std::vector<Element> sz_select(const NumberField& K, const FractionalIdeal& a, unsigned n)
{
    if (n <= 2)
        return {};
    const std::size_t m = n - 2;
    ResidueRing Ra(K, a);
    std::vector<Element> minus(m, K.from_int(Int(-1)));
    if (!Ra.is_zero(sz_polynomial(K, minus)))
        return minus;
    Int q = Ra.size();
    Int total = pow_int(q, static_cast<unsigned long>(m));
    if (total > Int(10000000))
        throw Error(ErrorKind::enumeration_bound_exceeded, "residue tuple space too large to enumerate");
    for (Int idx = 0; idx < total; ++idx) {
        std::vector<Element> r;
        Int t = idx;
        for (std::size_t i = 0; i < m; ++i) {
            r.push_back(Ra.element(Int(t % q)));
            t /= q;
        }
        if (!Ra.is_zero(sz_polynomial(K, r)))
            return r;
    }
    throw Error(ErrorKind::internal, "no point outside the vanishing locus; the norm bound on a is violated");
}

/* ---- congruence assembly ------------------------------------------------- */

CongruenceSystem congruence_system(const NumberField& K, const SearchContext& ctx)
{
    const unsigned n = ctx.n;
    CongruenceSystem sys;
    auto residue_p2 = [&](const Rat& r) { return K.from_int(rat_mod(r, ctx.p2.p)); };
    std::vector<TaggedCongruence> a1;
    a1.push_back({{K.one(), principal_ideal(K, K.from_int(Int(n)))}, "a1 = 1 mod (n)"});
    a1.push_back({{K.zero(), ctx.a.ideal}, "a1 in a"});
    if (n > 2)
        a1.push_back({{K.zero(), principal_ideal(K, K.from_int(Int(n - 1)))}, "a1 in (n-1)"});
    a1.push_back({{K.from_int(Int(n) * ctx.p1.roots[0]), ctx.p1.prime.ideal}, "a1 = n r_0 mod p1"});
    a1.push_back({{residue_p2(ctx.a_prime[0]), ctx.p2.ideal}, "a1 = a'_1 mod p2"});
    sys.per_variable.push_back(std::move(a1));
    FractionalIdeal nfact = principal_ideal(K, K.from_int(factorial(n)));
    for (unsigned i = 1; i + 1 < n; ++i) {
        std::vector<TaggedCongruence> ai;
        std::string idx = std::to_string(i + 1);
        ai.push_back({{K.zero(), nfact}, "a" + idx + " in (n!)"});
        ai.push_back({{ctx.sz_residues[i - 1], ctx.a.ideal}, "a" + idx + " = r_" + idx + " mod a"});
        ai.push_back({{K.from_int(ctx.p1.roots[i]), ctx.p1.prime.ideal}, "a" + idx + " = root mod p1"});
        ai.push_back({{residue_p2(ctx.a_prime[i]), ctx.p2.ideal}, "a" + idx + " = a'_" + idx + " mod p2"});
        sys.per_variable.push_back(std::move(ai));
    }
    return sys;
}

std::vector<Element> solve_system(const NumberField& K, const CongruenceSystem& sys)
{
    std::vector<Element> a;
    for (auto& var : sys.per_variable) {
        std::vector<Congruence> cs;
        for (auto& t : var)
            cs.push_back(t.congruence);
        a.push_back(crt_solve(K, cs));
    }
    return a;
}

bool ConditionReport::ok() const
{
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionCheck& c) { return c.ok; });
}

ConditionReport verify_conditions(const NumberField& K, const SearchContext& ctx, const std::vector<Element>& a,
                                  const std::optional<Element>& b2)
{
    const unsigned n = ctx.n;
    ConditionReport rep;
    auto fail = [&](std::size_t i, std::string why) {
        rep.conditions[i].ok = false;
        if (rep.conditions[i].detail.empty())
            rep.conditions[i].detail = std::move(why);
    };

    // (1)
    const FractionalIdeal& A = ctx.a.ideal;
    if (!ideal_contains(A, a[0]))
        fail(0, "a1 not in a");
    if (!ideal_contains(principal_ideal(K, K.from_int(Int(n - 1))), a[0]))
        fail(0, "a1 not in (n-1)");
    if (!ideal_contains(principal_ideal(K, K.from_int(Int(n))), a[0] - K.one()))
        fail(0, "a1 not 1 mod (n)");
    ResidueRing Ra(K, A);
    FractionalIdeal nfact = principal_ideal(K, K.from_int(factorial(n)));
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (!ideal_contains(nfact, a[i]))
            fail(0, "a" + std::to_string(i + 1) + " not in (n!)");
        if (!Ra.is_zero(a[i] - ctx.sz_residues[i - 1]))
            fail(0, "a" + std::to_string(i + 1) + " has the wrong residue mod a");
    }
    if (a.size() > 1 && Ra.is_zero(sz_polynomial(K, std::vector<Element>(a.begin() + 1, a.end()))))
        fail(0, "residues lie on the vanishing locus of F");
    if (rep.conditions[0].ok)
        rep.conditions[0].detail = ctx.sz_used_minus_one ? "residues -1 mod a" : "residues from enumeration mod a";

    // (2)
    KPoly p0 = build_p(K, a, K.zero());
    if (!kpoly::is_integral(p0))
        fail(1, "P_{a,0} has a non-integral coefficient");

    // (3) at the primes dividing n!
    auto lin = delta_linear_factors(K, a);
    if (!rep.conditions[1].ok) {
        fail(2, "requires (2)");
    } else {
        for (auto p : primes_up_to(n)) {
            for (auto& P : factor_rational_prime(K, Int(static_cast<unsigned long>(p)))) {
                ResidueRing R2(K, ideal_mul(K, P.ideal, P.ideal));
                bool witness = false;
                for (auto& b : R2.representatives(Int(1000000))) {
                    Element prod = K.one();
                    for (auto& l : lin)
                        prod = R2.reduce(K.mul(prod, R2.reduce(K.mul(l.c, b) + l.d)));
                    if (!prod.is_zero()) {
                        witness = true;
                        break;
                    }
                }
                if (!witness)
                    fail(2, "every b mod P^2 gives P^2 | Delta at a prime above " + std::to_string(p));
            }
        }
    }

    // (4)
    if (rep.conditions[1].ok) {
        try {
            Element b = b2 ? *b2 : choose_b2(K, ctx, a);
            FractionalIdeal A2 = ideal_mul(K, A, A);
            FractionalIdeal A3 = ideal_mul(K, A2, A);
            Element d = delta_product(K, a, b);
            if (!ideal_contains(A2, b))
                fail(3, "b2 not in a^2");
            else if (!ideal_contains(A2, d) || ideal_contains(A3, d))
                fail(3, "a^2 || Delta fails at b2");
        } catch (const Error& e) {
            fail(3, e.what());
        }
    } else {
        fail(3, "requires (2)");
    }

    // (5)
    ResidueField F1(K, ctx.p1.prime);
    FqPoly red = reduce_poly(F1, build_p(K, a, ctx.p1.b1));
    if (fq::degree(red) != static_cast<int>(n) || !fq::is_irreducible(F1.field(), red))
        fail(4, "P_{a,b1} is reducible mod p1");

    // (6)
    std::vector<Element> values{Rat(1, int_pow(n, n)) * lin[0].d};
    for (std::size_t i = 1; i < lin.size(); ++i)
        values.push_back(lin[i].d);
    if (!pairwise_distinct(values))
        fail(5, "critical values coincide");
    return rep;
}

Element choose_b2(const NumberField& K, const SearchContext& ctx, const std::vector<Element>& a)
{
    const FractionalIdeal& A = ctx.a.ideal;
    FractionalIdeal A2 = ideal_mul(K, A, A);
    FractionalIdeal A3 = ideal_mul(K, A2, A);
    ResidueRing R3(K, A3);
    auto lin = delta_linear_factors(K, a);
    Int size = R3.size();
    if (size > Int(50000000))
        throw Error(ErrorKind::enumeration_bound_exceeded, "O_K/a^3 too large to enumerate");
    for (Int i = 1; i < size; ++i) {
        Element b = R3.element(i);
        if (!ideal_contains(A2, b))
            continue;
        if (!ideal_contains(A3, K.mul(lin[0].c, b) + lin[0].d))
            return b;
    }
    throw Error(ErrorKind::internal, "no coset of a^2/a^3 keeps a^3 from dividing the first factor");
}

/* ---- sieve ---------------------------------------------------------------- */

TSet make_t(const NumberField& K, const SearchContext& ctx, const Element& b1, const Element& b2)
{
    FractionalIdeal A3 = ideal_pow(K, ctx.a.ideal, 3);
    TSet T;
    T.base = crt_solve(K, {{b1, ctx.p1.prime.ideal}, {b2, A3}});
    T.modulus = ideal_mul(K, A3, ctx.p1.prime.ideal);
    return T;
}

std::vector<ShellPoint> t_shell(const NumberField& K, const TSet& T, const Rat& lo, const Rat& hi)
{
    const std::size_t d = K.degree();
    RatMatrix form = t2_form(K);
    IntMatrix basis = lll_reduce(T.modulus.hnf, form);
    RatMatrix q = gram_in_basis(basis, form);
    RatVector w = row_times(T.base.coords(), inverse(to_rat(basis)));
    RatVector center(d);
    for (std::size_t i = 0; i < d; ++i)
        center[i] = -w[i];
    std::vector<ShellPoint> out;
    fincke_pohst(q, center, hi, [&](const IntVector& c, const Rat& value) {
        if (value <= lo)
            return true;
        RatVector v = T.base.coords();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                v[j] += c[i] * basis[i][j];
        out.push_back({Element::from_coords(v), value});
        return true;
    });
    std::sort(out.begin(), out.end(), [](const ShellPoint& x, const ShellPoint& y) {
        if (x.t2 != y.t2)
            return x.t2 < y.t2;
        return compare_coordinates(x.b, y.b) < 0;
    });
    return out;
}

FactorResult factored_norm(const NumberField& K, const std::vector<Element>& values, const Int& divisor_norm,
                           const FactorOptions& opts)
{
    FactorResult total;
    for (auto& v : values) {
        Rat nv = abs(K.norm(v));
        if (nv.get_den() != 1)
            throw Error(ErrorKind::invalid_argument, "factored_norm needs integral values");
        FactorResult r = factor_integer(nv.get_num(), opts);
        total.factors = merge_factorizations(total.factors, r.factors);
        total.unfactored *= r.unfactored;
    }
    for (auto& pp : factor_integer(divisor_norm, opts).factors) {
        auto it = std::find_if(total.factors.begin(), total.factors.end(),
                               [&](const PrimePower& x) { return x.prime == pp.prime; });
        if (it == total.factors.end() || it->exponent < pp.exponent)
            throw Error(ErrorKind::internal, "divisor norm does not divide the value norm");
        it->exponent -= pp.exponent;
        if (it->exponent == 0)
            total.factors.erase(it);
    }
    return total;
}

namespace {

struct Outcome {
    enum Kind { hit, not_squarefree, unknown, degenerate } kind = unknown;
    Element delta;
    FractionalIdeal reduced;
    SquarefreeReport report;
    bool spot_checked = false;
};

}  // namespace

std::optional<SieveHit> sieve_b(const NumberField& K, const SearchContext& ctx, const std::vector<Element>& a,
                                const TSet& T, const SieveOptions& opts, SieveStats& stats)
{
    const std::size_t d = K.degree();
    auto lin = delta_linear_factors(K, a);
    FractionalIdeal a2inv = ideal_inverse(K, ideal_pow(K, ctx.a.ideal, 2));
    Int a2norm = ctx.a.norm() * ctx.a.norm();
    std::uint64_t stride = 0;
    if (opts.spot_check_rate > 0)
        stride = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(1.0 / opts.spot_check_rate + 0.5));

    auto evaluate = [&](const Element& b, bool spot) {
        Outcome o;
        std::vector<Element> values;
        for (auto& l : lin) {
            values.push_back(K.mul(l.c, b) + l.d);
            if (values.back().is_zero()) {
                o.kind = Outcome::degenerate;
                return o;
            }
        }
        o.delta = K.one();
        for (auto& v : values)
            o.delta = K.mul(o.delta, v);
        if (spot) {
            o.spot_checked = true;
            if (!(delta_oracle(K, a, b) == o.delta))
                throw Error(ErrorKind::internal, "product formula disagrees with the resultant at b = " + format_element(b));
        }
        o.reduced = ideal_mul(K, principal_ideal(K, o.delta), a2inv);
        if (!o.reduced.is_integral())
            throw Error(ErrorKind::internal, "a^2 does not divide Delta for an element of T");
        o.report = ideal_is_squarefree(K, o.reduced, factored_norm(K, values, a2norm, opts.factor));
        switch (o.report.status) {
        case SquarefreeStatus::squarefree: o.kind = Outcome::hit; break;
        case SquarefreeStatus::not_squarefree: o.kind = Outcome::not_squarefree; break;
        case SquarefreeStatus::unknown: o.kind = Outcome::unknown; break;
        }
        return o;
    };

    RatMatrix form = t2_form(K);
    IntMatrix basis = lll_reduce(T.modulus.hnf, form);
    RatMatrix q = gram_in_basis(basis, form);
    Rat top = Rat(opts.box * opts.box);
    Rat hi = 0;
    for (std::size_t i = 0; i < d; ++i)
        hi = std::max(hi, q[i][i]);
    hi *= 4;
    Rat lo = -1;
    const unsigned workers = std::max(1u, opts.workers);
    const std::size_t block = 32 * workers;
    while (true) {
        if (hi > top)
            hi = top;
        auto shell = t_shell(K, T, lo, hi);
        for (std::size_t start = 0; start < shell.size(); start += block) {
            std::size_t end = std::min(shell.size(), start + block);
            std::vector<Outcome> results(end - start);
            std::vector<std::string> errors(workers);
            std::vector<ErrorKind> kinds(workers, ErrorKind::internal);
            auto job = [&](unsigned w) {
                try {
                    for (std::size_t i = start + w; i < end; i += workers) {
                        std::uint64_t k = stats.candidates + (i - start);
                        results[i - start] = evaluate(shell[i].b, stride && k % stride == 0);
                    }
                } catch (const Error& e) {
                    errors[w] = e.what();
                    kinds[w] = e.kind();
                }
            };
            if (workers == 1) {
                job(0);
            } else {
                std::vector<std::thread> pool;
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back(job, w);
                for (auto& t : pool)
                    t.join();
            }
            for (unsigned w = 0; w < workers; ++w)
                if (!errors[w].empty())
                    throw Error(kinds[w], errors[w]);
            for (std::size_t i = start; i < end; ++i) {
                Outcome& o = results[i - start];
                ++stats.candidates;
                stats.last_t2 = shell[i].t2;
                if (o.spot_checked)
                    ++stats.spot_checks;
                switch (o.kind) {
                case Outcome::hit:
                    return SieveHit{shell[i].b, o.delta, o.reduced, o.report};
                case Outcome::not_squarefree: ++stats.not_squarefree; break;
                case Outcome::unknown: ++stats.unknown; break;
                case Outcome::degenerate: ++stats.degenerate; break;
                }
                if (stats.candidates >= opts.max_candidates)
                    throw Error(ErrorKind::search_budget_exhausted, "candidate budget exhausted");
            }
        }
        if (hi == top)
            return std::nullopt;
        lo = hi;
        hi *= 4;
    }
}

/* ---- pipeline ------------------------------------------------------------- */

const char* to_string(Stage s)
{
    switch (s) {
    case Stage::target_ideal: return "target-ideal";
    case Stage::gamma_p1: return "gamma-p1";
    case Stage::seed_p2: return "seed-p2";
    case Stage::assembly: return "assembly";
    case Stage::sieve: return "sieve";
    case Stage::verify: return "verify";
    }
    return "unknown";
}

StageError::StageError(Stage s, ErrorKind kind, const std::string& msg)
    : std::runtime_error(std::string(to_string(s)) + ": " + msg), stage_(s), kind_(kind)
{
}

SearchCertificate end_to_end(const NumberField& K, const ClassGroupTable& G, long target_class, unsigned n,
                             const EndToEndOptions& opts, SieveStats* stats_out)
{
    if (n < 2)
        throw StageError(Stage::target_ideal, ErrorKind::invalid_argument, "degree must be at least 2");
    SearchContext ctx;
    ctx.n = n;
    ctx.a = run_stage(Stage::target_ideal, [&] {
        ClassVector target = G.vector_of(target_class);
        PrimeScanConstraints c;
        c.coprime_to = principal_ideal(K, K.from_int(factorial(n)));
        c.min_norm = int_pow(n, n - 2);
        c.scan_bound = opts.scan_bound;
        return pick_prime_in_class(K, G, G.negate(target), c);
    });
    run_stage(Stage::gamma_p1, [&] {
        ctx.gamma = find_gamma(K, G, n, opts.scan_bound);
        ctx.p1 = find_p1(K, ctx.gamma.gamma, n, ctx.a.ideal, opts.scan_bound);
        return 0;
    });
    run_stage(Stage::seed_p2, [&] {
        ctx.a_prime = find_distinct_seed(n, opts.seed);
        ctx.p2 = find_p2(K, ctx.a_prime, n, ideal_mul(K, ctx.a.ideal, ctx.p1.prime.ideal), opts.scan_bound);
        return 0;
    });
    std::vector<Element> a;
    Element b2;
    run_stage(Stage::assembly, [&] {
        ctx.sz_residues = sz_select(K, ctx.a.ideal, n);
        ctx.sz_used_minus_one =
            std::all_of(ctx.sz_residues.begin(), ctx.sz_residues.end(), [&](const Element& r) { return r == K.from_int(Int(-1)); });
        a = solve_system(K, congruence_system(K, ctx));
        b2 = choose_b2(K, ctx, a);
        ConditionReport rep = verify_conditions(K, ctx, a, b2);
        for (std::size_t i = 0; i < rep.conditions.size(); ++i)
            if (!rep.conditions[i].ok)
                throw Error(ErrorKind::internal,
                            "condition (" + std::to_string(i + 1) + ") fails: " + rep.conditions[i].detail);
        return 0;
    });
    TSet T = make_t(K, ctx, ctx.p1.b1, b2);
    SieveStats stats;
    auto hit = run_stage(Stage::sieve, [&] { return sieve_b(K, ctx, a, T, opts.sieve, stats); });
    if (stats_out)
        *stats_out = stats;
    if (!hit) {
        StageError e(Stage::sieve, ErrorKind::search_budget_exhausted,
                     "no squarefree discriminant with |b| <= " + opts.sieve.box.get_str());
        e.stats = stats;
        throw e;
    }

    SearchCertificate c;
    c.polynomial = K.polynomial();
    if (!K.power_basis())
        c.basis = K.basis();
    c.n = n;
    c.seed = opts.seed;
    c.box = opts.sieve.box;
    c.target_class = target_class;
    c.class_group = G.cyclic_orders;
    c.a = ctx.a;
    c.gamma = ctx.gamma.gamma;
    c.p1 = ctx.p1.prime;
    c.p2 = ctx.p2;
    c.b1 = ctx.p1.b1;
    c.b2 = b2;
    c.a_prime = ctx.a_prime;
    c.avec = a;
    c.b = hit->b;
    KPoly P = build_p(K, a, hit->b);
    for (unsigned k = 0; k <= n; ++k)
        c.f.push_back(P[n - k]);
    c.delta = hit->delta;
    c.norm_factorization = hit->report.norm_factorization;
    c.stats = stats;
    c.flags = run_stage(Stage::verify, [&] { return compute_flags(K, G, c); });
    for (auto& [name, ok] : c.flags)
        if (!ok)
            throw StageError(Stage::verify, ErrorKind::internal, "certificate flag " + name + " is false");
    return c;
}

}  // namespace steinitz
