#include "steinitz/fuzz.hpp"

#include "steinitz/error.hpp"

namespace steinitz {

long random_coefficient(std::mt19937_64& rng, long h)
{
    return static_cast<long>(rng() % static_cast<std::uint64_t>(2 * h + 1)) - h;
}

Element random_element(const NumberField& K, std::mt19937_64& rng, long h)
{
    Element x(K.degree());
    for (auto& c : x.num)
        c = random_coefficient(rng, h);
    return x;
}

BinaryForm random_form(const NumberField& K, std::mt19937_64& rng, std::size_t n, long h, bool monic)
{
    std::vector<Element> c;
    for (std::size_t i = 0; i <= n; ++i)
        c.push_back(i == 0 && monic ? K.one() : random_element(K, rng, h));
    return make_form(std::move(c));
}

namespace {

// membership in P^k through valuations, independent of the lattice test
bool in_power(const NumberField& K, const Element& x, const PrimeIdeal& P, long k)
{
    return x.is_zero() || valuation(K, x, P) >= k;
}

Element random_member(const NumberField& K, std::mt19937_64& rng, const FractionalIdeal& I, long h)
{
    Element x = K.zero();
    for (auto& b : ideal_basis(I))
        x = x + Int(random_coefficient(rng, h)) * b;
    return x;
}

}  // namespace

RingCampaignReport ring_campaign(const NumberField& K, const ClassGroupTable& G, const RingCampaignOptions& opts)
{
    if (opts.min_degree < 2 || opts.max_degree < opts.min_degree)
        throw Error(ErrorKind::invalid_argument, "degree range must satisfy 2 <= min <= max");
    std::mt19937_64 rng(opts.seed);
    RingCampaignReport rep;
    std::vector<PrimeIdeal> twists;
    if (opts.check_twists)
        twists = prime_ideals_up_to(K, opts.twist_prime_bound, true);
    auto fail = [&](const char* check, const BinaryForm& f, std::optional<FractionalIdeal> a, std::string detail) {
        rep.failures.push_back({check, f, std::move(a), std::move(detail)});
    };
    auto where = [](const std::array<std::size_t, 3>& w) {
        return "(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," + std::to_string(w[2]) + ")";
    };
    const std::size_t span = opts.max_degree - opts.min_degree + 1;
    for (std::uint64_t t = 0; t < opts.forms; ++t) {
        std::size_t n = opts.min_degree + static_cast<std::size_t>(rng() % span);
        bool monic = rng() % 2 == 0;
        BinaryForm f = random_form(K, rng, n, opts.height, monic);
        ++rep.forms;
        RankNRing R = build_rf(K, f);
        if (monic) {
            ++rep.monic;
            if (opts.check_oracle) {
                ++rep.oracle_checks;
                OracleReport o = monic_oracle(K, f, R);
                if (!o.ok)
                    fail("oracle", f, std::nullopt, "table entry " + where(o.witness));
            }
        }
        ++rep.axiom_checks;
        AxiomReport ax = ring_axioms_check(K, R);
        if (!ax.ok)
            fail("axioms", f, std::nullopt, ax.failure + " at " + where(ax.witness));

        if (twists.empty())
            continue;
        const PrimeIdeal& P = twists[rng() % twists.size()];
        unsigned mode = static_cast<unsigned>(rng() % 4);
        std::vector<Element> c = f.coeffs;
        FractionalIdeal A2 = ideal_mul(K, P.ideal, P.ideal);
        if (mode & 1u)
            c[n - 1] = random_member(K, rng, P.ideal, 5);
        if (mode & 2u)
            c[n] = random_member(K, rng, A2, 5);
        BinaryForm g = make_form(c);
        bool expected = in_power(K, g[n - 1], P, 1) && in_power(K, g[n], P, 2);
        ++rep.twist_checks;
        std::optional<RankNRing> Ra;
        try {
            Ra = build_rf_a(K, g, P.ideal);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::closure_obstruction)
                throw;
        }
        if (Ra.has_value() != expected) {
            fail("closure", g, P.ideal, expected ? "construction refused a closed pair" : "construction accepted an open pair");
            continue;
        }
        if (!Ra)
            continue;
        ++rep.twist_successes;
        AxiomReport tx = ring_axioms_check(K, *Ra);
        if (!tx.ok)
            fail("axioms", g, P.ideal, tx.failure + " at " + where(tx.witness));
        auto d0 = ring_discriminant(K, build_rf(K, g));
        auto d1 = ring_discriminant(K, *Ra);
        if (d0.has_value() != d1.has_value()) {
            fail("discriminant", g, P.ideal, "degeneracy differs after twisting");
        } else if (d0) {
            ++rep.disc_checks;
            FractionalIdeal expect = ideal_mul(K, *d0, ideal_inverse(K, A2));
            if (!(expect == *d1))
                fail("discriminant", g, P.ideal, "Disc R_f(a) != a^-2 Disc R_f");
        }
        if (steinitz_class(K, G, *Ra) != class_of(K, G, ideal_inverse(K, P.ideal)))
            fail("steinitz", g, P.ideal, "Steinitz class differs from the class of a^-1");
    }
    return rep;
}

}  // namespace steinitz
