#include <algorithm>
#include <functional>

#include "steinitz/search.hpp"

namespace steinitz {

const std::vector<std::string>& certificate_flag_names()
{
    static const std::vector<std::string> names{
        "primes_valid",       "gamma_valid",           "congruences_hold",      "b_in_t",
        "p_consistent",       "p_integral",            "p_irreducible_mod_p1",  "f_n1_in_a",
        "f_n_in_a2",          "delta_consistent",      "a2_divides_delta",      "a3_not_dividing_delta",
        "p1_not_dividing_delta", "factorization_consistent", "delta_a2_squarefree", "ring_axioms_hold",
        "ring_disc_matches",  "steinitz_class_verified", "hecke_verified",      "maximal_order_inferred",
    };
    return names;
}

namespace {

// The canonical prime of the field equal to the stored one, if any.
std::optional<PrimeIdeal> match_prime(const NumberField& K, const PrimeIdeal& stored)
{
    if (stored.p < 2 || !is_probable_prime(stored.p) || stored.ideal.degree() != K.degree())
        return std::nullopt;
    for (auto& P : factor_rational_prime(K, stored.p))
        if (P.ideal == stored.ideal && P.e == stored.e && P.f == stored.f)
            return P;
    return std::nullopt;
}

bool sized(const NumberField& K, const Element& x) { return x.size() == K.degree(); }

}  // namespace

std::map<std::string, bool> compute_flags(const NumberField& K, const ClassGroupTable& G, const SearchCertificate& c)
{
    std::map<std::string, bool> flags;
    for (auto& name : certificate_flag_names())
        flags[name] = false;
    auto check = [&](const std::string& name, const std::function<bool()>& f) {
        try {
            flags[name] = f();
        } catch (const std::exception&) {
            flags[name] = false;
        }
    };
    const unsigned n = c.n;
    if (n < 2 || c.avec.size() + 1 != n || c.f.size() != n + 1)
        return flags;
    std::vector<const Element*> all{&c.gamma, &c.b1, &c.b2, &c.b, &c.delta};
    for (auto& x : c.avec)
        all.push_back(&x);
    for (auto& x : c.f)
        all.push_back(&x);
    for (auto* x : all)
        if (!sized(K, *x))
            return flags;

    auto A = match_prime(K, c.a);
    auto P1 = match_prime(K, c.p1);
    auto P2 = match_prime(K, c.p2);
    check("primes_valid", [&] {
        if (!A || !P1 || !P2)
            return false;
        bool ok = A->p > n && Rat(A->norm()) > Rat(pow_int(Int(n), n - 2));
        ok = ok && P1->f == 1 && P1->p > n && !(P1->ideal == A->ideal);
        ok = ok && P2->f == 1 && P2->p > n && !(P2->ideal == A->ideal) && !(P2->ideal == P1->ideal);
        return ok;
    });

    check("gamma_valid", [&] {
        if (!c.gamma.is_integral() || !P1)
            return false;
        FractionalIdeal g = principal_ideal(K, c.gamma);
        Int N = g.norm().get_num();
        Int p = g.min_integer();
        if (!is_probable_prime(p) || (Int(n) * Int(n - 1)) % p == 0)
            return false;
        bool prime = false;
        for (auto& P : factor_rational_prime(K, p))
            prime = prime || (P.ideal == g);
        return prime && lemma_prime_ok(K, c.gamma, n, *P1);
    });

    check("congruences_hold", [&] {
        if (!A || !P1 || !P2)
            return false;
        P1Data d = p1_data(K, c.gamma, n, *P1);
        if (d.roots.size() != n - 1)
            return false;
        auto in = [&](const FractionalIdeal& I, const Element& x) { return ideal_contains(I, x); };
        auto prin = [&](const Int& m) { return principal_ideal(K, K.from_int(m)); };
        auto values = seed_values(c.a_prime);
        ResidueField F2(K, *P2);
        std::vector<FiniteField::Elem> reds;
        for (auto& v : values)
            reds.push_back(F2.reduce(K.from_rat(v)));
        for (std::size_t i = 0; i < reds.size(); ++i)
            for (std::size_t j = i + 1; j < reds.size(); ++j)
                if (reds[i] == reds[j])
                    return false;
        const Element& a1 = c.avec[0];
        bool ok = in(A->ideal, a1) && in(prin(Int(n)), a1 - K.one()) && in(prin(Int(n - 1)), a1);
        ok = ok && in(P1->ideal, a1 - K.from_int(Int(n) * d.roots[0]));
        ok = ok && in(P2->ideal, a1 - K.from_rat(c.a_prime[0]));
        FractionalIdeal nfact = prin(factorial(n));
        std::vector<Element> rest;
        for (std::size_t i = 1; i < c.avec.size(); ++i) {
            const Element& ai = c.avec[i];
            ok = ok && in(nfact, ai) && in(P1->ideal, ai - K.from_int(d.roots[i]));
            ok = ok && in(P2->ideal, ai - K.from_rat(c.a_prime[i]));
            rest.push_back(ai);
        }
        if (!rest.empty()) {
            std::vector<Element> a0{K.zero()};
            a0.insert(a0.end(), rest.begin(), rest.end());
            KPoly p0 = build_p(K, a0, K.zero());
            Element F = K.one();
            for (auto& x : rest)
                F = K.mul(F, kpoly::eval(K, p0, x));
            ok = ok && !ResidueRing(K, A->ideal).is_zero(F);
        }
        return ok;
    });

    check("b_in_t", [&] {
        if (!A || !P1)
            return false;
        FractionalIdeal A2 = ideal_mul(K, A->ideal, A->ideal);
        FractionalIdeal A3 = ideal_mul(K, A2, A->ideal);
        return ideal_contains(A2, c.b2) && ideal_contains(P1->ideal, c.b1 - c.gamma) &&
               ideal_contains(P1->ideal, c.b - c.b1) && ideal_contains(A3, c.b - c.b2);
    });

    KPoly P;
    check("p_consistent", [&] {
        P = build_p(K, c.avec, c.b);
        for (unsigned k = 0; k <= n; ++k)
            if (!(c.f[k] == P[n - k]))
                return false;
        return true;
    });

    check("p_integral", [&] {
        return std::all_of(c.f.begin(), c.f.end(), [](const Element& x) { return x.is_integral(); }) &&
               c.f[0] == K.one();
    });

    check("p_irreducible_mod_p1", [&] {
        if (!P1 || !(c.f[0] == K.one()))
            return false;
        ResidueField F(K, *P1);
        FqPoly r;
        for (unsigned k = 0; k <= n; ++k)
            r.push_back(F.reduce(c.f[n - k]));
        return fq::is_irreducible(F.field(), r);
    });

    check("f_n1_in_a", [&] { return A && ideal_contains(A->ideal, c.f[n - 1]); });
    check("f_n_in_a2", [&] { return A && ideal_contains(ideal_mul(K, A->ideal, A->ideal), c.f[n]); });

    check("delta_consistent", [&] {
        Element prod = delta_product(K, c.avec, c.b);
        return !prod.is_zero() && prod == c.delta && delta_oracle(K, c.avec, c.b) == c.delta;
    });

    std::optional<FractionalIdeal> reduced;
    check("a2_divides_delta", [&] {
        if (!A || c.delta.is_zero())
            return false;
        FractionalIdeal r = ideal_mul(K, principal_ideal(K, c.delta), ideal_inverse(K, ideal_pow(K, A->ideal, 2)));
        if (!r.is_integral())
            return false;
        reduced = r;
        return true;
    });
    check("a3_not_dividing_delta",
          [&] { return A && !c.delta.is_zero() && !ideal_contains(ideal_pow(K, A->ideal, 3), c.delta); });
    check("p1_not_dividing_delta", [&] { return P1 && !c.delta.is_zero() && !ideal_contains(P1->ideal, c.delta); });

    check("factorization_consistent", [&] {
        if (!reduced)
            return false;
        Int prev = 1;
        for (auto& pp : c.norm_factorization) {
            if (pp.exponent == 0 || pp.prime <= prev || !is_probable_prime(pp.prime))
                return false;
            prev = pp.prime;
        }
        return Rat(factorization_value(c.norm_factorization)) == reduced->norm();
    });

    check("delta_a2_squarefree", [&] {
        if (!reduced || !flags["factorization_consistent"])
            return false;
        FactorResult fr;
        fr.factors = c.norm_factorization;
        return ideal_is_squarefree(K, *reduced, fr).status == SquarefreeStatus::squarefree;
    });

    std::optional<RankNRing> R;
    check("ring_axioms_hold", [&] {
        if (!A)
            return false;
        R = build_rf_a(K, make_form(c.f), A->ideal);
        return ring_axioms_check(K, *R).ok;
    });

    check("ring_disc_matches", [&] {
        if (!R || !reduced)
            return false;
        auto disc = ring_discriminant(K, *R);
        return disc && *disc == *reduced;
    });

    check("steinitz_class_verified", [&] {
        if (!R || !A || G.cyclic_orders != c.class_group || c.target_class < 0 || c.target_class >= G.order())
            return false;
        return G.index_of(steinitz_class(K, G, *R)) == c.target_class &&
               G.index_of(class_of(K, G, ideal_inverse(K, A->ideal))) == c.target_class;
    });

    check("hecke_verified", [&] { return R && hecke_check(K, G, *R); });
    flags["maximal_order_inferred"] = flags["delta_a2_squarefree"] && flags["ring_disc_matches"];
    return flags;
}

}  // namespace steinitz
