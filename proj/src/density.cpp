#include "steinitz/density.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace steinitz {

Rat local_density(const NumberField& K, const std::vector<LinearFactor>& factors, const PrimeIdeal& P)
{
    ResidueRing R2(K, ideal_mul(K, P.ideal, P.ideal));
    auto reps = R2.representatives(Int(10000000));
    std::uint64_t good = 0;
    for (auto& b : reps) {
        Element prod = K.one();
        for (auto& l : factors)
            prod = R2.reduce(K.mul(prod, R2.reduce(K.mul(l.c, b) + l.d)));
        if (!prod.is_zero())
            ++good;
    }
    Rat r(Int(static_cast<unsigned long>(good)), Int(static_cast<unsigned long>(reps.size())));
    r.canonicalize();
    return r;
}

namespace {

bool in_exclude(const DensitySystem& sys, const PrimeIdeal& P)
{
    return std::any_of(sys.exclude.begin(), sys.exclude.end(), [&](const PrimeIdeal& Q) { return Q.ideal == P.ideal; });
}

Int mod_pos(const Int& a, const Int& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Integer sieve over Q: b = b0 + j m with |b| <= N.  Returns false when the
// values are too large for a sieve up to their square root.
bool integer_count(const DensitySystem& sys, const DensityOptions& opts, DensityReport& rep)
{
    Int b0 = 0, m = 1;
    if (sys.t) {
        if (!sys.t->base.is_integral())
            return false;
        b0 = sys.t->base.num[0];
        m = sys.t->modulus.hnf[0][0];
    }
    std::vector<Int> alpha, beta;
    for (auto& l : sys.factors) {
        if (!l.c.is_integral() || !l.d.is_integral())
            return false;
        alpha.push_back(l.c.num[0] * m);
        beta.push_back(l.c.num[0] * b0 + l.d.num[0]);
    }
    const Int& N = opts.box;
    Int jlo = -floor_div(N + b0, m);  // ceil((-N - b0) / m)
    Int jhi = floor_div(N - b0, m);
    if (jhi < jlo) {
        rep.sample = 0;
        return true;
    }
    Int count = jhi - jlo + 1;
    if (count > Int(200000000))
        return false;
    const std::size_t L = count.get_ui();
    Int maxval = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (const Int& j : {jlo, jhi})
            maxval = std::max(maxval, Int(abs(alpha[i] * j + beta[i])));
    Int root = sqrt(maxval);
    if (root > Int(20000000))
        return false;
    std::vector<Int> excluded;
    for (auto& P : sys.exclude)
        excluded.push_back(P.p);

    std::vector<char> bad(L, 0);
    for (auto p64 : primes_up_to(root.get_ui())) {
        Int p(static_cast<unsigned long>(p64));
        if (std::find(excluded.begin(), excluded.end(), p) != excluded.end())
            continue;
        Int p2 = p * p;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            Int a = mod_pos(alpha[i], p2), b = mod_pos(beta[i], p2);
            // solutions j of a j + b = 0 mod p^2, as (residue, step)
            Int r, step;
            if (a % p != 0) {
                r = mod_pos(-b * mod_inverse(a, p2), p2);
                step = p2;
            } else if (a == 0) {
                if (b != 0)
                    continue;
                r = 0;
                step = 1;
            } else {
                if (b % p != 0)
                    continue;
                Int ap = a / p, bp = b / p;
                r = mod_pos(-bp * mod_inverse(ap % p, p), p);
                step = p;
            }
            std::size_t k = mod_pos(r - jlo, step).get_ui();
            std::size_t s = step.get_ui();
            for (; k < L; k += s)
                bad[k] = 1;
        }
    }
    std::uint64_t good = 0;
    std::vector<Int> vals(alpha.size());
    for (std::size_t k = 0; k < L; ++k) {
        if (bad[k])
            continue;
        Int j = jlo + Int(static_cast<unsigned long>(k));
        bool ok = true;
        for (std::size_t i = 0; i < alpha.size() && ok; ++i) {
            vals[i] = alpha[i] * j + beta[i];
            ok = vals[i] != 0;
        }
        // a prime above the sieve bound can still divide two factors
        for (std::size_t i = 0; i < vals.size() && ok; ++i)
            for (std::size_t t = i + 1; t < vals.size() && ok; ++t) {
                Int g = gcd(vals[i], vals[t]);
                for (auto& q : excluded)
                    while (g % q == 0)
                        g /= q;
                ok = g == 1;
            }
        if (ok)
            ++good;
    }
    rep.sample = L;
    rep.squarefree = good;
    rep.integer_path = true;
    return true;
}

enum class Verdict { squarefree, not_squarefree, unknown };

Verdict squarefree_away(const NumberField& K, const DensitySystem& sys, const Element& b, const FactorOptions& fo)
{
    std::vector<Element> values;
    Element prod = K.one();
    for (auto& l : sys.factors) {
        values.push_back(K.mul(l.c, b) + l.d);
        if (values.back().is_zero())
            return Verdict::not_squarefree;
        prod = K.mul(prod, values.back());
    }
    if (values.empty())
        return Verdict::squarefree;
    FactorResult fr = factored_norm(K, values, Int(1), fo);
    FractionalIdeal I = principal_ideal(K, prod);
    bool undecided = !fr.complete();
    for (auto& pp : fr.factors) {
        if (pp.exponent < 2)
            continue;
        if (K.index() % pp.prime == 0 || !pp.prime.fits_ulong_p()) {
            undecided = true;
            continue;
        }
        for (auto& P : factor_rational_prime(K, pp.prime)) {
            if (in_exclude(sys, P) || !ideal_contains(P.ideal, I))
                continue;
            if (ideal_contains(ideal_mul(K, P.ideal, P.ideal), I))
                return Verdict::not_squarefree;
        }
    }
    return undecided ? Verdict::unknown : Verdict::squarefree;
}

}  // namespace

DensityReport density_report(const NumberField& K, const DensitySystem& sys, const DensityOptions& opts)
{
    DensityReport rep;
    if (opts.prime_bound >= 2) {
        for (auto& P : prime_ideals_up_to(K, opts.prime_bound, true)) {
            if (in_exclude(sys, P))
                continue;
            Rat a = local_density(K, sys.factors, P);
            rep.table.push_back({P, a});
            rep.truncated_product *= a;
        }
    }

    bool done = K.degree() == 1 && integer_count(sys, opts, rep);
    if (!done) {
        TSet T = sys.t ? *sys.t : TSet{K.zero(), unit_ideal(K)};
        auto points = t_shell(K, T, Rat(-1), Rat(opts.box * opts.box));
        rep.sample = points.size();
        const unsigned workers = std::max(1u, opts.workers);
        std::vector<Verdict> verdicts(points.size(), Verdict::unknown);
        std::vector<std::string> errors(workers);
        auto job = [&](unsigned w) {
            try {
                for (std::size_t i = w; i < points.size(); i += workers)
                    verdicts[i] = squarefree_away(K, sys, points[i].b, opts.factor);
            } catch (const std::exception& e) {
                errors[w] = e.what();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(job, w);
        for (auto& t : pool)
            t.join();
        for (auto& e : errors)
            if (!e.empty())
                throw Error(ErrorKind::internal, e);
        for (auto v : verdicts) {
            if (v == Verdict::squarefree)
                ++rep.squarefree;
            else if (v == Verdict::unknown)
                ++rep.unknown;
        }
    }
    std::uint64_t decided = rep.sample - rep.unknown;
    rep.empirical = decided ? static_cast<double>(rep.squarefree) / static_cast<double>(decided) : 1.0;
    if (sys.factors.empty())
        rep.empirical = 1.0;
    rep.gap = std::fabs(rep.empirical - rep.truncated_product.get_d());
    return rep;
}

DensitySystem density_system_from_certificate(const NumberField& K, const SearchCertificate& c)
{
    DensitySystem sys;
    sys.factors = delta_linear_factors(K, c.avec);
    FractionalIdeal A3 = ideal_pow(K, c.a.ideal, 3);
    sys.t = TSet{crt_solve(K, {{c.b1, c.p1.ideal}, {c.b2, A3}}), ideal_mul(K, A3, c.p1.ideal)};
    sys.exclude = {c.a, c.p1};
    return sys;
}

}  // namespace steinitz
