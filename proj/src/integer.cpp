#include "steinitz/integer.hpp"

#include <algorithm>
#include <map>

#include "steinitz/error.hpp"

namespace steinitz {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::reducible_polynomial: return "reducible-polynomial";
    case ErrorKind::invalid_basis: return "invalid-basis";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::zero_ideal: return "zero-ideal";
    case ErrorKind::unsupported_prime: return "unsupported-prime";
    case ErrorKind::inconsistent_congruences: return "inconsistent-congruences";
    case ErrorKind::leading_coefficient_vanishes: return "leading-coefficient-vanishes";
    case ErrorKind::enumeration_bound_exceeded: return "enumeration-bound-exceeded";
    case ErrorKind::scan_exhausted: return "scan-exhausted";
    case ErrorKind::closure_obstruction: return "closure-obstruction";
    case ErrorKind::degenerate_discriminant: return "degenerate-discriminant";
    case ErrorKind::search_budget_exhausted: return "search-budget-exhausted";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

bool is_probable_prime(const Int& n)
{
    if (n < 2)
        return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

/* One Pollard-Brent run; returns a nontrivial factor or 0. */
Int brent_rho(const Int& n, unsigned long c, std::uint64_t budget)
{
    Int y = 2, x, ys, q = 1, g = 1, t;
    std::uint64_t r = 1, m = 128, spent = 0;
    while (g == 1 && spent < budget) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) {
            y = (y * y + c) % n;
        }
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                t = abs(x - y);
                q = (q * t) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
            spent += lim;
        }
        r *= 2;
    }
    if (g == n) {
        // backtrack one step at a time
        do {
            ys = (ys * ys + c) % n;
            t = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == 1 || g == n)
        return 0;
    return g;
}

void add_prime(std::map<Int, unsigned>& acc, const Int& p, unsigned e)
{
    acc[p] += e;
}

}  // namespace

FactorResult factor_integer(const Int& n_in, const FactorOptions& opts)
{
    if (n_in == 0)
        throw Error(ErrorKind::invalid_argument, "factor_integer: zero");
    Int n = abs(n_in);
    std::map<Int, unsigned> acc;
    FactorResult result;

    // Divides the primes up to `to` out of m (each found with exponent e is
    // recorded as e * mult), stopping early at sqrt(m).  Returns true when
    // the remaining cofactor is 1 or prime.  Primes below `from` must
    // already have been removed.
    auto trial_range = [&](Int& m, std::uint64_t from, std::uint64_t to, unsigned mult) {
        auto limit = [&] {
            Int r = sqrt(m);
            return r.fits_ulong_p() ? std::min<std::uint64_t>(r.get_ui(), to) : to;
        };
        std::uint64_t lim = limit();
        auto trial = [&](std::uint64_t p) {
            if (p < from || p > lim || !mpz_divisible_ui_p(m.get_mpz_t(), p))
                return;
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            add_prime(acc, Int(static_cast<unsigned long>(p)), e * mult);
            lim = limit();
        };
        trial(2);
        trial(3);
        for (std::uint64_t p = 5; p <= lim; p += 6) {
            trial(p);
            trial(p + 2);
        }
        return sqrt(m) <= Int(static_cast<unsigned long>(to));
    };

    // A short trial pass, then primality and rho.  Long trial division up
    // to the full bound is the fallback for cofactors rho cannot split.
    const std::uint64_t bound = opts.trial_bound;
    const std::uint64_t small = std::min<std::uint64_t>(bound, 4096);
    trial_range(n, 2, small, 1);

    Int small_sq = Int(static_cast<unsigned long>(small)) * small;
    // work list of (cofactor, multiplicity)
    std::vector<std::pair<Int, unsigned>> work{{n, 1}};
    std::vector<Int> stuck;
    unsigned long seed_c = 1;
    while (!work.empty()) {
        auto [m, mult] = work.back();
        work.pop_back();
        if (m == 1)
            continue;
        if (m < small_sq || is_probable_prime(m)) {
            add_prime(acc, m, mult);
            continue;
        }
        // perfect powers first: rho is hopeless on p^k
        bool split = false;
        for (unsigned long k = 2; k <= mpz_sizeinbase(m.get_mpz_t(), 2); ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
                work.push_back({root, mult * static_cast<unsigned>(k)});
                split = true;
                break;
            }
        }
        if (split)
            continue;
        Int f = 0;
        for (unsigned attempt = 0; attempt < 4 && f == 0; ++attempt)
            f = brent_rho(m, seed_c++, opts.rho_budget / 4 + 1);
        if (f == 0) {
            bool settled = trial_range(m, small + 1, bound, mult);
            if (m == 1)
                continue;
            if (settled || is_probable_prime(m))
                add_prime(acc, m, mult);
            else
                for (unsigned i = 0; i < mult; ++i)
                    stuck.push_back(m);
            continue;
        }
        Int other = m / f;
        Int g;
        mpz_gcd(g.get_mpz_t(), f.get_mpz_t(), other.get_mpz_t());
        if (g != 1) {
            // m = g^2 * (f/g) * (other/g)
            work.push_back({g, mult * 2});
            work.push_back({Int(f / g), mult});
            work.push_back({Int(other / g), mult});
        } else {
            work.push_back({f, mult});
            work.push_back({other, mult});
        }
    }
    // normalise: a listed prime may also divide a stuck cofactor
    for (auto& s : stuck) {
        for (auto& [p, e] : acc) {
            while (mpz_divisible_p(s.get_mpz_t(), p.get_mpz_t())) {
                s /= p;
                ++e;
            }
        }
        result.unfactored *= s;
    }
    for (auto& [p, e] : acc)
        if (e > 0)
            result.factors.push_back({p, e});
    return result;
}

Factorization merge_factorizations(const Factorization& a, const Factorization& b)
{
    std::map<Int, unsigned> acc;
    for (auto& pp : a)
        acc[pp.prime] += pp.exponent;
    for (auto& pp : b)
        acc[pp.prime] += pp.exponent;
    Factorization out;
    for (auto& [p, e] : acc)
        if (e > 0)
            out.push_back({p, e});
    return out;
}

Int factorization_value(const Factorization& f)
{
    Int v = 1;
    for (auto& pp : f)
        v *= pow_int(pp.prime, pp.exponent);
    return v;
}

unsigned valuation(Int n, const Int& p)
{
    if (n == 0)
        throw Error(ErrorKind::invalid_argument, "valuation of zero");
    unsigned v = 0;
    n = abs(n);
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

Int mod_inverse(const Int& a, const Int& m)
{
    Int r;
    Int am = a % m;
    if (am < 0)
        am += m;
    if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(ErrorKind::invalid_argument, "mod_inverse: not invertible");
    return r;
}

Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int factorial(unsigned n)
{
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int pow_int(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int lcm_den(const std::vector<Rat>& v)
{
    Int l = 1;
    for (auto& x : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x) { return x.get_str(); }

Rat parse_rational(const std::string& s)
{
    Rat r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw Error(ErrorKind::parse_error, "not a rational number: '" + s + "'");
    if (r.get_den() == 0)
        throw Error(ErrorKind::parse_error, "zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

int compare_signed_magnitude(const Int& a, const Int& b)
{
    int c = cmpabs(a, b);
    if (c != 0)
        return c;
    // same magnitude: positive first
    int sa = sgn(a), sb = sgn(b);
    if (sa == sb)
        return 0;
    return sa > sb ? -1 : 1;
}

}  // namespace steinitz
