#include "steinitz/finite_field.hpp"

#include <algorithm>

#include "steinitz/error.hpp"

namespace steinitz {

FiniteField::FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p), modulus_(std::move(modulus))
{
    if (p < 2 || modulus_.size() < 2 || modulus_.back() != 1)
        throw Error(ErrorKind::invalid_argument, "FiniteField: bad characteristic or modulus");
    for (auto& c : modulus_)
        c %= p_;
}

FiniteField FiniteField::prime_field(std::uint64_t p)
{
    return FiniteField(p, {0, 1});
}

Int FiniteField::order() const
{
    return pow_int(Int(static_cast<unsigned long>(p_)), degree());
}

FiniteField::Elem FiniteField::one() const
{
    Elem e = zero();
    e[0] = 1;
    return e;
}

FiniteField::Elem FiniteField::from_int(const Int& x) const
{
    Elem e = zero();
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p_);
    e[0] = r.get_ui();
    return e;
}

FiniteField::Elem FiniteField::from_poly(const std::vector<Int>& coeffs) const
{
    // reduce coefficients mod p, then the polynomial mod m
    std::vector<std::uint64_t> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Int r;
        mpz_fdiv_r_ui(r.get_mpz_t(), coeffs[i].get_mpz_t(), p_);
        c[i] = r.get_ui();
    }
    std::size_t f = degree();
    for (std::size_t k = c.size(); k-- > f;) {
        std::uint64_t lead = c[k];
        if (lead == 0)
            continue;
        for (std::size_t j = 0; j < f; ++j) {
            std::uint64_t t = mulmod(lead, modulus_[j]);
            c[k - f + j] = (c[k - f + j] + p_ - t) % p_;
        }
        c[k] = 0;
    }
    c.resize(f, 0);
    return c;
}

FiniteField::Elem FiniteField::add(const Elem& a, const Elem& b) const
{
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t s = a[i] + b[i];
        r[i] = s >= p_ ? s - p_ : s;
    }
    return r;
}

FiniteField::Elem FiniteField::sub(const Elem& a, const Elem& b) const
{
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
    return r;
}

FiniteField::Elem FiniteField::neg(const Elem& a) const
{
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] == 0 ? 0 : p_ - a[i];
    return r;
}

FiniteField::Elem FiniteField::mul(const Elem& a, const Elem& b) const
{
    std::size_t f = degree();
    if (f == 1)
        return {mulmod(a[0], b[0])};
    std::vector<std::uint64_t> c(2 * f - 1, 0);
    for (std::size_t i = 0; i < f; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < f; ++j)
            c[i + j] = (c[i + j] + mulmod(a[i], b[j])) % p_;
    }
    for (std::size_t k = c.size(); k-- > f;) {
        std::uint64_t lead = c[k];
        if (lead == 0)
            continue;
        for (std::size_t j = 0; j < f; ++j) {
            std::uint64_t t = mulmod(lead, modulus_[j]);
            c[k - f + j] = (c[k - f + j] + p_ - t) % p_;
        }
    }
    c.resize(f);
    return c;
}

FiniteField::Elem FiniteField::pow(const Elem& a, const Int& e) const
{
    if (e < 0)
        return pow(inv(a), -e);
    Elem result = one();
    Elem base = a;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i))
            result = mul(result, base);
        if (i + 1 < bits)
            base = mul(base, base);
    }
    return result;
}

FiniteField::Elem FiniteField::inv(const Elem& a) const
{
    if (is_zero(a))
        throw Error(ErrorKind::invalid_argument, "FiniteField: inverse of zero");
    return pow(a, order() - 2);
}

bool FiniteField::is_zero(const Elem& a) const
{
    return std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
}

FiniteField::Elem FiniteField::element(const Int& index) const
{
    Elem e = zero();
    Int rest = index;
    for (std::size_t i = 0; i < e.size(); ++i) {
        Int r;
        mpz_fdiv_qr_ui(rest.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), p_);
        e[i] = r.get_ui();
    }
    return e;
}

Int FiniteField::index(const Elem& a) const
{
    Int idx = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        idx = idx * static_cast<unsigned long>(p_) + static_cast<unsigned long>(a[i]);
    return idx;
}

namespace fq {

void trim(const FiniteField& F, FqPoly& a)
{
    while (!a.empty() && F.is_zero(a.back()))
        a.pop_back();
}

int degree(const FqPoly& a)
{
    return static_cast<int>(a.size()) - 1;
}

FqPoly add(const FiniteField& F, const FqPoly& a, const FqPoly& b)
{
    FqPoly r(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = F.add(r[i], b[i]);
    trim(F, r);
    return r;
}

FqPoly sub(const FiniteField& F, const FqPoly& a, const FqPoly& b)
{
    FqPoly r(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = F.sub(r[i], b[i]);
    trim(F, r);
    return r;
}

FqPoly mul(const FiniteField& F, const FqPoly& a, const FqPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    FqPoly r(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i]))
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(F, r);
    return r;
}

std::pair<FqPoly, FqPoly> divmod(const FiniteField& F, const FqPoly& a, const FqPoly& b)
{
    if (b.empty())
        throw Error(ErrorKind::invalid_argument, "fq::divmod by zero polynomial");
    FqPoly r = a;
    trim(F, r);
    if (r.size() < b.size())
        return {{}, r};
    FqPoly q(r.size() - b.size() + 1, F.zero());
    auto lead_inv = F.inv(b.back());
    for (std::size_t k = r.size(); k-- >= b.size();) {
        if (F.is_zero(r[k]))
            continue;
        auto c = F.mul(r[k], lead_inv);
        std::size_t shift = k - (b.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[shift + j] = F.sub(r[shift + j], F.mul(c, b[j]));
    }
    trim(F, q);
    trim(F, r);
    return {q, r};
}

FqPoly rem(const FiniteField& F, const FqPoly& a, const FqPoly& b)
{
    return divmod(F, a, b).second;
}

FqPoly monic(const FiniteField& F, const FqPoly& a)
{
    if (a.empty())
        return a;
    auto li = F.inv(a.back());
    FqPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = F.mul(a[i], li);
    return r;
}

FqPoly gcd(const FiniteField& F, FqPoly a, FqPoly b)
{
    trim(F, a);
    trim(F, b);
    while (!b.empty()) {
        FqPoly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

FqPoly powmod(const FiniteField& F, FqPoly base, Int e, const FqPoly& m)
{
    FqPoly result{F.one()};
    result = rem(F, result, m);
    base = rem(F, base, m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i))
            result = rem(F, mul(F, result, base), m);
        if (i + 1 < bits)
            base = rem(F, mul(F, base, base), m);
    }
    return result;
}

FqPoly derivative(const FiniteField& F, const FqPoly& a)
{
    FqPoly r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(F.mul(a[i], F.from_int(static_cast<std::int64_t>(i))));
    trim(F, r);
    return r;
}

FiniteField::Elem eval(const FiniteField& F, const FqPoly& a, const FiniteField::Elem& x)
{
    auto acc = F.zero();
    for (std::size_t i = a.size(); i-- > 0;)
        acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

FqPoly x_poly(const FiniteField& F)
{
    return {F.zero(), F.one()};
}

namespace {

std::vector<unsigned> prime_divisors(unsigned m)
{
    std::vector<unsigned> out;
    for (unsigned r = 2; r * r <= m; ++r) {
        if (m % r == 0) {
            out.push_back(r);
            while (m % r == 0)
                m /= r;
        }
    }
    if (m > 1)
        out.push_back(m);
    return out;
}

/* x^(q^k) mod m by repeated q-th powering. */
FqPoly frobenius_power(const FiniteField& F, const FqPoly& m, unsigned k)
{
    FqPoly h = rem(F, x_poly(F), m);
    Int q = F.order();
    for (unsigned i = 0; i < k; ++i)
        h = powmod(F, h, q, m);
    return h;
}

FqPoly random_poly(const FiniteField& F, std::size_t deg_bound, std::mt19937_64& rng)
{
    FqPoly r(deg_bound);
    for (auto& c : r) {
        c = F.zero();
        for (auto& x : c)
            x = rng() % F.characteristic();
    }
    trim(F, r);
    return r;
}

/* a: monic squarefree, product of irreducibles of degree d. */
void equal_degree_split(const FiniteField& F, const FqPoly& a, unsigned d, std::mt19937_64& rng,
                        std::vector<FqPoly>& out)
{
    int n = degree(a);
    if (n <= 0)
        return;
    if (static_cast<unsigned>(n) == d) {
        out.push_back(a);
        return;
    }
    Int q = F.order();
    bool even = F.characteristic() == 2;
    for (;;) {
        FqPoly r = random_poly(F, static_cast<std::size_t>(n), rng);
        if (degree(r) < 1)
            continue;
        FqPoly b;
        if (!even) {
            Int e = (pow_int(q, d) - 1) / 2;
            b = sub(F, powmod(F, r, e, a), FqPoly{F.one()});
        } else {
            // absolute trace to F_2
            unsigned steps = F.degree() * d;
            FqPoly t = rem(F, r, a);
            b = t;
            for (unsigned i = 1; i < steps; ++i) {
                t = rem(F, mul(F, t, t), a);
                b = add(F, b, t);
            }
        }
        FqPoly g = gcd(F, a, b);
        int dg = degree(g);
        if (dg > 0 && dg < n) {
            equal_degree_split(F, g, d, rng, out);
            equal_degree_split(F, divmod(F, a, g).first, d, rng, out);
            return;
        }
    }
}

bool poly_less(const FiniteField& F, const FqPoly& a, const FqPoly& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;) {
        Int ia = F.index(a[i]), ib = F.index(b[i]);
        if (ia != ib)
            return ia < ib;
    }
    return false;
}

/* p-th root of a polynomial whose derivative vanishes. */
FqPoly pth_root(const FiniteField& F, const FqPoly& a)
{
    std::uint64_t p = F.characteristic();
    Int e = F.order() / static_cast<unsigned long>(p);  // a^(q/p) is the p-th root in F_q
    FqPoly r;
    for (std::size_t i = 0; i < a.size(); i += p)
        r.push_back(F.pow(a[i], e));
    trim(F, r);
    return r;
}

void squarefree_decompose(const FiniteField& F, const FqPoly& a, unsigned mult,
                          std::vector<std::pair<FqPoly, unsigned>>& out)
{
    if (degree(a) < 1)
        return;
    FqPoly da = derivative(F, a);
    if (da.empty()) {
        squarefree_decompose(F, pth_root(F, a), mult * static_cast<unsigned>(F.characteristic()), out);
        return;
    }
    FqPoly c = gcd(F, a, da);
    FqPoly w = divmod(F, a, c).first;
    unsigned i = 1;
    while (degree(w) > 0) {
        FqPoly y = gcd(F, w, c);
        FqPoly z = divmod(F, w, y).first;
        if (degree(z) > 0)
            out.push_back({monic(F, z), i * mult});
        ++i;
        w = y;
        c = divmod(F, c, y).first;
    }
    if (degree(c) > 0)
        squarefree_decompose(F, pth_root(F, c), mult * static_cast<unsigned>(F.characteristic()), out);
}

}  // namespace

bool is_irreducible(const FiniteField& F, const FqPoly& a_in)
{
    FqPoly a = monic(F, a_in);
    int n = degree(a);
    if (n < 1)
        return false;
    if (n == 1)
        return true;
    FqPoly x = x_poly(F);
    if (sub(F, frobenius_power(F, a, static_cast<unsigned>(n)), rem(F, x, a)).size() != 0)
        return false;
    for (unsigned r : prime_divisors(static_cast<unsigned>(n))) {
        FqPoly h = sub(F, frobenius_power(F, a, static_cast<unsigned>(n) / r), x);
        if (degree(gcd(F, a, h)) != 0)
            return false;
    }
    return true;
}

std::vector<FiniteField::Elem> roots(const FiniteField& F, const FqPoly& a_in)
{
    FqPoly a = monic(F, a_in);
    std::vector<FiniteField::Elem> out;
    if (degree(a) < 1)
        return out;
    FqPoly xq = sub(F, powmod(F, x_poly(F), F.order(), a), x_poly(F));
    FqPoly g = gcd(F, a, xq);
    if (degree(g) < 1)
        return out;
    std::mt19937_64 rng(0x5eed);
    std::vector<FqPoly> lin;
    equal_degree_split(F, g, 1, rng, lin);
    for (auto& l : lin)
        out.push_back(F.neg(monic(F, l)[0]));
    std::sort(out.begin(), out.end(),
              [&](const auto& x, const auto& y) { return F.index(x) < F.index(y); });
    return out;
}

std::vector<std::pair<FqPoly, unsigned>> factor(const FiniteField& F, const FqPoly& a_in)
{
    FqPoly a = a_in;
    trim(F, a);
    if (a.empty())
        throw Error(ErrorKind::invalid_argument, "fq::factor of zero polynomial");
    a = monic(F, a);
    std::vector<std::pair<FqPoly, unsigned>> sqf;
    squarefree_decompose(F, a, 1, sqf);
    std::vector<std::pair<FqPoly, unsigned>> out;
    std::mt19937_64 rng(0x5eed);
    Int q = F.order();
    for (auto& [s, mult] : sqf) {
        // distinct-degree split
        FqPoly rest = s;
        FqPoly h = rem(F, x_poly(F), rest);
        for (unsigned d = 1; degree(rest) >= static_cast<int>(2 * d); ++d) {
            h = powmod(F, h, q, rest);
            FqPoly g = gcd(F, rest, sub(F, h, x_poly(F)));
            if (degree(g) > 0) {
                std::vector<FqPoly> parts;
                equal_degree_split(F, g, d, rng, parts);
                for (auto& p : parts)
                    out.push_back({monic(F, p), mult});
                rest = divmod(F, rest, g).first;
                h = rem(F, h, rest);
            }
        }
        if (degree(rest) > 0)
            out.push_back({monic(F, rest), mult});
    }
    std::sort(out.begin(), out.end(),
              [&](const auto& x, const auto& y) { return poly_less(F, x.first, y.first); });
    return out;
}

}  // namespace fq

}  // namespace steinitz
