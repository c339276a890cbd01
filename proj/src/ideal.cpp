#include "steinitz/ideal.hpp"

#include <algorithm>
#include <map>

#include "steinitz/error.hpp"

namespace steinitz {

namespace {

void normalize(FractionalIdeal& I)
{
    Int g = I.den;
    for (auto& row : I.hnf)
        for (auto& x : row)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1)
        return;
    I.den /= g;
    for (auto& row : I.hnf)
        for (auto& x : row)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

FractionalIdeal make(std::size_t d, IntMatrix rows, const Int& den, const Int& modulus)
{
    FractionalIdeal I;
    I.hnf = hnf(std::move(rows), d, modulus);
    I.den = den;
    normalize(I);
    return I;
}

Element row_element(const IntVector& row)
{
    Element e(row.size());
    e.num = row;
    return e;
}

/* Columns of the multiplication matrix of an integral element, as rows. */
void append_products(const NumberField& K, const Element& y, IntMatrix& rows)
{
    RatMatrix m = K.mult_matrix(y);
    std::size_t d = K.degree();
    for (std::size_t j = 0; j < d; ++j) {
        IntVector v(d);
        for (std::size_t k = 0; k < d; ++k)
            v[k] = m[k][j].get_num();
        rows.push_back(std::move(v));
    }
}

}  // namespace

Rat FractionalIdeal::norm() const
{
    Int n = 1;
    for (std::size_t i = 0; i < hnf.size(); ++i)
        n *= hnf[i][i];
    Rat r(n, pow_int(den, hnf.size()));
    r.canonicalize();
    return r;
}

bool ideal_less(const FractionalIdeal& a, const FractionalIdeal& b)
{
    int c = cmp(a.norm(), b.norm());
    if (c != 0)
        return c < 0;
    if (a.den != b.den)
        return a.den < b.den;
    for (std::size_t i = 0; i < a.hnf.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (a.hnf[i][j] != b.hnf[i][j])
                return a.hnf[i][j] < b.hnf[i][j];
    return false;
}

FractionalIdeal unit_ideal(const NumberField& K)
{
    std::size_t d = K.degree();
    FractionalIdeal I;
    I.hnf.assign(d, IntVector(d, Int(0)));
    for (std::size_t i = 0; i < d; ++i)
        I.hnf[i][i] = 1;
    return I;
}

FractionalIdeal principal_ideal(const NumberField& K, const Element& x) { return ideal_from_gens(K, {x}); }

FractionalIdeal ideal_from_gens(const NumberField& K, const std::vector<Element>& gens)
{
    Int D = 1;
    for (auto& g : gens)
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), g.den.get_mpz_t());
    IntMatrix rows;
    Int modulus = 0;
    for (auto& g : gens) {
        if (g.is_zero())
            continue;
        Element y = Rat(D) * g;
        append_products(K, y, rows);
        Rat n = K.norm(y);
        mpz_gcd(modulus.get_mpz_t(), modulus.get_mpz_t(), n.get_num_mpz_t());
    }
    if (rows.empty())
        throw Error(ErrorKind::zero_ideal, "ideal generated by zero");
    return make(K.degree(), std::move(rows), D, modulus);
}

FractionalIdeal ideal_from_lattice(const NumberField& K, IntMatrix rows, const Int& den)
{
    if (den <= 0)
        throw Error(ErrorKind::invalid_argument, "ideal denominator must be positive");
    return make(K.degree(), std::move(rows), den, Int(0));
}

FractionalIdeal ideal_mul(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b)
{
    IntMatrix rows;
    rows.reserve(a.hnf.size() * b.hnf.size());
    for (auto& ra : a.hnf) {
        Element x = row_element(ra);
        for (auto& rb : b.hnf)
            rows.push_back(K.mul(x, row_element(rb)).num);
    }
    return make(K.degree(), std::move(rows), a.den * b.den, a.min_integer() * b.min_integer());
}

FractionalIdeal ideal_add(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b)
{
    Int D;
    mpz_lcm(D.get_mpz_t(), a.den.get_mpz_t(), b.den.get_mpz_t());
    Int sa = D / a.den, sb = D / b.den;
    IntMatrix rows;
    for (auto& r : a.hnf) {
        IntVector v = r;
        for (auto& x : v)
            x *= sa;
        rows.push_back(std::move(v));
    }
    for (auto& r : b.hnf) {
        IntVector v = r;
        for (auto& x : v)
            x *= sb;
        rows.push_back(std::move(v));
    }
    Int modulus;
    Int ma = a.min_integer() * sa, mb = b.min_integer() * sb;
    mpz_gcd(modulus.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
    return make(K.degree(), std::move(rows), D, modulus);
}

FractionalIdeal ideal_inverse(const NumberField& K, const FractionalIdeal& a)
{
    // L^{-1} = {c : c . v in Z for every row v of every M_h, h in L}, the dual
    // of the lattice spanned by those rows
    std::size_t d = K.degree();
    IntMatrix rows;
    for (auto& r : a.hnf) {
        RatMatrix m = K.mult_matrix(row_element(r));
        for (std::size_t k = 0; k < d; ++k) {
            IntVector v(d);
            for (std::size_t j = 0; j < d; ++j)
                v[j] = m[k][j].get_num();
            rows.push_back(std::move(v));
        }
    }
    IntMatrix bc = hnf(std::move(rows), d, a.min_integer());
    RatMatrix dual = transpose(inverse(to_rat(bc)));
    Int D = 1;
    for (auto& row : dual)
        D = lcm(D, lcm_den(row));
    IntMatrix num(d, IntVector(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Rat v = dual[i][j] * D;
            num[i][j] = v.get_num() * a.den;
        }
    // O_K is inside L^{-1}, so D * den * Z^d lies in the scaled lattice
    return make(d, std::move(num), D, D * a.den);
}

FractionalIdeal ideal_intersect(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b)
{
    return ideal_inverse(K, ideal_add(K, ideal_inverse(K, a), ideal_inverse(K, b)));
}

FractionalIdeal ideal_pow(const NumberField& K, const FractionalIdeal& a, long e)
{
    FractionalIdeal base = e < 0 ? ideal_inverse(K, a) : a;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    FractionalIdeal result = unit_ideal(K);
    while (k > 0) {
        if (k & 1)
            result = ideal_mul(K, result, base);
        k >>= 1;
        if (k)
            base = ideal_mul(K, base, base);
    }
    return result;
}

FractionalIdeal ideal_scale(const NumberField& K, const FractionalIdeal& a, const Element& x)
{
    return ideal_mul(K, a, principal_ideal(K, x));
}

bool ideal_contains(const FractionalIdeal& I, const Element& x)
{
    IntVector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Int t = x.num[i] * I.den;
        if (!mpz_divisible_p(t.get_mpz_t(), x.den.get_mpz_t()))
            return false;
        mpz_divexact(y[i].get_mpz_t(), t.get_mpz_t(), x.den.get_mpz_t());
    }
    return hnf_solve(I.hnf, y).has_value();
}

bool ideal_contains(const FractionalIdeal& I, const FractionalIdeal& J)
{
    for (auto& e : ideal_basis(J))
        if (!ideal_contains(I, e))
            return false;
    return true;
}

std::vector<Element> ideal_basis(const FractionalIdeal& I)
{
    std::vector<Element> out;
    for (auto& r : I.hnf) {
        Element e = row_element(r);
        e.den = I.den;
        e.normalize();
        out.push_back(std::move(e));
    }
    return out;
}

bool coprime(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b)
{
    return ideal_add(K, a, b) == unit_ideal(K);
}

bool prime_less(const PrimeIdeal& a, const PrimeIdeal& b) { return ideal_less(a.ideal, b.ideal); }

std::vector<PrimeIdeal> factor_rational_prime(const NumberField& K, const Int& p)
{
    if (!is_probable_prime(p))
        throw Error(ErrorKind::invalid_argument, "factor_rational_prime: " + p.get_str() + " is not prime");
    if (K.index() % p == 0)
        throw Error(ErrorKind::unsupported_prime,
                    "prime " + p.get_str() + " divides the index [O_K : Z[theta]]; choose another presentation");
    if (!p.fits_ulong_p())
        throw Error(ErrorKind::invalid_argument, "prime too large for residue field arithmetic");
    std::uint64_t pp = p.get_ui();
    FiniteField Fp = FiniteField::prime_field(pp);
    FqPoly g;
    for (auto& c : K.polynomial())
        g.push_back(Fp.from_int(c));
    std::vector<PrimeIdeal> out;
    for (auto& [h, e] : fq::factor(Fp, g)) {
        PrimeIdeal P;
        P.p = p;
        P.e = e;
        P.f = static_cast<unsigned>(fq::degree(h));
        QPoly hq;
        for (auto& c : h) {
            P.local_factor.push_back(c[0]);
            hq.push_back(Rat(Int(static_cast<unsigned long>(c[0]))));
        }
        std::vector<Element> gens{K.from_int(p)};
        if (P.f < K.degree())
            gens.push_back(K.from_power_basis(hq));
        P.ideal = ideal_from_gens(K, gens);
        out.push_back(std::move(P));
    }
    std::sort(out.begin(), out.end(), prime_less);
    return out;
}

std::vector<PrimeIdeal> prime_ideals_up_to(const NumberField& K, const Int& bound, bool skip_index_primes)
{
    std::vector<PrimeIdeal> out;
    if (bound < 2)
        return out;
    if (!bound.fits_ulong_p() || bound > Int(100000000UL))
        throw Error(ErrorKind::enumeration_bound_exceeded, "prime ideal bound too large");
    for (std::uint64_t p : primes_up_to(bound.get_ui())) {
        Int pz(static_cast<unsigned long>(p));
        if (K.index() % pz == 0) {
            if (skip_index_primes)
                continue;
            throw Error(ErrorKind::unsupported_prime,
                        "prime " + pz.get_str() + " divides the index [O_K : Z[theta]]");
        }
        for (auto& P : factor_rational_prime(K, pz))
            if (P.norm() <= bound)
                out.push_back(P);
    }
    std::sort(out.begin(), out.end(), prime_less);
    return out;
}

long valuation(const NumberField& K, const FractionalIdeal& I, const PrimeIdeal& P)
{
    long v = 0;
    if (I.den != 1)
        v -= static_cast<long>(P.e) * static_cast<long>(valuation(I.den, P.p));
    FractionalIdeal cur = I;
    cur.den = 1;
    FractionalIdeal pinv;
    bool have_inv = false;
    // the norm bounds the loop: every step divides it by N(P)
    unsigned bound = valuation(cur.norm().get_num(), P.p) / P.f;
    for (unsigned step = 0; step < bound; ++step) {
        if (!ideal_contains(P.ideal, cur))
            break;
        if (!have_inv) {
            pinv = ideal_inverse(K, P.ideal);
            have_inv = true;
        }
        cur = ideal_mul(K, cur, pinv);
        ++v;
    }
    return v;
}

long valuation(const NumberField& K, const Element& x, const PrimeIdeal& P)
{
    return valuation(K, principal_ideal(K, x), P);
}

std::vector<std::pair<PrimeIdeal, long>> factor_ideal(const NumberField& K, const FractionalIdeal& I)
{
    Rat n = I.norm();
    std::map<Int, bool> rational;
    for (const Int& part : {Int(n.get_num()), Int(n.get_den()), I.den}) {
        if (part == 1)
            continue;
        auto fr = factor_integer(part);
        if (!fr.complete())
            throw Error(ErrorKind::enumeration_bound_exceeded, "ideal norm could not be factored");
        for (auto& pp : fr.factors)
            rational[pp.prime] = true;
    }
    std::vector<std::pair<PrimeIdeal, long>> out;
    for (auto& [p, unused] : rational) {
        (void)unused;
        for (auto& P : factor_rational_prime(K, p)) {
            long v = valuation(K, I, P);
            if (v != 0)
                out.emplace_back(P, v);
        }
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return prime_less(a.first, b.first); });
    return out;
}

ResidueField::ResidueField(const NumberField& K, const PrimeIdeal& P)
    : K_(&K), P_(P), F_(P.p.get_ui(), P.local_factor)
{
}

FiniteField::Elem ResidueField::reduce(const Element& x) const
{
    QPoly q = K_->to_power_basis(x);
    std::vector<Int> coeffs;
    for (auto& c : q) {
        if (c.get_den() % P_.p == 0)
            throw Error(ErrorKind::invalid_argument, "element is not integral at the residue prime");
        Int v = c.get_num() * mod_inverse(c.get_den(), P_.p);
        coeffs.push_back(v);
    }
    return F_.from_poly(coeffs);
}

Element ResidueField::lift(const FiniteField::Elem& a) const
{
    QPoly q;
    for (auto c : a)
        q.push_back(Rat(Int(static_cast<unsigned long>(c))));
    return K_->from_power_basis(q);
}

ResidueRing::ResidueRing(const NumberField& K, FractionalIdeal modulus) : K_(&K), m_(std::move(modulus))
{
    if (!m_.is_integral())
        throw Error(ErrorKind::invalid_argument, "residue ring modulus must be integral");
}

Int ResidueRing::size() const { return m_.norm().get_num(); }

Element ResidueRing::reduce(const Element& x) const
{
    Element out(x.size());
    if (x.den == 1) {
        out.num = hnf_reduce(m_.hnf, x.num);
        return out;
    }
    const Int& mm = m_.min_integer();
    Int g;
    mpz_gcd(g.get_mpz_t(), x.den.get_mpz_t(), mm.get_mpz_t());
    if (g != 1)
        throw Error(ErrorKind::invalid_argument, "denominator is not invertible modulo the ideal");
    Int inv = mod_inverse(x.den, mm);
    IntVector v = x.num;
    for (auto& c : v)
        c *= inv;
    out.num = hnf_reduce(m_.hnf, v);
    return out;
}

Element ResidueRing::element(const Int& index) const
{
    Element e(m_.hnf.size());
    Int rest = index;
    for (std::size_t i = 0; i < m_.hnf.size(); ++i) {
        const Int& radix = m_.hnf[i][i];
        mpz_fdiv_qr(rest.get_mpz_t(), e.num[i].get_mpz_t(), rest.get_mpz_t(), radix.get_mpz_t());
    }
    return e;
}

Int ResidueRing::index(const Element& reduced) const
{
    Int idx = 0;
    for (std::size_t i = m_.hnf.size(); i-- > 0;)
        idx = idx * m_.hnf[i][i] + reduced.num[i];
    return idx;
}

std::vector<Element> ResidueRing::representatives(const Int& limit) const
{
    Int n = size();
    if (n > limit)
        throw Error(ErrorKind::enumeration_bound_exceeded,
                    "residue ring of size " + n.get_str() + " exceeds enumeration limit " + limit.get_str());
    std::vector<Element> out;
    out.reserve(n.get_ui());
    for (Int i = 0; i < n; ++i)
        out.push_back(element(i));
    return out;
}

Element crt_solve(const NumberField& K, const std::vector<Congruence>& system)
{
    std::size_t d = K.degree();
    FractionalIdeal M = unit_ideal(K);
    Element x = K.zero();
    for (auto& c : system) {
        if (!c.modulus.is_integral())
            throw Error(ErrorKind::invalid_argument, "CRT modulus must be integral");
        Element r = ResidueRing(K, c.modulus).reduce(c.residue);
        // split x - r = m1 + m2 with m1 in M, m2 in the new modulus
        IntMatrix rows = M.hnf;
        for (auto& row : c.modulus.hnf)
            rows.push_back(row);
        HnfTransform t = hnf_with_transform(rows, d);
        Element diff = x - r;
        auto coeff = hnf_solve(t.h, diff.num);
        if (!coeff)
            throw Error(ErrorKind::inconsistent_congruences, "congruences are inconsistent on a common factor");
        Element m1(d);
        for (std::size_t k = 0; k < d; ++k) {
            Int w = 0;
            for (std::size_t i = 0; i < d; ++i)
                w += (*coeff)[i] * t.u[i][k];
            if (w == 0)
                continue;
            for (std::size_t j = 0; j < d; ++j)
                m1.num[j] += w * rows[k][j];
        }
        M = ideal_intersect(K, M, c.modulus);
        x = ResidueRing(K, M).reduce(x - m1);
    }
    return x;
}

}  // namespace steinitz
