#include "steinitz/wood_ring.hpp"

#include <map>
#include <tuple>

#include "steinitz/error.hpp"
#include "steinitz/kpoly.hpp"

namespace steinitz {

BinaryForm make_form(std::vector<Element> coeffs)
{
    if (coeffs.size() < 3)
        throw Error(ErrorKind::invalid_argument, "binary form needs degree n >= 2");
    for (auto& c : coeffs)
        if (!c.is_integral())
            throw Error(ErrorKind::invalid_argument, "binary form coefficients must be integral");
    return BinaryForm{std::move(coeffs)};
}

RankNRing build_rf(const NumberField& K, const BinaryForm& f)
{
    const std::size_t n = f.degree();
    RankNRing R;
    R.n = n;
    R.ideals.assign(n, unit_ideal(K));
    R.constants.assign(n * n * n, K.zero());
    for (std::size_t j = 0; j < n; ++j) {
        R.at(0, j, j) = K.one();
        R.at(j, 0, j) = K.one();
    }
    auto u = [&](std::size_t k) { return k < n ? K.one() : -f[n]; };
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            for (std::size_t k = 1; k <= n; ++k) {
                Element c;
                std::size_t lo = i + j > n ? i + j - n : 1;
                if (k >= std::max<std::size_t>(lo, 1) && k <= i)
                    c = -K.mul(f[i + j - k], u(k));
                else if (k > j && k <= std::min(i + j, n))
                    c = K.mul(f[i + j - k], u(k));
                else
                    continue;
                std::size_t slot = k == n ? 0 : k;
                R.at(i, j, slot) = c;
                R.at(j, i, slot) = c;
            }
        }
    }
    return R;
}

ClosureReport closure_obstruction(const NumberField& K, const BinaryForm& f, const FractionalIdeal& a)
{
    std::size_t n = f.degree();
    ClosureReport rep;
    rep.fn1_in_a = ideal_contains(a, f[n - 1]);
    rep.fn_in_a2 = ideal_contains(ideal_mul(K, a, a), f[n]);
    return rep;
}

RankNRing build_rf_a(const NumberField& K, const BinaryForm& f, const FractionalIdeal& a)
{
    if (!a.is_integral())
        throw Error(ErrorKind::invalid_argument, "twisting ideal must be integral");
    ClosureReport rep = closure_obstruction(K, f, a);
    if (!rep.fn1_in_a)
        throw Error(ErrorKind::closure_obstruction, "f_{n-1} is not in a");
    if (!rep.fn_in_a2)
        throw Error(ErrorKind::closure_obstruction, "f_n is not in a^2");
    RankNRing R = build_rf(K, f);
    R.ideals[R.n - 1] = ideal_inverse(K, a);
    return R;
}

AxiomReport ring_axioms_check(const NumberField& K, const RankNRing& R)
{
    const std::size_t n = R.n;
    AxiomReport rep;
    auto fail = [&](const char* what, std::size_t i, std::size_t j, std::size_t k) {
        rep.ok = false;
        rep.failure = what;
        rep.witness = {i, j, k};
        return rep;
    };
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            Element delta = j == k ? K.one() : K.zero();
            if (!(R.at(0, j, k) == delta) || !(R.at(j, 0, k) == delta))
                return fail("identity", 0, j, k);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!(R.at(i, j, k) == R.at(j, i, k)))
                    return fail("commutativity", i, j, k);

    std::vector<Element> lhs(n), rhs(n);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j)
            for (std::size_t k = 1; k < n; ++k) {
                // (e_i e_j) e_k against e_i (e_j e_k)
                std::fill(lhs.begin(), lhs.end(), K.zero());
                std::fill(rhs.begin(), rhs.end(), K.zero());
                for (std::size_t l = 0; l < n; ++l) {
                    const Element& a = R.at(i, j, l);
                    const Element& b = R.at(j, k, l);
                    for (std::size_t m = 0; m < n; ++m) {
                        if (!a.is_zero() && !R.at(l, k, m).is_zero())
                            lhs[m] = lhs[m] + K.mul(a, R.at(l, k, m));
                        if (!b.is_zero() && !R.at(i, l, m).is_zero())
                            rhs[m] = rhs[m] + K.mul(b, R.at(i, l, m));
                    }
                }
                if (lhs != rhs)
                    return fail("associativity", i, j, k);
            }

    // module compatibility c_ijk * c_i c_j inside c_k
    bool all_unit = true;
    FractionalIdeal one = unit_ideal(K);
    for (auto& I : R.ideals)
        all_unit = all_unit && I == one;
    if (all_unit) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (!R.at(i, j, k).is_integral())
                        return fail("module", i, j, k);
        return rep;
    }
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) {
        id[i] = i;
        for (std::size_t t = 0; t < i; ++t)
            if (R.ideals[t] == R.ideals[i]) {
                id[i] = id[t];
                break;
            }
    }
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, FractionalIdeal> allowed;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Element& c = R.at(i, j, k);
                if (c.is_zero())
                    continue;
                auto key = std::make_tuple(std::min(id[i], id[j]), std::max(id[i], id[j]), id[k]);
                auto it = allowed.find(key);
                if (it == allowed.end()) {
                    FractionalIdeal prod = ideal_mul(K, R.ideals[i], R.ideals[j]);
                    it = allowed.emplace(key, ideal_mul(K, R.ideals[k], ideal_inverse(K, prod))).first;
                }
                if (!ideal_contains(it->second, c))
                    return fail("module", i, j, k);
            }
    return rep;
}

Element trace_form_determinant(const NumberField& K, const RankNRing& R)
{
    const std::size_t n = R.n;
    std::vector<Element> tr(n, K.zero());
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k)
            tr[l] = tr[l] + R.at(l, k, k);
    KMatrix t(n, std::vector<Element>(n, K.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                if (!R.at(i, j, l).is_zero())
                    t[i][j] = t[i][j] + K.mul(R.at(i, j, l), tr[l]);
    return kpoly::determinant(K, std::move(t));
}

FractionalIdeal coefficient_product(const NumberField& K, const RankNRing& R)
{
    FractionalIdeal p = unit_ideal(K);
    for (auto& I : R.ideals)
        p = ideal_mul(K, p, I);
    return p;
}

std::optional<FractionalIdeal> ring_discriminant(const NumberField& K, const RankNRing& R)
{
    Element det = trace_form_determinant(K, R);
    if (det.is_zero())
        return std::nullopt;
    FractionalIdeal c = coefficient_product(K, R);
    return ideal_mul(K, principal_ideal(K, det), ideal_mul(K, c, c));
}

ClassVector steinitz_class(const NumberField& K, const ClassGroupTable& G, const RankNRing& R)
{
    return class_of(K, G, coefficient_product(K, R));
}

OracleReport monic_oracle(const NumberField& K, const BinaryForm& f, const RankNRing& R)
{
    const std::size_t n = f.degree();
    if (!(f[0] == K.one()))
        throw Error(ErrorKind::invalid_argument, "monic oracle needs f_0 = 1");
    OracleReport rep;
    // x^n = -(f_1 x^(n-1) + ... + f_n) in O_K[x]/(f(x,1))
    auto reduce = [&](std::vector<Element> v) {
        for (std::size_t t = v.size(); t-- > n;) {
            if (v[t].is_zero())
                continue;
            Element c = v[t];
            v[t] = K.zero();
            for (std::size_t m = 1; m <= n; ++m)
                v[t - m] = v[t - m] - K.mul(c, f[m]);
        }
        v.resize(n, K.zero());
        return v;
    };
    std::vector<std::vector<Element>> zeta(n, std::vector<Element>(n, K.zero()));
    zeta[0][0] = K.one();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t m = 0; m < k; ++m)
            zeta[k][k - m] = f[m];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Element> prod(2 * n - 1, K.zero());
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (!zeta[i][a].is_zero() && !zeta[j][b].is_zero())
                        prod[a + b] = prod[a + b] + K.mul(zeta[i][a], zeta[j][b]);
            std::vector<Element> v = reduce(std::move(prod));
            std::vector<Element> coords(n, K.zero());
            for (std::size_t k = n; k-- > 1;) {
                coords[k] = v[k];
                for (std::size_t t = 0; t <= k; ++t)
                    v[t] = v[t] - K.mul(coords[k], zeta[k][t]);
            }
            coords[0] = v[0];
            for (std::size_t k = 0; k < n; ++k)
                if (!(coords[k] == R.at(i, j, k))) {
                    rep.ok = false;
                    rep.witness = {i, j, k};
                    return rep;
                }
        }
    return rep;
}

bool hecke_check(const NumberField& K, const ClassGroupTable& G, const RankNRing& R)
{
    auto disc = ring_discriminant(K, R);
    if (!disc)
        throw Error(ErrorKind::degenerate_discriminant, "ring discriminant is zero");
    return class_of(K, G, *disc) == G.scale(steinitz_class(K, G, R), 2);
}

}  // namespace steinitz
