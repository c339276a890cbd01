#include "steinitz/class_group.hpp"

#include <algorithm>
#include <cmath>

#include "steinitz/error.hpp"
#include "steinitz/lattice.hpp"

namespace steinitz {

namespace {

Element combination(const IntVector& c, const IntMatrix& basis)
{
    Element e(basis[0].size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0)
            continue;
        for (std::size_t j = 0; j < e.num.size(); ++j)
            e.num[j] += c[i] * basis[i][j];
    }
    return e;
}

long mod_pos(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

long int_mod(const Int& a, long m)
{
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
    return r.get_si();
}

}  // namespace

RatMatrix t2_form(const NumberField& K)
{
    if (K.exact_gram())
        return *K.exact_gram();
    std::size_t d = K.degree();
    RatMatrix g(d, RatVector(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            g[i][j] = Rat(static_cast<double>(K.approx_gram()[i][j]));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j)
            g[i][j] = g[j][i];
    return g;
}

std::optional<Element> principal_generator(const NumberField& K, const FractionalIdeal& I,
                                           const PrincipalityOptions& opts)
{
    std::size_t d = K.degree();
    Int n = 1;
    for (std::size_t i = 0; i < d; ++i)
        n *= I.hnf[i][i];
    Rat bound;
    if (d == 1) {
        bound = Rat(n * n);
    } else if (d == 2 && K.complex_pairs() == 1) {
        bound = Rat(2 * n);
    } else {
        double b = static_cast<double>(opts.slack) * static_cast<double>(d) *
                   std::pow(n.get_d(), 2.0 / static_cast<double>(d));
        bound = Rat(std::ceil(b));
    }
    RatMatrix form = t2_form(K);
    IntMatrix basis = lll_reduce(I.hnf, form);
    RatMatrix q = gram_in_basis(basis, form);

    std::optional<Element> best;
    Rat best_value;
    fincke_pohst(
        q, RatVector(d, Rat(0)), bound,
        [&](const IntVector& c, const Rat& value) {
            Element y = combination(c, basis);
            if (y.is_zero())
                return true;
            if (abs(K.norm(y)) != Rat(n))
                return true;
            Element x = y;
            x.den = I.den;
            x.normalize();
            if (!best || value < best_value || (value == best_value && compare_coordinates(x, *best) < 0)) {
                best = x;
                best_value = value;
            }
            return true;
        },
        opts.max_points);
    return best;
}

long ClassGroupTable::order() const
{
    long h = 1;
    for (long c : cyclic_orders)
        h *= c;
    return h;
}

long ClassGroupTable::index_of(const ClassVector& v) const
{
    long idx = 0;
    for (std::size_t i = cyclic_orders.size(); i-- > 0;)
        idx = idx * cyclic_orders[i] + mod_pos(v[i], cyclic_orders[i]);
    return idx;
}

ClassVector ClassGroupTable::vector_of(long index) const
{
    if (index < 0 || index >= order())
        throw Error(ErrorKind::invalid_argument, "class index out of range");
    ClassVector v(cyclic_orders.size());
    for (std::size_t i = 0; i < cyclic_orders.size(); ++i) {
        v[i] = index % cyclic_orders[i];
        index /= cyclic_orders[i];
    }
    return v;
}

ClassVector ClassGroupTable::add(const ClassVector& a, const ClassVector& b) const
{
    ClassVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = mod_pos(a[i] + b[i], cyclic_orders[i]);
    return r;
}

ClassVector ClassGroupTable::negate(const ClassVector& a) const { return scale(a, -1); }

ClassVector ClassGroupTable::scale(const ClassVector& a, long k) const
{
    ClassVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = mod_pos(a[i] * mod_pos(k, cyclic_orders[i]), cyclic_orders[i]);
    return r;
}

double minkowski_bound(const NumberField& K)
{
    double d = static_cast<double>(K.degree());
    double b = std::sqrt(std::fabs(K.discriminant().get_d()));
    b *= std::pow(4.0 / M_PI, K.complex_pairs());
    b *= std::tgamma(d + 1) / std::pow(d, d);
    return b;
}

ClassGroupTable class_group(const NumberField& K, double enumeration_bound, const PrincipalityOptions& opts)
{
    ClassGroupTable G;
    G.principality = opts;
    G.minkowski_bound = minkowski_bound(K);
    if (G.minkowski_bound > enumeration_bound)
        throw Error(ErrorKind::enumeration_bound_exceeded,
                    "Minkowski bound " + std::to_string(G.minkowski_bound) + " exceeds the enumeration bound");
    std::size_t d = K.degree();
    auto small_primes = primes_up_to(static_cast<std::uint64_t>(std::floor(G.minkowski_bound)));
    IntMatrix relations;
    for (std::uint64_t p : small_primes) {
        auto above = factor_rational_prime(K, Int(static_cast<unsigned long>(p)));
        std::size_t start = G.factor_base.size();
        for (auto& P : above)
            G.factor_base.push_back(P);
        relations.emplace_back();
        for (std::size_t k = 0; k < start; ++k)
            relations.back().push_back(0);
        for (auto& P : above)
            relations.back().push_back(P.e);
    }
    std::size_t m = G.factor_base.size();
    for (auto& r : relations)
        r.resize(m, Int(0));
    if (m == 0) {
        G.representatives.push_back(unit_ideal(K));
        G.inverse_representatives.push_back(unit_ideal(K));
        return G;
    }

    // relations from small elements of O_K whose norm is smooth over the factor base
    RatMatrix form = t2_form(K);
    Rat elem_bound = Rat(static_cast<long>(std::ceil(4.0 * static_cast<double>(d) *
                                                     std::pow(G.minkowski_bound + 1, 2.0 / static_cast<double>(d)))));
    auto add_element_relations = [&](const Rat& bound) {
        fincke_pohst(form, RatVector(d, Rat(0)), bound, [&](const IntVector& c, const Rat&) {
            Element x(d);
            x.num = c;
            if (x.is_zero())
                return true;
            Int nx = abs(K.norm(x).get_num());
            if (nx == 1)
                return true;
            Int rest = nx;
            for (std::uint64_t p : small_primes)
                while (mpz_divisible_ui_p(rest.get_mpz_t(), p))
                    rest /= static_cast<unsigned long>(p);
            if (rest != 1)
                return true;
            IntVector row(m);
            for (std::size_t j = 0; j < m; ++j)
                row[j] = valuation(K, x, G.factor_base[j]);
            relations.push_back(std::move(row));
            return true;
        });
    };
    add_element_relations(elem_bound);

    for (int round = 0; round < 8; ++round) {
        SmithForm s = smith_form(relations);
        bool full_rank = s.diagonal.size() >= m;
        for (std::size_t i = 0; full_rank && i < m; ++i)
            if (s.diagonal[i] == 0)
                full_rank = false;
        if (!full_rank) {
            elem_bound *= 4;
            add_element_relations(elem_bound);
            continue;
        }
        std::vector<std::size_t> live;
        G.cyclic_orders.clear();
        for (std::size_t i = 0; i < m; ++i)
            if (s.diagonal[i] != 1) {
                live.push_back(i);
                G.cyclic_orders.push_back(Int(abs(s.diagonal[i])).get_si());
            }
        G.factor_base_classes.assign(m, ClassVector());
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < live.size(); ++t)
                G.factor_base_classes[j].push_back(int_mod(s.v[j][live[t]], G.cyclic_orders[t]));

        // generator t of the group is prod_j P_j^{Vinv[live t][j]}
        std::vector<FractionalIdeal> gens;
        for (std::size_t t = 0; t < live.size(); ++t) {
            FractionalIdeal g = unit_ideal(K);
            for (std::size_t j = 0; j < m; ++j) {
                const Int& e = s.v_inverse[live[t]][j];
                if (e != 0)
                    g = ideal_mul(K, g, ideal_pow(K, G.factor_base[j].ideal, e.get_si()));
            }
            g.den = 1;  // same class, now integral
            gens.push_back(g);
        }
        G.representatives.clear();
        G.inverse_representatives.clear();
        bool verified = true;
        for (long idx = 0; idx < G.order(); ++idx) {
            ClassVector v = G.vector_of(idx);
            FractionalIdeal rep = unit_ideal(K);
            IntVector exps(m, Int(0));
            for (std::size_t t = 0; t < live.size(); ++t) {
                if (v[t] == 0)
                    continue;
                rep = ideal_mul(K, rep, ideal_pow(K, gens[t], v[t]));
                for (std::size_t j = 0; j < m; ++j)
                    exps[j] += v[t] * s.v_inverse[live[t]][j];
            }
            if (idx > 0 && principal_generator(K, rep, opts)) {
                relations.push_back(exps);
                verified = false;
                break;
            }
            G.representatives.push_back(rep);
            G.inverse_representatives.push_back(ideal_inverse(K, rep));
        }
        if (verified)
            return G;
    }
    throw Error(ErrorKind::enumeration_bound_exceeded, "class group relations did not stabilise");
}

ClassVector class_of(const NumberField& K, const ClassGroupTable& G, const FractionalIdeal& I)
{
    if (G.order() == 1)
        return G.zero();
    for (long idx = 0; idx < G.order(); ++idx) {
        FractionalIdeal J = ideal_mul(K, I, G.inverse_representatives[static_cast<std::size_t>(idx)]);
        if (principal_generator(K, J, G.principality))
            return G.vector_of(idx);
    }
    throw Error(ErrorKind::internal, "ideal lies in no computed class; principality search too small");
}

PrimeIdeal pick_prime_in_class(const NumberField& K, const ClassGroupTable& G, const ClassVector& target,
                               const PrimeScanConstraints& c)
{
    for (auto& P : prime_ideals_up_to(K, c.scan_bound, true)) {
        if (P.norm() <= c.min_norm)
            continue;
        if (c.degree_one_only && P.f != 1)
            continue;
        if (c.coprime_to && ideal_contains(P.ideal, *c.coprime_to))
            continue;
        if (class_of(K, G, P.ideal) == target)
            return P;
    }
    throw Error(ErrorKind::scan_exhausted, "no prime ideal in the target class below norm " + c.scan_bound.get_str());
}

}  // namespace steinitz
