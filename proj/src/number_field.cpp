#include "steinitz/number_field.hpp"

#include <cmath>
#include <sstream>

#include "steinitz/error.hpp"

namespace steinitz {

Element Element::from_coords(const RatVector& coords)
{
    Element e(coords.size());
    e.den = lcm_den(coords);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        Rat scaled = coords[i] * e.den;
        e.num[i] = scaled.get_num();
    }
    e.normalize();
    return e;
}

RatVector Element::coords() const
{
    RatVector out;
    out.reserve(num.size());
    for (auto& x : num) {
        Rat r(x, den);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

bool Element::is_zero() const
{
    for (auto& x : num)
        if (x != 0)
            return false;
    return true;
}

void Element::normalize()
{
    if (den < 0) {
        den = -den;
        for (auto& x : num)
            x = -x;
    }
    if (is_zero()) {
        den = 1;
        return;
    }
    Int g = den;
    for (auto& x : num)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g != 1) {
        den /= g;
        for (auto& x : num)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
}

namespace {

Element combine(const Element& a, const Element& b, int sign)
{
    if (a.size() != b.size())
        throw Error(ErrorKind::invalid_argument, "element size mismatch");
    Element r(a.size());
    r.den = a.den * b.den;
    for (std::size_t i = 0; i < a.size(); ++i)
        r.num[i] = a.num[i] * b.den + sign * b.num[i] * a.den;
    r.normalize();
    return r;
}

}  // namespace

Element operator+(const Element& a, const Element& b) { return combine(a, b, 1); }

Element operator-(const Element& a, const Element& b) { return combine(a, b, -1); }

Element operator-(const Element& a)
{
    Element r = a;
    for (auto& x : r.num)
        x = -x;
    return r;
}

Element operator*(const Rat& s, const Element& a)
{
    Element r = a;
    for (auto& x : r.num)
        x *= s.get_num();
    r.den *= s.get_den();
    r.normalize();
    return r;
}

Element operator*(const Int& s, const Element& a) { return Rat(s) * a; }

int compare_coordinates(const Element& a, const Element& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        // compare exact rationals a_i, b_i in the signed-magnitude order
        Rat x = a.coord(i), y = b.coord(i);
        if (x == y)
            continue;
        int c = cmp(abs(x), abs(y));
        if (c != 0)
            return c;
        return sgn(x) > 0 ? -1 : 1;
    }
    return 0;
}

Element NumberField::one() const
{
    Element e(degree_);
    e.num[0] = 1;
    return e;
}

Element NumberField::from_int(const Int& x) const
{
    Element e(degree_);
    e.num[0] = x;
    return e;
}

Element NumberField::from_rat(const Rat& x) const
{
    Element e(degree_);
    e.num[0] = x.get_num();
    e.den = x.get_den();
    e.normalize();
    return e;
}

Element NumberField::basis_element(std::size_t i) const
{
    Element e(degree_);
    e.num.at(i) = 1;
    return e;
}

Element NumberField::from_power_basis(const QPoly& poly) const
{
    QPoly g;
    for (auto& c : poly_)
        g.push_back(Rat(c));
    QPoly r = qpoly::divmod(poly, g).second;
    r.resize(degree_, Rat(0));
    return Element::from_coords(row_times(r, basis_inv_));
}

QPoly NumberField::to_power_basis(const Element& x) const
{
    QPoly r = row_times(x.coords(), basis_);
    qpoly::trim(r);
    return r;
}

Element NumberField::mul(const Element& a, const Element& b) const
{
    Element r(degree_);
    for (std::size_t i = 0; i < degree_; ++i) {
        if (a.num[i] == 0)
            continue;
        for (std::size_t j = 0; j < degree_; ++j) {
            if (b.num[j] == 0)
                continue;
            Int c = a.num[i] * b.num[j];
            const IntVector& t = product(i, j);
            for (std::size_t k = 0; k < degree_; ++k)
                if (t[k] != 0)
                    r.num[k] += c * t[k];
        }
    }
    r.den = a.den * b.den;
    r.normalize();
    return r;
}

Element NumberField::pow(const Element& a, unsigned long e) const
{
    Element result = one(), base = a;
    while (e > 0) {
        if (e & 1)
            result = mul(result, base);
        e >>= 1;
        if (e)
            base = mul(base, base);
    }
    return result;
}

Element NumberField::inverse(const Element& a) const
{
    if (a.is_zero())
        throw Error(ErrorKind::invalid_argument, "inverse of zero");
    RatMatrix inv = steinitz::inverse(mult_matrix(a));
    RatVector col(degree_);
    for (std::size_t k = 0; k < degree_; ++k)
        col[k] = inv[k][0];
    return Element::from_coords(col);
}

RatMatrix NumberField::mult_matrix(const Element& x) const
{
    RatMatrix m(degree_, RatVector(degree_, Rat(0)));
    for (std::size_t j = 0; j < degree_; ++j) {
        IntVector acc(degree_, Int(0));
        for (std::size_t i = 0; i < degree_; ++i) {
            if (x.num[i] == 0)
                continue;
            const IntVector& t = product(i, j);
            for (std::size_t k = 0; k < degree_; ++k)
                acc[k] += x.num[i] * t[k];
        }
        for (std::size_t k = 0; k < degree_; ++k) {
            m[k][j] = Rat(acc[k], x.den);
            m[k][j].canonicalize();
        }
    }
    return m;
}

Rat NumberField::trace(const Element& x) const
{
    Int acc = 0;
    for (std::size_t i = 0; i < degree_; ++i)
        acc += x.num[i] * basis_traces_[i];
    Rat r(acc, x.den);
    r.canonicalize();
    return r;
}

Rat NumberField::norm(const Element& x) const { return determinant(mult_matrix(x)); }

std::optional<Rat> NumberField::t2_exact(const Element& x) const
{
    if (!exact_gram_)
        return std::nullopt;
    const RatMatrix& g = *exact_gram_;
    Rat acc = 0;
    for (std::size_t i = 0; i < degree_; ++i) {
        if (x.num[i] == 0)
            continue;
        for (std::size_t j = 0; j < degree_; ++j)
            if (x.num[j] != 0)
                acc += g[i][j] * Rat(x.num[i] * x.num[j]);
    }
    return acc / Rat(x.den * x.den);
}

long double NumberField::t2_approx(const Element& x) const
{
    if (auto exact = t2_exact(x))
        return static_cast<long double>(exact->get_d());
    long double acc = 0;
    std::vector<long double> c(degree_);
    long double den = static_cast<long double>(x.den.get_d());
    for (std::size_t i = 0; i < degree_; ++i)
        c[i] = static_cast<long double>(x.num[i].get_d()) / den;
    for (std::size_t i = 0; i < degree_; ++i)
        for (std::size_t j = 0; j < degree_; ++j)
            acc += approx_gram_[i][j] * c[i] * c[j];
    return acc;
}

FieldPtr make_field(const std::vector<Int>& poly, const std::optional<RatMatrix>& basis,
                    const std::optional<Int>& disc)
{
    if (poly.size() < 2)
        throw Error(ErrorKind::invalid_argument, "defining polynomial must have degree >= 1");
    if (poly.back() != 1)
        throw Error(ErrorKind::invalid_argument, "defining polynomial must be monic");

    std::shared_ptr<NumberField> K(new NumberField());
    const std::size_t d = poly.size() - 1;
    K->degree_ = d;
    K->poly_ = poly;

    QPoly g;
    for (auto& c : poly)
        g.push_back(Rat(c));
    if (!qpoly::is_irreducible_over_q(g))
        throw Error(ErrorKind::reducible_polynomial, "defining polynomial is reducible over Q");

    if (basis) {
        if (basis->size() != d)
            throw Error(ErrorKind::invalid_basis, "integral basis must have d rows");
        for (auto& row : *basis)
            if (row.size() != d)
                throw Error(ErrorKind::invalid_basis, "integral basis must have d columns");
        for (std::size_t j = 0; j < d; ++j)
            if ((*basis)[0][j] != (j == 0 ? 1 : 0))
                throw Error(ErrorKind::invalid_basis, "integral basis must start with 1");
        K->basis_ = *basis;
        K->power_basis_ = false;
        if (determinant(*basis) == 0)
            throw Error(ErrorKind::invalid_basis, "integral basis is singular");
    } else {
        K->basis_ = identity_rat(d);
    }
    K->basis_inv_ = inverse(K->basis_);

    // multiplication table w_i w_j, reduced mod g and rewritten over the basis
    std::vector<QPoly> w(d);
    for (std::size_t i = 0; i < d; ++i) {
        w[i] = K->basis_[i];
        qpoly::trim(w[i]);
    }
    K->table_.assign(d * d, IntVector(d, Int(0)));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            QPoly prod = qpoly::divmod(qpoly::mul(w[i], w[j]), g).second;
            prod.resize(d, Rat(0));
            RatVector coords = row_times(prod, K->basis_inv_);
            IntVector ints(d);
            for (std::size_t k = 0; k < d; ++k) {
                if (coords[k].get_den() != 1)
                    throw Error(ErrorKind::invalid_basis, "basis not closed under multiplication");
                ints[k] = coords[k].get_num();
            }
            K->table_[i * d + j] = ints;
            K->table_[j * d + i] = ints;
        }
    }
    // theta must lie in the lattice, otherwise the order is not the one we think
    if (d > 1) {
        QPoly theta{Rat(0), Rat(1)};
        theta.resize(d, Rat(0));
        for (auto& c : row_times(theta, K->basis_inv_))
            if (c.get_den() != 1)
                throw Error(ErrorKind::invalid_basis, "theta is not integral over the given basis");
    }

    K->basis_traces_.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        Int t = 0;
        for (std::size_t k = 0; k < d; ++k)
            t += K->table_[i * d + k][k];
        K->basis_traces_[i] = t;
    }

    Rat pd = d > 1 ? qpoly::discriminant(g) : Rat(1);
    K->poly_disc_ = pd.get_num();
    Rat det_b = determinant(K->basis_);
    Rat dk = pd * det_b * det_b;
    if (dk.get_den() != 1)
        throw Error(ErrorKind::invalid_basis, "field discriminant is not an integer");
    K->disc_ = dk.get_num();
    Rat idx = 1 / abs(det_b);
    if (idx.get_den() != 1)
        throw Error(ErrorKind::invalid_basis, "basis does not contain Z[theta]");
    K->index_ = idx.get_num();

    RatMatrix trace_form(d, RatVector(d, Rat(0)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Int t = 0;
            for (std::size_t k = 0; k < d; ++k)
                t += K->table_[i * d + j][k] * K->basis_traces_[k];
            trace_form[i][j] = t;
        }
    if (determinant(trace_form) != Rat(K->disc_))
        throw Error(ErrorKind::internal, "trace-form determinant disagrees with disc(g) * det(B)^2");
    if (disc && *disc != K->disc_)
        throw Error(ErrorKind::invalid_basis,
                    "declared discriminant " + disc->get_str() + " differs from computed " + K->disc_.get_str());

    K->r1_ = qpoly::count_real_roots(g);
    K->r2_ = static_cast<int>(d - static_cast<std::size_t>(K->r1_)) / 2;

    if (K->r2_ == 0) {
        K->exact_gram_ = trace_form;
    } else if (d == 2) {
        // complex pair: |s(x)|^2 + |conj s(x)|^2 = 2 x x' = Tr(x)^2 - Tr(x^2)
        RatMatrix gram(2, RatVector(2));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                gram[i][j] = Rat(K->basis_traces_[i] * K->basis_traces_[j]) - trace_form[i][j];
        K->exact_gram_ = gram;
    }

    auto roots = d > 1 ? qpoly::complex_roots(g) : std::vector<std::complex<long double>>{-std::complex<long double>(
                                                       static_cast<long double>(poly[0].get_d()))};
    K->embeddings_.assign(d, std::vector<std::complex<long double>>(d));
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i) {
            std::complex<long double> acc = 0, power = 1;
            for (std::size_t m = 0; m < d; ++m) {
                acc += static_cast<long double>(K->basis_[i][m].get_d()) * power;
                power *= roots[k];
            }
            K->embeddings_[k][i] = acc;
        }
    K->approx_gram_.assign(d, std::vector<long double>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (K->exact_gram_) {
                K->approx_gram_[i][j] = static_cast<long double>((*K->exact_gram_)[i][j].get_d());
                continue;
            }
            long double acc = 0;
            for (std::size_t k = 0; k < d; ++k)
                acc += (K->embeddings_[k][i] * std::conj(K->embeddings_[k][j])).real();
            K->approx_gram_[i][j] = acc;
        }
    return K;
}

HouseNorm house_norm(const NumberField& K, const Element& x)
{
    HouseNorm h;
    h.t2 = K.t2_exact(x);
    h.value = std::sqrt(h.t2 ? static_cast<long double>(h.t2->get_d()) : K.t2_approx(x));
    return h;
}

int compare_house_norm(const NumberField& K, const Element& a, const Element& b)
{
    if (K.has_exact_t2())
        return cmp(*K.t2_exact(a), *K.t2_exact(b));
    long double x = K.t2_approx(a), y = K.t2_approx(b);
    if (x < y)
        return -1;
    if (x > y)
        return 1;
    return 0;
}

std::string format_element(const Element& x)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i)
            os << ", ";
        os << x.coord(i).get_str();
    }
    os << "]";
    return os.str();
}

}  // namespace steinitz
