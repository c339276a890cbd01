#ifndef STEINITZ_NUMBER_FIELD_HPP_
#define STEINITZ_NUMBER_FIELD_HPP_

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "steinitz/integer.hpp"
#include "steinitz/matrix.hpp"
#include "steinitz/qpoly.hpp"

namespace steinitz {

/* Element of K in coordinates over the integral basis w_1..w_d, stored as
 * an integer numerator vector over a positive common denominator with
 * gcd(num, den) = 1. */
struct Element {
    IntVector num;
    Int den = 1;

    Element() = default;
    explicit Element(std::size_t d) : num(d, Int(0)) {}

    static Element from_coords(const RatVector& coords);

    std::size_t size() const { return num.size(); }
    RatVector coords() const;
    Rat coord(std::size_t i) const
    {
        Rat r(num[i], den);
        r.canonicalize();
        return r;
    }
    bool is_zero() const;
    bool is_integral() const { return den == 1; }
    void normalize();

    bool operator==(const Element& o) const { return den == o.den && num == o.num; }
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator-(const Element& a);
Element operator*(const Rat& s, const Element& a);
Element operator*(const Int& s, const Element& a);

/* Canonical element order: T2 first (when given), then coordinates
 * compared in the 0, 1, -1, 2, -2, ... order. */
int compare_coordinates(const Element& a, const Element& b);

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
  public:
    std::size_t degree() const { return degree_; }
    /* Defining polynomial, monic, constant coefficient first. */
    const std::vector<Int>& polynomial() const { return poly_; }
    /* Row i holds w_i over the power basis 1, theta, ..., theta^(d-1). */
    const RatMatrix& basis() const { return basis_; }
    const RatMatrix& basis_inverse() const { return basis_inv_; }
    bool power_basis() const { return power_basis_; }
    const Int& discriminant() const { return disc_; }
    const Int& index() const { return index_; }
    const Int& polynomial_discriminant() const { return poly_disc_; }
    int real_embeddings() const { return r1_; }
    int complex_pairs() const { return r2_; }

    Element zero() const { return Element(degree_); }
    Element one() const;
    Element from_int(const Int& x) const;
    Element from_rat(const Rat& x) const;
    Element basis_element(std::size_t i) const;
    /* Element given by a polynomial in theta (any degree). */
    Element from_power_basis(const QPoly& poly) const;
    QPoly to_power_basis(const Element& x) const;

    Element mul(const Element& a, const Element& b) const;
    Element pow(const Element& a, unsigned long e) const;
    Element inverse(const Element& a) const;
    Element div(const Element& a, const Element& b) const { return mul(a, inverse(b)); }

    /* coords(x * w_j) as column j. */
    RatMatrix mult_matrix(const Element& x) const;
    Rat trace(const Element& x) const;
    Rat norm(const Element& x) const;

    /* T2(x) = sum |sigma_i(x)|^2.  Exact for totally real and imaginary
     * quadratic fields, long double approximation otherwise. */
    bool has_exact_t2() const { return exact_gram_.has_value(); }
    std::optional<Rat> t2_exact(const Element& x) const;
    long double t2_approx(const Element& x) const;
    const std::optional<RatMatrix>& exact_gram() const { return exact_gram_; }
    const std::vector<std::vector<long double>>& approx_gram() const { return approx_gram_; }
    /* sigma_k(w_i) at index [k][i]. */
    const std::vector<std::vector<std::complex<long double>>>& embeddings() const { return embeddings_; }

    /* w_i * w_j coordinates. */
    const IntVector& product(std::size_t i, std::size_t j) const { return table_[i * degree_ + j]; }

    friend FieldPtr make_field(const std::vector<Int>& poly, const std::optional<RatMatrix>& basis,
                               const std::optional<Int>& disc);

  private:
    NumberField() = default;

    std::size_t degree_ = 0;
    std::vector<Int> poly_;
    RatMatrix basis_;
    RatMatrix basis_inv_;
    bool power_basis_ = true;
    Int disc_;
    Int poly_disc_;
    Int index_;
    int r1_ = 0, r2_ = 0;
    std::vector<IntVector> table_;
    std::vector<Int> basis_traces_;
    std::optional<RatMatrix> exact_gram_;
    std::vector<std::vector<long double>> approx_gram_;
    std::vector<std::vector<std::complex<long double>>> embeddings_;
};

/* Validated number field from a monic integer polynomial and an optional
 * integral basis (rows over the power basis, first row = 1).  Without a
 * basis the power basis is used and monogenicity is assumed. */
FieldPtr make_field(const std::vector<Int>& poly, const std::optional<RatMatrix>& basis = std::nullopt,
                    const std::optional<Int>& disc = std::nullopt);

struct HouseNorm {
    std::optional<Rat> t2;  // exact T2 when available
    long double value = 0;  // sqrt(T2)
};

/* Euclidean size sqrt(sum |sigma_i(x)|^2) of the embedding vector. */
HouseNorm house_norm(const NumberField& K, const Element& x);
int compare_house_norm(const NumberField& K, const Element& a, const Element& b);

std::string format_element(const Element& x);

}  // namespace steinitz

#endif
