#ifndef STEINITZ_KPOLY_HPP_
#define STEINITZ_KPOLY_HPP_

#include <vector>

#include "steinitz/number_field.hpp"

namespace steinitz {

/* Polynomials over K, constant coefficient first, no trailing zeros. */
using KPoly = std::vector<Element>;
using KMatrix = std::vector<std::vector<Element>>;

namespace kpoly {

void trim(KPoly& a);
int degree(const KPoly& a);
KPoly from_elements(std::vector<Element> coeffs);
KPoly add(const NumberField& K, const KPoly& a, const KPoly& b);
KPoly sub(const NumberField& K, const KPoly& a, const KPoly& b);
KPoly mul(const NumberField& K, const KPoly& a, const KPoly& b);
KPoly scale(const NumberField& K, const KPoly& a, const Element& s);
Element eval(const NumberField& K, const KPoly& a, const Element& x);
KPoly derivative(const NumberField& K, const KPoly& a);
/* Formal antiderivative with zero constant term. */
KPoly integrate(const NumberField& K, const KPoly& a);
bool is_integral(const KPoly& a);

/* Determinant over K by Gaussian elimination. */
Element determinant(const NumberField& K, KMatrix m);
/* Sylvester-matrix resultant over K. */
Element resultant(const NumberField& K, const KPoly& a, const KPoly& b);

}  // namespace kpoly
}  // namespace steinitz

#endif
