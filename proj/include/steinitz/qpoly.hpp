#ifndef STEINITZ_QPOLY_HPP_
#define STEINITZ_QPOLY_HPP_

#include <complex>
#include <vector>

#include "steinitz/integer.hpp"

namespace steinitz {

/* Univariate polynomials over Q, constant coefficient first. */
using QPoly = std::vector<Rat>;

namespace qpoly {

void trim(QPoly& a);
int degree(const QPoly& a);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& a);
Rat eval(const QPoly& a, const Rat& x);
QPoly gcd(QPoly a, QPoly b);  // monic

/* Sylvester-matrix resultant. */
Rat resultant(const QPoly& a, const QPoly& b);
/* (-1)^(n(n-1)/2) Res(a, a') / lc(a). */
Rat discriminant(const QPoly& a);

/* Number of distinct real roots (Sturm). */
int count_real_roots(const QPoly& a);

/* Complex roots, Aberth iteration in long double. */
std::vector<std::complex<long double>> complex_roots(const QPoly& a);

/* Irreducibility over Q of a monic integer polynomial: mod-p degree
 * patterns first, then recombination of numerical roots. */
bool is_irreducible_over_q(const QPoly& a);

}  // namespace qpoly

}  // namespace steinitz

#endif
