#ifndef STEINITZ_LATTICE_HPP_
#define STEINITZ_LATTICE_HPP_

#include <functional>

#include "steinitz/matrix.hpp"

namespace steinitz {

/* Gram matrix B G B^T of the rows of `basis` under the form G. */
RatMatrix gram_in_basis(const IntMatrix& basis, const RatMatrix& form);

/* LLL reduction (delta = 3/4) of the rows of `basis` for the positive
 * definite form G, exact rational Gram-Schmidt.  Returns the reduced rows
 * expressed in the same ambient coordinates. */
IntMatrix lll_reduce(const IntMatrix& basis, const RatMatrix& form);

/* Fincke-Pohst: every integer vector c with (c - z) Q (c - z)^T <= bound,
 * where Q is positive definite.  The visitor receives c and the exact form
 * value; returning false stops the enumeration.  Throws
 * enumeration_bound_exceeded after `max_points` visits. */
using LatticeVisitor = std::function<bool(const IntVector&, const Rat&)>;
void fincke_pohst(const RatMatrix& q, const RatVector& center, const Rat& bound, const LatticeVisitor& visit,
                  std::uint64_t max_points = 50000000);

}  // namespace steinitz

#endif
