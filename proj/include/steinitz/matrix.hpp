#ifndef STEINITZ_MATRIX_HPP_
#define STEINITZ_MATRIX_HPP_

#include <optional>
#include <vector>

#include "steinitz/integer.hpp"

namespace steinitz {

/* Row-major dense matrices; rows are lattice vectors throughout. */
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;
using IntMatrix = std::vector<IntVector>;
using RatMatrix = std::vector<RatVector>;

/* Lower-triangular row Hermite normal form of the lattice spanned by the
 * rows (restricted to the first `cols` columns): H[i][j] = 0 for j > i,
 * H[i][i] > 0 and 0 <= H[k][i] < H[i][i] for k > i.  Throws when the rows
 * do not span a full-rank lattice.  A nonzero `modulus` must satisfy
 * modulus * Z^cols inside the lattice; entries are then kept reduced. */
IntMatrix hnf(IntMatrix rows, std::size_t cols, const Int& modulus = Int(0));

struct HnfTransform {
    IntMatrix h;       // cols x cols, as hnf()
    IntMatrix u;       // cols x rows.size(): h = u * rows
    IntMatrix kernel;  // relations: kernel * rows = 0
};

HnfTransform hnf_with_transform(const IntMatrix& rows, std::size_t cols);

/* Reduce v modulo the lattice of a lower-triangular HNF; returns the
 * canonical representative with 0 <= v[i] < h[i][i]. */
IntVector hnf_reduce(const IntMatrix& h, IntVector v);

/* Coefficients c with v = c * h, or nullopt when v is not in the lattice. */
std::optional<IntVector> hnf_solve(const IntMatrix& h, const IntVector& v);

Rat determinant(RatMatrix m);
RatMatrix inverse(RatMatrix m);
RatMatrix transpose(const RatMatrix& m);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatMatrix to_rat(const IntMatrix& m);
RatMatrix identity_rat(std::size_t n);
/* Row vector times matrix. */
RatVector row_times(const RatVector& v, const RatMatrix& m);

/* Smith normal form of an integer matrix (r x c): u * a * v = d with
 * u, v unimodular; only v and its inverse are kept. */
struct SmithForm {
    std::vector<Int> diagonal;  // min(r, c) entries, each dividing the next
    IntMatrix v;
    IntMatrix v_inverse;
};

SmithForm smith_form(IntMatrix a);

}  // namespace steinitz

#endif
