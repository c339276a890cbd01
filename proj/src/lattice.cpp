#include "steinitz/lattice.hpp"

#include <cmath>

#include "steinitz/error.hpp"

namespace steinitz {

namespace {

Rat form_value(const IntVector& x, const IntVector& y, const RatMatrix& g)
{
    Rat acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        Rat row = 0;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[j] != 0)
                row += g[i][j] * y[j];
        acc += row * x[i];
    }
    return acc;
}

Int round_rat(const Rat& x)
{
    Rat shifted = x + Rat(1, 2);
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return r;
}

Int floor_rat(const Rat& x)
{
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

struct GramSchmidt {
    RatMatrix mu;
    std::vector<Rat> b;  // squared lengths of the orthogonalised vectors
};

GramSchmidt gram_schmidt(const IntMatrix& rows, const RatMatrix& g)
{
    std::size_t n = rows.size();
    GramSchmidt gs{RatMatrix(n, RatVector(n, Rat(0))), std::vector<Rat>(n)};
    RatMatrix inner(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            inner[i][j] = inner[j][i] = form_value(rows[i], rows[j], g);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rat s = inner[i][j];
            for (std::size_t k = 0; k < j; ++k)
                s -= gs.mu[j][k] * gs.mu[i][k] * gs.b[k];
            gs.mu[i][j] = s / gs.b[j];
        }
        Rat s = inner[i][i];
        for (std::size_t k = 0; k < i; ++k)
            s -= gs.mu[i][k] * gs.mu[i][k] * gs.b[k];
        gs.b[i] = s;
    }
    return gs;
}

}  // namespace

RatMatrix gram_in_basis(const IntMatrix& basis, const RatMatrix& form)
{
    std::size_t n = basis.size();
    RatMatrix out(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            out[i][j] = out[j][i] = form_value(basis[i], basis[j], form);
    return out;
}

IntMatrix lll_reduce(const IntMatrix& basis, const RatMatrix& form)
{
    IntMatrix b = basis;
    std::size_t n = b.size();
    if (n < 2)
        return b;
    std::size_t k = 1;
    GramSchmidt gs = gram_schmidt(b, form);
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            Int q = round_rat(gs.mu[k][j]);
            if (q == 0)
                continue;
            for (std::size_t c = 0; c < b[k].size(); ++c)
                b[k][c] -= q * b[j][c];
            // keep mu consistent for the remaining j
            for (std::size_t l = 0; l < j; ++l)
                gs.mu[k][l] -= Rat(q) * gs.mu[j][l];
            gs.mu[k][j] -= q;
        }
        Rat lovasz = (Rat(3, 4) - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.b[k - 1];
        if (gs.b[k] >= lovasz) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gs = gram_schmidt(b, form);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return b;
}

void fincke_pohst(const RatMatrix& qform, const RatVector& center, const Rat& bound, const LatticeVisitor& visit,
                  std::uint64_t max_points)
{
    std::size_t n = qform.size();
    if (n == 0)
        return;
    // Cholesky-type decomposition Q(y) = sum q_ii (y_i + sum_{j>i} q_ij y_j)^2
    RatMatrix q = qform;
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i][i] <= 0)
            throw Error(ErrorKind::invalid_argument, "fincke_pohst: form is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l)
                q[k][l] -= q[k][i] * q[i][l];
    }

    IntVector c(n, Int(0));
    std::uint64_t visited = 0;
    bool stop = false;

    std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t i, const Rat& rest) {
        Rat t = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            t += q[i][j] * (Rat(c[j]) - center[j]);
        Rat mid = center[i] - t;
        Rat r = rest / q[i][i];
        double s = std::sqrt(std::max(0.0, r.get_d()));
        Int span(std::ceil(s) + 1);
        Int base = floor_rat(mid);
        Int lo = base - span, hi = base + span + 1;
        auto inside = [&](const Int& x) {
            Rat dx = Rat(x) - mid;
            return dx * dx <= r;
        };
        while (lo <= hi && !inside(lo))
            ++lo;
        while (hi >= lo && !inside(hi))
            --hi;
        for (Int x = lo; x <= hi && !stop; ++x) {
            Rat dx = Rat(x) - mid;
            Rat left = rest - q[i][i] * dx * dx;
            if (left < 0)
                continue;
            c[i] = x;
            if (i == 0) {
                if (++visited > max_points)
                    throw Error(ErrorKind::enumeration_bound_exceeded, "lattice enumeration visited too many points");
                if (!visit(c, bound - left))
                    stop = true;
            } else {
                rec(i - 1, left);
            }
        }
        c[i] = 0;
    };
    rec(n - 1, bound);
}

}  // namespace steinitz
