#include "steinitz/matrix.hpp"

#include <utility>

#include "steinitz/error.hpp"

namespace steinitz {

namespace {

struct Row {
    IntVector v;
    IntVector u;
};

void axpy(IntVector& dst, const Int& k, const IntVector& src)
{
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] += k * src[i];
}

/* (x, y) <- (s x + t y, (a/g) y - (b/g) x) where a = x[c], b = y[c]. */
void gcd_combine(Row& x, Row& y, std::size_t c, bool track)
{
    Int a = x.v[c], b = y.v[c];
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    auto mix = [&](IntVector& p, IntVector& q) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            Int np = s * p[i] + t * q[i];
            Int nq = ag * q[i] - bg * p[i];
            p[i] = std::move(np);
            q[i] = std::move(nq);
        }
    };
    mix(x.v, y.v);
    if (track)
        mix(x.u, y.u);
}

IntMatrix echelon(std::vector<Row>& active, std::size_t cols, bool track,
                  const Int& modulus, IntMatrix* u_out, IntMatrix* kernel_out)
{
    IntMatrix h(cols);
    IntMatrix u(cols);
    for (std::size_t cc = cols; cc-- > 0;) {
        // pick the smallest nonzero entry as the starting pivot
        std::size_t piv = active.size();
        for (std::size_t r = 0; r < active.size(); ++r) {
            if (active[r].v[cc] == 0)
                continue;
            if (piv == active.size() || cmpabs(active[r].v[cc], active[piv].v[cc]) < 0)
                piv = r;
        }
        if (piv == active.size())
            throw Error(ErrorKind::zero_ideal, "hnf: rows do not span a full-rank lattice");
        std::swap(active[piv], active.back());
        Row& p = active.back();
        for (std::size_t r = 0; r + 1 < active.size(); ++r) {
            if (active[r].v[cc] == 0)
                continue;
            gcd_combine(p, active[r], cc, track);
            if (modulus != 0) {
                for (std::size_t j = 0; j < cc; ++j) {
                    mpz_fdiv_r(active[r].v[j].get_mpz_t(), active[r].v[j].get_mpz_t(), modulus.get_mpz_t());
                    mpz_fdiv_r(p.v[j].get_mpz_t(), p.v[j].get_mpz_t(), modulus.get_mpz_t());
                }
            }
        }
        if (p.v[cc] < 0) {
            for (auto& x : p.v)
                x = -x;
            for (auto& x : p.u)
                x = -x;
        }
        h[cc] = std::move(p.v);
        h[cc].resize(cols);
        u[cc] = std::move(p.u);
        active.pop_back();
    }
    // reduce entries below the pivots
    for (std::size_t k = 1; k < cols; ++k) {
        for (std::size_t i = k; i-- > 0;) {
            Int q = floor_div(h[k][i], h[i][i]);
            if (q == 0)
                continue;
            axpy(h[k], -q, h[i]);
            if (track)
                axpy(u[k], -q, u[i]);
        }
    }
    if (u_out)
        *u_out = std::move(u);
    if (kernel_out) {
        kernel_out->clear();
        for (auto& r : active)
            kernel_out->push_back(r.u);
    }
    return h;
}

}  // namespace

IntMatrix hnf(IntMatrix rows, std::size_t cols, const Int& modulus)
{
    std::vector<Row> active;
    active.reserve(rows.size() + cols);
    for (auto& r : rows) {
        r.resize(cols);
        active.push_back({std::move(r), {}});
    }
    if (modulus != 0) {
        for (std::size_t j = 0; j < cols; ++j) {
            IntVector e(cols, Int(0));
            e[j] = abs(modulus);
            active.push_back({std::move(e), {}});
        }
    }
    return echelon(active, cols, false, abs(modulus), nullptr, nullptr);
}

HnfTransform hnf_with_transform(const IntMatrix& rows, std::size_t cols)
{
    std::vector<Row> active;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        Row w;
        w.v = rows[r];
        w.v.resize(cols);
        w.u.assign(rows.size(), Int(0));
        w.u[r] = 1;
        active.push_back(std::move(w));
    }
    HnfTransform out;
    out.h = echelon(active, cols, true, Int(0), &out.u, &out.kernel);
    return out;
}

IntVector hnf_reduce(const IntMatrix& h, IntVector v)
{
    for (std::size_t i = h.size(); i-- > 0;) {
        Int q = floor_div(v[i], h[i][i]);
        if (q != 0)
            axpy(v, -q, h[i]);
    }
    return v;
}

std::optional<IntVector> hnf_solve(const IntMatrix& h, const IntVector& v_in)
{
    IntVector v = v_in;
    IntVector c(h.size());
    for (std::size_t i = h.size(); i-- > 0;) {
        if (!mpz_divisible_p(v[i].get_mpz_t(), h[i][i].get_mpz_t()))
            return std::nullopt;
        c[i] = v[i] / h[i][i];
        if (c[i] != 0)
            axpy(v, -c[i], h[i]);
    }
    return c;
}

Rat determinant(RatMatrix m)
{
    std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0)
                continue;
            Rat f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j)
                m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

RatMatrix inverse(RatMatrix m)
{
    std::size_t n = m.size();
    RatMatrix inv = identity_rat(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0)
            ++piv;
        if (piv == n)
            throw Error(ErrorKind::invalid_argument, "inverse: singular matrix");
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        Rat d = m[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0)
                continue;
            Rat f = m[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

RatMatrix transpose(const RatMatrix& m)
{
    if (m.empty())
        return {};
    RatMatrix t(m[0].size(), RatVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b)
{
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMatrix c(n, RatVector(m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

RatMatrix to_rat(const IntMatrix& m)
{
    RatMatrix r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (auto& x : m[i])
            r[i].push_back(Rat(x));
    return r;
}

RatMatrix identity_rat(std::size_t n)
{
    RatMatrix m(n, RatVector(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

RatVector row_times(const RatVector& v, const RatMatrix& m)
{
    std::size_t cols = m.empty() ? 0 : m[0].size();
    RatVector out(cols, Rat(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        for (std::size_t j = 0; j < cols; ++j)
            out[j] += v[i] * m[i][j];
    }
    return out;
}

SmithForm smith_form(IntMatrix a)
{
    std::size_t r = a.size();
    std::size_t c = r == 0 ? 0 : a[0].size();
    SmithForm out;
    out.v.assign(c, IntVector(c, Int(0)));
    out.v_inverse = out.v;
    for (std::size_t i = 0; i < c; ++i)
        out.v[i][i] = out.v_inverse[i][i] = 1;

    auto col_add = [&](std::size_t dst, std::size_t src, const Int& k) {
        // col_dst += k col_src
        for (std::size_t i = 0; i < r; ++i)
            a[i][dst] += k * a[i][src];
        for (std::size_t i = 0; i < c; ++i)
            out.v[i][dst] += k * out.v[i][src];
        for (std::size_t j = 0; j < c; ++j)
            out.v_inverse[src][j] -= k * out.v_inverse[dst][j];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        if (x == y)
            return;
        for (std::size_t i = 0; i < r; ++i)
            std::swap(a[i][x], a[i][y]);
        for (std::size_t i = 0; i < c; ++i)
            std::swap(out.v[i][x], out.v[i][y]);
        std::swap(out.v_inverse[x], out.v_inverse[y]);
    };
    auto col_negate = [&](std::size_t x) {
        for (std::size_t i = 0; i < r; ++i)
            a[i][x] = -a[i][x];
        for (std::size_t i = 0; i < c; ++i)
            out.v[i][x] = -out.v[i][x];
        for (auto& e : out.v_inverse[x])
            e = -e;
    };
    auto row_add = [&](std::size_t dst, std::size_t src, const Int& k) {
        for (std::size_t j = 0; j < c; ++j)
            a[dst][j] += k * a[src][j];
    };

    std::size_t lim = std::min(r, c);
    for (std::size_t t = 0; t < lim; ++t) {
        for (;;) {
            // bring the smallest nonzero entry of the trailing block to (t, t)
            std::size_t bi = r, bj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (a[i][j] != 0 && (bi == r || cmpabs(a[i][j], a[bi][bj]) < 0)) {
                        bi = i;
                        bj = j;
                    }
            if (bi == r)
                break;
            std::swap(a[t], a[bi]);
            col_swap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a[i][t] == 0)
                    continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                row_add(i, t, -q);
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a[t][j] == 0)
                    continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                col_add(j, t, -q);
                if (a[t][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            bool divisible = true;
            for (std::size_t i = t + 1; i < r && divisible; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        row_add(t, i, Int(1));
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (a[t][t] < 0)
            col_negate(t);
    }
    for (std::size_t t = 0; t < lim; ++t)
        out.diagonal.push_back(a[t][t]);
    return out;
}

}  // namespace steinitz
