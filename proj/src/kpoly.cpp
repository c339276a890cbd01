#include "steinitz/kpoly.hpp"

#include "steinitz/error.hpp"

namespace steinitz::kpoly {

void trim(KPoly& a)
{
    while (!a.empty() && a.back().is_zero())
        a.pop_back();
}

int degree(const KPoly& a) { return static_cast<int>(a.size()) - 1; }

KPoly from_elements(std::vector<Element> coeffs)
{
    trim(coeffs);
    return coeffs;
}

KPoly add(const NumberField& K, const KPoly& a, const KPoly& b)
{
    KPoly r(std::max(a.size(), b.size()), K.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = r[i] + b[i];
    trim(r);
    return r;
}

KPoly sub(const NumberField& K, const KPoly& a, const KPoly& b)
{
    KPoly r(std::max(a.size(), b.size()), K.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = r[i] - b[i];
    trim(r);
    return r;
}

KPoly mul(const NumberField& K, const KPoly& a, const KPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    KPoly r(a.size() + b.size() - 1, K.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero())
                r[i + j] = r[i + j] + K.mul(a[i], b[j]);
    }
    trim(r);
    return r;
}

KPoly scale(const NumberField& K, const KPoly& a, const Element& s)
{
    KPoly r;
    for (auto& c : a)
        r.push_back(K.mul(c, s));
    trim(r);
    return r;
}

Element eval(const NumberField& K, const KPoly& a, const Element& x)
{
    Element acc = K.zero();
    for (std::size_t i = a.size(); i-- > 0;)
        acc = K.mul(acc, x) + a[i];
    return acc;
}

KPoly derivative(const NumberField&, const KPoly& a)
{
    KPoly r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(Int(static_cast<unsigned long>(i)) * a[i]);
    trim(r);
    return r;
}

KPoly integrate(const NumberField& K, const KPoly& a)
{
    KPoly r{K.zero()};
    for (std::size_t i = 0; i < a.size(); ++i)
        r.push_back(Rat(1, static_cast<unsigned long>(i + 1)) * a[i]);
    trim(r);
    return r;
}

bool is_integral(const KPoly& a)
{
    for (auto& c : a)
        if (!c.is_integral())
            return false;
    return true;
}

Element determinant(const NumberField& K, KMatrix m)
{
    std::size_t n = m.size();
    Element det = K.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero())
            ++piv;
        if (piv == n)
            return K.zero();
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = K.mul(det, m[col][col]);
        Element inv = K.inverse(m[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero())
                continue;
            Element factor = K.mul(m[r][col], inv);
            for (std::size_t c = col; c < n; ++c)
                m[r][c] = m[r][c] - K.mul(factor, m[col][c]);
        }
    }
    return det;
}

Element resultant(const NumberField& K, const KPoly& a, const KPoly& b)
{
    int m = degree(a), n = degree(b);
    if (m < 0 || n < 0)
        return K.zero();
    if (m == 0)
        return K.pow(a[0], static_cast<unsigned long>(n));
    if (n == 0)
        return K.pow(b[0], static_cast<unsigned long>(m));
    std::size_t size = static_cast<std::size_t>(m + n);
    KMatrix s(size, std::vector<Element>(size, K.zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s[n + i][i + j] = b[n - j];
    return determinant(K, std::move(s));
}

}  // namespace steinitz::kpoly
