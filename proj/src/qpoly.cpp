#include "steinitz/qpoly.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "steinitz/error.hpp"
#include "steinitz/finite_field.hpp"
#include "steinitz/matrix.hpp"

namespace steinitz::qpoly {

void trim(QPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

int degree(const QPoly& a)
{
    return static_cast<int>(a.size()) - 1;
}

QPoly add(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    trim(r);
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    trim(r);
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b)
{
    if (b.empty())
        throw Error(ErrorKind::invalid_argument, "qpoly::divmod by zero");
    QPoly r = a;
    trim(r);
    if (r.size() < b.size())
        return {{}, r};
    QPoly q(r.size() - b.size() + 1, Rat(0));
    for (std::size_t k = r.size(); k-- >= b.size();) {
        if (r[k] == 0)
            continue;
        Rat c = r[k] / b.back();
        std::size_t shift = k - (b.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[shift + j] -= c * b[j];
    }
    trim(q);
    trim(r);
    return {q, r};
}

QPoly derivative(const QPoly& a)
{
    QPoly r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(a[i] * static_cast<unsigned long>(i));
    trim(r);
    return r;
}

Rat eval(const QPoly& a, const Rat& x)
{
    Rat acc = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        acc = acc * x + a[i];
    return acc;
}

QPoly gcd(QPoly a, QPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lc = a.back();
        for (auto& c : a)
            c /= lc;
    }
    return a;
}

Rat resultant(const QPoly& a, const QPoly& b)
{
    int m = degree(a), n = degree(b);
    if (m < 0 || n < 0)
        return 0;
    if (m == 0)
        return pow_int(a[0].get_num(), static_cast<unsigned long>(n)) /
               Rat(pow_int(a[0].get_den(), static_cast<unsigned long>(n)));
    if (n == 0)
        return pow_int(b[0].get_num(), static_cast<unsigned long>(m)) /
               Rat(pow_int(b[0].get_den(), static_cast<unsigned long>(m)));
    std::size_t size = static_cast<std::size_t>(m + n);
    RatMatrix s(size, RatVector(size, Rat(0)));
    // rows: n shifted copies of a, m shifted copies of b (leading coefficient first)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s[n + i][i + j] = b[n - j];
    return determinant(std::move(s));
}

Rat discriminant(const QPoly& a)
{
    int n = degree(a);
    if (n < 1)
        throw Error(ErrorKind::invalid_argument, "discriminant of a constant");
    Rat r = resultant(a, derivative(a)) / a.back();
    if ((n * (n - 1) / 2) % 2 == 1)
        r = -r;
    return r;
}

namespace {

int sign_changes(const std::vector<int>& signs)
{
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int count_real_roots(const QPoly& a_in)
{
    QPoly a = a_in;
    trim(a);
    if (degree(a) < 1)
        return 0;
    std::vector<QPoly> seq{a, derivative(a)};
    while (!seq.back().empty()) {
        QPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        for (auto& c : r)
            c = -c;
        if (r.empty())
            break;
        seq.push_back(r);
    }
    std::vector<int> at_neg, at_pos;
    for (auto& p : seq) {
        int lc = sgn(p.back());
        at_pos.push_back(lc);
        at_neg.push_back(degree(p) % 2 == 0 ? lc : -lc);
    }
    return sign_changes(at_neg) - sign_changes(at_pos);
}

std::vector<std::complex<long double>> complex_roots(const QPoly& a_in)
{
    using C = std::complex<long double>;
    QPoly a = a_in;
    trim(a);
    int n = degree(a);
    std::vector<C> roots;
    if (n < 1)
        return roots;
    std::vector<long double> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = static_cast<long double>(a[i].get_d()) / static_cast<long double>(a.back().get_d());
    long double bound = 0;
    for (int i = 0; i < n; ++i)
        bound = std::max(bound, std::fabs(c[i]));
    bound += 1;
    for (int k = 0; k < n; ++k) {
        long double ang = 2 * M_PIl * k / n + 0.4L;
        roots.push_back(std::polar(bound * 0.9L, ang));
    }
    auto eval_both = [&](C z, C& val, C& der) {
        val = 0;
        der = 0;
        for (int i = n; i >= 0; --i) {
            der = der * z + val;
            val = val * z + c[i];
        }
    };
    for (int iter = 0; iter < 2000; ++iter) {
        long double max_step = 0;
        for (int k = 0; k < n; ++k) {
            C val, der;
            eval_both(roots[k], val, der);
            if (std::abs(val) == 0)
                continue;
            C ratio = val / der;
            C sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    sum += 1.0L / (roots[k] - roots[j]);
            C step = ratio / (1.0L - ratio * sum);
            roots[k] -= step;
            max_step = std::max(max_step, std::abs(step) / (1 + std::abs(roots[k])));
        }
        if (max_step < 1e-18L)
            break;
    }
    return roots;
}

namespace {

std::set<int> subset_sums(const std::vector<int>& degs)
{
    std::set<int> sums{0};
    for (int d : degs) {
        std::set<int> next = sums;
        for (int s : sums)
            next.insert(s + d);
        sums = std::move(next);
    }
    return sums;
}

bool divides_exactly(const QPoly& f, const QPoly& g)
{
    return divmod(f, g).second.empty();
}

}  // namespace

bool is_irreducible_over_q(const QPoly& a_in)
{
    QPoly a = a_in;
    trim(a);
    int n = degree(a);
    if (n < 1)
        return false;
    if (n == 1)
        return true;
    if (degree(gcd(a, derivative(a))) > 0)
        return false;

    Rat disc = discriminant(a);
    std::set<int> allowed;
    for (int k = 1; k < n; ++k)
        allowed.insert(k);
    unsigned used = 0;
    for (std::uint64_t p : primes_up_to(2000)) {
        if (used >= 40 || allowed.empty())
            break;
        Int pz(static_cast<unsigned long>(p));
        if (mpz_divisible_p(disc.get_num_mpz_t(), pz.get_mpz_t()))
            continue;
        ++used;
        auto F = FiniteField::prime_field(p);
        FqPoly ap;
        for (auto& c : a)
            ap.push_back(F.from_int(Int(c.get_num())));
        std::vector<int> degs;
        for (auto& [fac, e] : fq::factor(F, ap))
            for (unsigned i = 0; i < e; ++i)
                degs.push_back(fq::degree(fac));
        auto sums = subset_sums(degs);
        std::set<int> keep;
        for (int k : allowed)
            if (sums.count(k))
                keep.insert(k);
        allowed = std::move(keep);
    }
    if (allowed.empty())
        return true;

    // try to recombine complex roots into an integer factor
    auto roots = complex_roots(a);
    for (int k : allowed) {
        if (2 * k > n)
            continue;
        std::vector<int> pick(static_cast<std::size_t>(n), 0);
        std::fill(pick.end() - k, pick.end(), 1);
        do {
            std::vector<std::complex<long double>> prod{1.0L};
            for (int i = 0; i < n; ++i) {
                if (!pick[i])
                    continue;
                std::vector<std::complex<long double>> next(prod.size() + 1, 0.0L);
                for (std::size_t j = 0; j < prod.size(); ++j) {
                    next[j + 1] += prod[j];
                    next[j] -= prod[j] * roots[i];
                }
                prod = std::move(next);
            }
            QPoly cand;
            bool ok = true;
            for (auto& z : prod) {
                long double re = std::round(z.real());
                if (std::fabs(z.imag()) > 1e-6L * (1 + std::fabs(z.real())) ||
                    std::fabs(z.real() - re) > 1e-6L * (1 + std::fabs(re))) {
                    ok = false;
                    break;
                }
                Int v;
                mpz_set_d(v.get_mpz_t(), static_cast<double>(re));
                cand.push_back(Rat(v));
            }
            if (ok && divides_exactly(a, cand))
                return false;
        } while (std::next_permutation(pick.begin(), pick.end()));
    }
    return true;
}

}  // namespace steinitz::qpoly
