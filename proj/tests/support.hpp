#ifndef STEINITZ_TESTS_SUPPORT_HPP_
#define STEINITZ_TESTS_SUPPORT_HPP_

#include <initializer_list>
#include <string>

#include "oracles.hpp"
#include "steinitz/class_group.hpp"
#include "steinitz/number_field.hpp"
#include "steinitz/serialize.hpp"

namespace testing {

using namespace steinitz;

inline FieldPtr field_from(std::initializer_list<long> poly)
{
    std::vector<Int> g;
    for (long c : poly)
        g.push_back(Int(c));
    return make_field(g);
}

// The desk-scale fields used throughout: Q, Q(sqrt -5), Q(cbrt 2), Q(i).
inline const NumberField& Q()
{
    static FieldPtr K = field_from({-1, 1});
    return *K;
}
inline const NumberField& M5()
{
    static FieldPtr K = field_from({5, 0, 1});
    return *K;
}
inline const NumberField& C2()
{
    static FieldPtr K = field_from({-2, 0, 0, 1});
    return *K;
}
inline const NumberField& QI()
{
    static FieldPtr K = field_from({1, 0, 1});
    return *K;
}

inline const ClassGroupTable& group_of(const NumberField& K)
{
    static const ClassGroupTable gq = class_group(Q());
    static const ClassGroupTable gm5 = class_group(M5());
    static const ClassGroupTable gc2 = class_group(C2());
    static const ClassGroupTable gi = class_group(QI());
    if (&K == &Q())
        return gq;
    if (&K == &M5())
        return gm5;
    if (&K == &C2())
        return gc2;
    return gi;
}

inline Element el(const NumberField& K, std::initializer_list<long> coords)
{
    Element x(K.degree());
    std::size_t i = 0;
    for (long c : coords)
        x.num[i++] = c;
    return x;
}

inline std::string field_file(const std::string& name) { return std::string(STEINITZ_DATA_DIR) + "/fields/" + name; }

// x + y sqrt(-5) in Q(sqrt -5) reduced at the degree-one prime with HNF
// rows (p, 0), (c, 1): sqrt(-5) = -c there.
inline std::int64_t reduce_m5(const Element& x, const FractionalIdeal& P)
{
    std::int64_t p = P.hnf[0][0].get_si();
    Int c = P.hnf[1][0];
    return oracle::mod(Int(x.num[0] - x.num[1] * c), p);
}

}  // namespace testing

#endif
