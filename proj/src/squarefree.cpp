#include "steinitz/squarefree.hpp"

#include "steinitz/error.hpp"

namespace steinitz {

const char* to_string(SquarefreeStatus s)
{
    switch (s) {
    case SquarefreeStatus::squarefree: return "squarefree";
    case SquarefreeStatus::not_squarefree: return "not-squarefree";
    case SquarefreeStatus::unknown: return "unknown-beyond-bound";
    }
    return "unknown";
}

SquarefreeReport ideal_is_squarefree(const NumberField& K, const FractionalIdeal& I, const FactorOptions& opts)
{
    if (!I.is_integral())
        throw Error(ErrorKind::invalid_argument, "squarefree test needs an integral ideal");
    return ideal_is_squarefree(K, I, factor_integer(I.norm().get_num(), opts));
}

SquarefreeReport ideal_is_squarefree(const NumberField& K, const FractionalIdeal& I, const FactorResult& norm)
{
    if (!I.is_integral())
        throw Error(ErrorKind::invalid_argument, "squarefree test needs an integral ideal");
    SquarefreeReport rep;
    rep.norm_factorization = norm.factors;
    rep.unfactored = norm.unfactored;
    bool undecided = false;
    for (auto& pp : norm.factors) {
        if (pp.exponent < 2)
            continue;
        if (K.index() % pp.prime == 0 || !pp.prime.fits_ulong_p()) {
            undecided = true;
            continue;
        }
        // p^2 | N(I) may still come from distinct primes above p
        for (auto& P : factor_rational_prime(K, pp.prime)) {
            if (!ideal_contains(P.ideal, I))
                continue;
            FractionalIdeal P2 = ideal_mul(K, P.ideal, P.ideal);
            if (ideal_contains(P2, I)) {
                rep.status = SquarefreeStatus::not_squarefree;
                rep.witness = P;
                return rep;
            }
        }
    }
    if (undecided || !norm.complete()) {
        rep.status = SquarefreeStatus::unknown;
        return rep;
    }
    rep.status = SquarefreeStatus::squarefree;
    return rep;
}

}  // namespace steinitz
