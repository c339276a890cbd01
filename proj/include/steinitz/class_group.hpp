#ifndef STEINITZ_CLASS_GROUP_HPP_
#define STEINITZ_CLASS_GROUP_HPP_

#include <optional>
#include <vector>

#include "steinitz/ideal.hpp"
#include "steinitz/number_field.hpp"

namespace steinitz {

/* Coordinates of a class with respect to the cyclic factors (reduced). */
using ClassVector = std::vector<long>;

struct PrincipalityOptions {
    /* Generators are searched with T2 <= slack * d * N^(2/d) when no exact
     * bound is known for the field. */
    long slack = 16;
    std::uint64_t max_points = 2000000;
};

/* Gram matrix of T2 over the integral basis; rationalized from the
 * floating embedding data when the field has no exact form. */
RatMatrix t2_form(const NumberField& K);

/* Least generator (T2, then coordinates) of a principal ideal, or nullopt.
 * Exhaustive for Q and imaginary quadratic fields; elsewhere the search
 * radius is the heuristic bound of PrincipalityOptions. */
std::optional<Element> principal_generator(const NumberField& K, const FractionalIdeal& I,
                                           const PrincipalityOptions& opts = {});

struct ClassGroupTable {
    std::vector<long> cyclic_orders;  // each > 1 and dividing the next
    std::vector<PrimeIdeal> factor_base;
    std::vector<ClassVector> factor_base_classes;
    /* representatives[index] is an integral ideal in class `index`. */
    std::vector<FractionalIdeal> representatives;
    /* Inverse of each representative, cached for class_of. */
    std::vector<FractionalIdeal> inverse_representatives;
    double minkowski_bound = 0;
    PrincipalityOptions principality;

    long order() const;
    ClassVector zero() const { return ClassVector(cyclic_orders.size(), 0); }
    long index_of(const ClassVector& v) const;
    ClassVector vector_of(long index) const;
    ClassVector add(const ClassVector& a, const ClassVector& b) const;
    ClassVector negate(const ClassVector& a) const;
    ClassVector scale(const ClassVector& a, long k) const;
};

double minkowski_bound(const NumberField& K);

/* Class group from the primes below the Minkowski bound, with relations
 * from (p) and from small elements; every nonzero class is checked to be
 * non-principal.  Throws enumeration_bound_exceeded when the Minkowski
 * bound exceeds `enumeration_bound`. */
ClassGroupTable class_group(const NumberField& K, double enumeration_bound = 1000, const PrincipalityOptions& opts = {});

ClassVector class_of(const NumberField& K, const ClassGroupTable& G, const FractionalIdeal& I);

struct PrimeScanConstraints {
    std::optional<FractionalIdeal> coprime_to;
    Int min_norm = 0;      // strict lower bound
    Int scan_bound = 5000;  // largest rational prime examined
    bool degree_one_only = false;
};

/* Least prime (norm, then HNF order) in the target class satisfying the
 * constraints; scan_exhausted when none is found below the bound. */
PrimeIdeal pick_prime_in_class(const NumberField& K, const ClassGroupTable& G, const ClassVector& target,
                               const PrimeScanConstraints& c);

}  // namespace steinitz

#endif
