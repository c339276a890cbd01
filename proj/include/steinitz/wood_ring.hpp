#ifndef STEINITZ_WOOD_RING_HPP_
#define STEINITZ_WOOD_RING_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "steinitz/class_group.hpp"
#include "steinitz/ideal.hpp"
#include "steinitz/number_field.hpp"

namespace steinitz {

/* f(x, y) = f_0 x^n + f_1 x^(n-1) y + ... + f_n y^n over O_K. */
struct BinaryForm {
    std::vector<Element> coeffs;  // f_0 .. f_n
    std::size_t degree() const { return coeffs.size() - 1; }
    const Element& operator[](std::size_t i) const { return coeffs[i]; }
};

/* Throws invalid_argument when n < 2 or a coefficient is not integral. */
BinaryForm make_form(std::vector<Element> coeffs);

/* R = c_0 e_0 + ... + c_{n-1} e_{n-1} with e_i e_j = sum_k c_ijk e_k. */
struct RankNRing {
    std::size_t n = 0;
    std::vector<FractionalIdeal> ideals;
    std::vector<Element> constants;  // index (i * n + j) * n + k

    const Element& at(std::size_t i, std::size_t j, std::size_t k) const { return constants[(i * n + j) * n + k]; }
    Element& at(std::size_t i, std::size_t j, std::size_t k) { return constants[(i * n + j) * n + k]; }
};

/* Wood's multiplication table of f, all coefficient ideals O_K. */
RankNRing build_rf(const NumberField& K, const BinaryForm& f);

struct ClosureReport {
    bool fn1_in_a = false;  // f_{n-1} in a
    bool fn_in_a2 = false;  // f_n in a^2
    bool ok() const { return fn1_in_a && fn_in_a2; }
};

ClosureReport closure_obstruction(const NumberField& K, const BinaryForm& f, const FractionalIdeal& a);

/* Same table with the last coefficient ideal replaced by a^{-1}; throws
 * closure_obstruction naming the failed membership. */
RankNRing build_rf_a(const NumberField& K, const BinaryForm& f, const FractionalIdeal& a);

struct AxiomReport {
    bool ok = true;
    std::string failure;  // identity, commutativity, associativity or module
    std::array<std::size_t, 3> witness{0, 0, 0};
};

AxiomReport ring_axioms_check(const NumberField& K, const RankNRing& R);

/* det Tr(e_i e_j), an element of K. */
Element trace_form_determinant(const NumberField& K, const RankNRing& R);

/* (det Tr(e_i e_j)) * prod c_i^2, or nullopt when the trace form is degenerate. */
std::optional<FractionalIdeal> ring_discriminant(const NumberField& K, const RankNRing& R);

FractionalIdeal coefficient_product(const NumberField& K, const RankNRing& R);
ClassVector steinitz_class(const NumberField& K, const ClassGroupTable& G, const RankNRing& R);

struct OracleReport {
    bool ok = true;
    std::array<std::size_t, 3> witness{0, 0, 0};
};

/* Compares the table of R against O_K[x]/(f(x,1)) in the basis
 * zeta_0 = 1, zeta_k = sum_{m<k} f_m x^(k-m); f must have f_0 = 1. */
OracleReport monic_oracle(const NumberField& K, const BinaryForm& f, const RankNRing& R);

/* class(Disc R) == 2 * steinitz_class(R). */
bool hecke_check(const NumberField& K, const ClassGroupTable& G, const RankNRing& R);

}  // namespace steinitz

#endif
