#ifndef STEINITZ_SEARCH_HPP_
#define STEINITZ_SEARCH_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "steinitz/class_group.hpp"
#include "steinitz/error.hpp"
#include "steinitz/ideal.hpp"
#include "steinitz/kpoly.hpp"
#include "steinitz/squarefree.hpp"
#include "steinitz/wood_ring.hpp"

namespace steinitz {

/* ---- polynomial construction ------------------------------------------ */

/* Q(x) = (n x - a_1)(x - a_2)...(x - a_{n-1}), with n = a.size() + 1. */
KPoly build_q(const NumberField& K, const std::vector<Element>& a);

/* P(x) = b + integral_0^x Q; monic of degree n. */
KPoly build_p(const NumberField& K, const std::vector<Element>& a, const Element& b);

/* The linear factors c_i b + d_i of the discriminant product:
 * n^n b + n^n P_0(a_1/n) first, then b + P_0(a_i). */
struct LinearFactor {
    Element c;
    Element d;
};
std::vector<LinearFactor> delta_linear_factors(const NumberField& K, const std::vector<Element>& a);

/* Product formula value for the discriminant ideal generator. */
Element delta_product(const NumberField& K, const std::vector<Element>& a, const Element& b);
/* Res(P, Q) from the Sylvester matrix over K. */
Element delta_oracle(const NumberField& K, const std::vector<Element>& a, const Element& b);

/* ---- auxiliary primes ---------------------------------------------------- */

struct Gamma {
    Element gamma;
    PrimeIdeal prime;
};

/* Least principal prime (norm, then HNF) coprime to n(n-1), with its
 * least generator. */
Gamma find_gamma(const NumberField& K, const ClassGroupTable& G, unsigned n, const Int& scan_bound);

struct P1Data {
    PrimeIdeal prime;
    std::vector<Int> roots;  // roots of R' in F_p, ascending
    Element b1;               // gamma mod p1, least nonnegative lift
};

/* Whether R = x^n - gamma^(n-1) x + gamma is irreducible mod P and R' splits. */
bool lemma_prime_ok(const NumberField& K, const Element& gamma, unsigned n, const PrimeIdeal& P);

/* Roots of R' mod P and the lift of gamma, for a prime passing lemma_prime_ok. */
P1Data p1_data(const NumberField& K, const Element& gamma, unsigned n, const PrimeIdeal& P);

/* Degree-one primes P not dividing n! * avoid with lemma_prime_ok, in
 * canonical order, norm <= bound. */
std::vector<P1Data> list_p1(const NumberField& K, const Element& gamma, unsigned n,
                            const std::optional<FractionalIdeal>& avoid, const Int& bound);
P1Data find_p1(const NumberField& K, const Element& gamma, unsigned n, const FractionalIdeal& a, const Int& scan_bound);

/* Values P_{a',0}(a'_1/n), P_{a',0}(a'_2), ... over Q. */
std::vector<Rat> seed_values(const std::vector<Rat>& a_prime);

/* Random integer seed vector (mt19937_64) with pairwise distinct values. */
std::vector<Rat> find_distinct_seed(unsigned n, std::uint64_t seed, unsigned budget = 10000);

/* Degree-one prime avoiding n! * avoid and all denominators, with the seed
 * values pairwise distinct modulo it. */
PrimeIdeal find_p2(const NumberField& K, const std::vector<Rat>& a_prime, unsigned n, const FractionalIdeal& avoid,
                   const Int& scan_bound);

/* Residues r_2..r_{n-1} mod a outside the vanishing locus of
 * F = prod_i P_{(0, x_2, ..), 0}(x_i); all -1 is tried first. */
std::vector<Element> sz_select(const NumberField& K, const FractionalIdeal& a, unsigned n);

/* ---- congruence assembly ------------------------------------------------- */

struct TaggedCongruence {
    Congruence congruence;
    std::string tag;  // which requirement produced it
};

struct CongruenceSystem {
    std::vector<std::vector<TaggedCongruence>> per_variable;  // a_1 .. a_{n-1}
};

struct SearchContext {
    unsigned n = 0;
    PrimeIdeal a;
    Gamma gamma;
    P1Data p1;
    std::vector<Rat> a_prime;
    PrimeIdeal p2;
    std::vector<Element> sz_residues;  // r_2 .. r_{n-1}
    bool sz_used_minus_one = false;
};

CongruenceSystem congruence_system(const NumberField& K, const SearchContext& ctx);
std::vector<Element> solve_system(const NumberField& K, const CongruenceSystem& sys);

struct ConditionCheck {
    bool ok = true;
    std::string detail;
};

struct ConditionReport {
    std::array<ConditionCheck, 6> conditions;
    bool ok() const;
};

ConditionReport verify_conditions(const NumberField& K, const SearchContext& ctx, const std::vector<Element>& a,
                                  const std::optional<Element>& b2);

/* Least nonzero canonical representative b2 of a^2/a^3 with
 * n^n P_0(a_1/n) + n^n b2 not in a^3. */
Element choose_b2(const NumberField& K, const SearchContext& ctx, const std::vector<Element>& a);

/* ---- sieve ---------------------------------------------------------------- */

struct SieveOptions {
    Int box = Int(1000000000);   // |b| <= box, i.e. T2(b) <= box^2
    FactorOptions factor;
    unsigned workers = 1;
    double spot_check_rate = 0.05;
    std::uint64_t max_candidates = 2000000;
};

struct SieveStats {
    std::uint64_t candidates = 0;
    std::uint64_t not_squarefree = 0;
    std::uint64_t unknown = 0;
    std::uint64_t degenerate = 0;
    std::uint64_t spot_checks = 0;
    Rat last_t2 = 0;
};

struct SieveHit {
    Element b;
    Element delta;
    FractionalIdeal reduced;  // Delta * a^{-2}
    SquarefreeReport report;
};

/* The set T = b0 + a^3 p1 with b0 = b1 mod p1, b2 mod a^3. */
struct TSet {
    Element base;
    FractionalIdeal modulus;
};
TSet make_t(const NumberField& K, const SearchContext& ctx, const Element& b1, const Element& b2);

struct ShellPoint {
    Element b;
    Rat t2;
};

/* Elements of T with T2 in (lo, hi], sorted by (T2, coordinates). */
std::vector<ShellPoint> t_shell(const NumberField& K, const TSet& T, const Rat& lo, const Rat& hi);

/* Factored norm of prod (c_i b + d_i) divided by divisor_norm. */
FactorResult factored_norm(const NumberField& K, const std::vector<Element>& values, const Int& divisor_norm,
                           const FactorOptions& opts);

std::optional<SieveHit> sieve_b(const NumberField& K, const SearchContext& ctx, const std::vector<Element>& a,
                                const TSet& T, const SieveOptions& opts, SieveStats& stats);

/* ---- certificates --------------------------------------------------------- */

struct SearchCertificate {
    std::string field_name;
    std::vector<Int> polynomial;
    std::optional<RatMatrix> basis;
    unsigned n = 0;
    std::uint64_t seed = 0;
    Int box = 0;
    long target_class = 0;
    std::vector<long> class_group;  // cyclic orders
    PrimeIdeal a;
    Element gamma;
    PrimeIdeal p1;
    PrimeIdeal p2;
    Element b1;
    Element b2;
    std::vector<Rat> a_prime;
    std::vector<Element> avec;
    Element b;
    std::vector<Element> f;  // f_0 = 1, f_1, .., f_n
    Element delta;
    Factorization norm_factorization;  // of N(Delta a^-2)
    SieveStats stats;
    std::map<std::string, bool> flags;
};

const std::vector<std::string>& certificate_flag_names();

/* Recompute every flag from the raw certificate data. */
std::map<std::string, bool> compute_flags(const NumberField& K, const ClassGroupTable& G, const SearchCertificate& c);

struct EndToEndOptions {
    Int scan_bound = 5000;
    std::uint64_t seed = 1;
    SieveOptions sieve;
};

enum class Stage { target_ideal, gamma_p1, seed_p2, assembly, sieve, verify };
const char* to_string(Stage s);

/* An Error annotated with the pipeline stage that raised it. */
class StageError : public std::runtime_error {
  public:
    StageError(Stage s, ErrorKind kind, const std::string& msg);
    Stage stage() const { return stage_; }
    ErrorKind kind() const { return kind_; }
    SieveStats stats;

  private:
    Stage stage_;
    ErrorKind kind_;
};

SearchCertificate end_to_end(const NumberField& K, const ClassGroupTable& G, long target_class, unsigned n,
                             const EndToEndOptions& opts, SieveStats* stats_out = nullptr);

}  // namespace steinitz

#endif
