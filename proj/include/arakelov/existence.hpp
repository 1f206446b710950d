#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arakelov/field.hpp"
#include "arakelov/ideal.hpp"

namespace arakelov {

/* (I, alpha) with I = beta I^* and level = beta * conj(beta). */
struct ConstructionWitness {
    long level = 1;
    FieldElement beta;
    FieldElement alpha;
    IdealRecipe ideal;
};

struct ExistenceVerdict {
    Field field;
    bool trace_type = true;
    std::vector<long> levels;   // increasing
    std::map<long, std::optional<ConstructionWitness>> witnesses;
    std::string rule;

    bool admits(long level) const;
};

struct OmegaSets {
    std::vector<long> omega;         // ramified primes
    std::vector<long> omega_even;    // those with even ramification index
};

OmegaSets omega_sets(const Field& f);

/* Witness construction is the expensive part for large fields: with
 * witnesses off only the level sets are computed, with check off the
 * witnesses are built but their ideal identity is not re-derived. */
struct ExistenceOptions {
    bool witnesses = true;
    bool check = true;
};

ExistenceVerdict mod_quadratic(const Field& f, const ExistenceOptions& opt = {});
ExistenceVerdict mod_prime_power(long p, long r, bool trace_type, const ExistenceOptions& opt = {});
ExistenceVerdict mod_nonprimepower_trace(long n, const ExistenceOptions& opt = {});
ExistenceVerdict mod_odd_degree(const Field& f, const ExistenceOptions& opt = {});

/* Dispatch to the classifier for the field. Quadratic fields and
 * realcyclo:n with n not a prime power only have a trace type
 * classification; the verdict returned for them has trace_type set. */
ExistenceVerdict classify(const Field& f, bool trace_type, const ExistenceOptions& opt = {});

/* ell divides the product of Omega', and ell = 1 in odd degree. */
bool check_level_bound(const Field& f, long level);

/* Solve I I-bar = alpha^{-1} beta D_K^{-1} over the radicals: the exponent at
 * p is (v_p(beta) - v_p(alpha) - v_p(D_K)) / 2 with v_p(beta) taken from
 * beta^2 = level up to units. alpha_valuation lists v_p(alpha) where nonzero.
 * nullopt when some exponent is not an integer. */
std::optional<IdealRecipe> solve_ideal(const Field& f, long level, const std::map<long, long>& alpha_valuation);

/* Exact check of the witness invariants; throws InternalInconsistency. */
void check_witness(const ConstructionWitness& w);

/* v_p(alpha^{-1} beta D_K^{-1}) at each ramified p, from ideal arithmetic. */
std::map<long, long> witness_valuations(const FieldElement& alpha, const FieldElement& beta);

/* (l2 I, alpha / l2) of level l1 * l2^2. CM fields need gcd(l2, l1) = 1. */
ConstructionWitness rescale(const ConstructionWitness& w, long l2);

}  // namespace arakelov
