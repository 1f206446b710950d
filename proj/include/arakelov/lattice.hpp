#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arakelov/existence.hpp"
#include "arakelov/field.hpp"
#include "arakelov/ideal.hpp"
#include "arakelov/linalg.hpp"

namespace arakelov {

/* (I, b_alpha) with b_alpha(x, y) = Tr(alpha x conj(y)); gram is taken on
 * the HNF basis of I. */
struct IdealLattice {
    FractionalIdeal ideal;
    FieldElement alpha;
    RatMatrix gram;

    const Field& field() const { return ideal.field(); }
    std::size_t dimension() const { return gram.rows(); }
};

/* Throws FormError unless alpha is totally positive. */
IdealLattice build_lattice(const FractionalIdeal& ideal, const FieldElement& alpha);

/* Rows: the basis of I under the twisted embedding (see twisted_embedding). */
EmbeddingMatrix generator_matrix(const IdealLattice& lat, mpfr_prec_t bits);

/* The lattice on trace_dual(I, alpha) with the same alpha. */
IdealLattice dual(const IdealLattice& lat);

struct ThetaTerm {
    mpq_class norm;
    std::uint64_t count = 0;
};

struct MinimumResult {
    mpq_class minimum;
    std::uint64_t kissing = 0;   // both signs counted
};

/* Exact minimum of a positive definite form: LLL, then Fincke-Pohst with
 * the bound shrinking to the least norm found. */
MinimumResult minimum(const RatMatrix& gram);

/* Number of vectors of each norm <= bound, including (0, 1). */
std::vector<ThetaTerm> theta_prefix(const RatMatrix& gram, const mpq_class& bound);

struct LatticeReport {
    std::size_t dimension = 0;
    mpq_class determinant;
    bool integral = false;
    bool even = false;
    std::optional<MinimumResult> minimum;
    std::vector<ThetaTerm> theta;
    std::optional<long> level;
    bool witness_checked = false;
};

struct ReportOptions {
    bool minimum = true;
    std::optional<mpq_class> theta_bound;
};

/* Invariants of the lattice alone; level stays empty. */
LatticeReport describe(const IdealLattice& lat, const ReportOptions& opt = {});

/* Checks, in this order and exactly:
 *   (i)   beta * conj(beta) = level
 *   (ii)  beta * trace_dual(I, alpha) = I
 *   (iii) I is contained in its dual, i.e. the lattice is integral
 *   (iv)  det(gram) = level^{dim/2}
 * and throws ModularityFailure naming the first clause that fails. */
LatticeReport verify_modularity(const IdealLattice& lat, const ConstructionWitness& w, const ReportOptions& opt = {});

}  // namespace arakelov
