#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arakelov/field.hpp"
#include "arakelov/linalg.hpp"

namespace arakelov {

/* Fractional ideal (1/d) * H with H an integer HNF over the power basis.
 * The representation is canonical: gcd(content(H), d) = 1, so two ideals
 * are equal iff their fields, numerators and denominators are equal. */
class FractionalIdeal {
  public:
    FractionalIdeal(Field field, IntMatrix numerator, mpz_class denominator);

    /* Ideal spanned (over Z) by the given rows; rows must span a full-rank module. */
    static FractionalIdeal from_generators(const Field& field, const RatMatrix& rows);

    const Field& field() const { return field_; }
    const IntMatrix& numerator() const { return num_; }
    const mpz_class& denominator() const { return den_; }

    RatMatrix basis() const;
    std::vector<FieldElement> basis_elements() const;

    /* [O_K : A] for integral A, extended multiplicatively */
    mpq_class norm() const;
    bool is_integral() const { return den_ == 1; }
    bool contains(const FieldElement& x) const;
    /* this is a subset of o */
    bool subset_of(const FractionalIdeal& o) const;

    bool operator==(const FractionalIdeal& o) const;
    std::string to_string() const;

  private:
    Field field_;
    IntMatrix num_;
    mpz_class den_;
};

FractionalIdeal unit_ideal(const Field& f);
FractionalIdeal principal(const FieldElement& gamma);

FractionalIdeal ideal_mul(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_pow(const FractionalIdeal& a, long k);
FractionalIdeal ideal_inverse(const FractionalIdeal& a);
FractionalIdeal conj(const FractionalIdeal& a);

/* A^{-1} = D_K * tracedual(conj A): the inverse by way of trace duality */
FractionalIdeal ideal_inverse_by_duality(const FractionalIdeal& a);

/* Matrix of (x, y) -> Tr(alpha * x * conj(y)) on the power basis. */
RatMatrix form_matrix(const FieldElement& alpha);
/* Gram matrix of the basis of A under the same form. */
RatMatrix gram_matrix(const FractionalIdeal& a, const FieldElement& alpha);

/* det(gram_matrix(a, alpha)) = N(a)^2 det(form_matrix(alpha)), avoiding the
 * large entries of the HNF Gram matrix. */
mpq_class gram_determinant(const FractionalIdeal& a, const FieldElement& alpha);

/* {x : Tr(alpha x conj(y)) in Z for all y in A}; alpha totally positive. */
FractionalIdeal trace_dual(const FractionalIdeal& a, const FieldElement& alpha);

FractionalIdeal codifferent(const Field& f);
FractionalIdeal different(const Field& f);

/* J_p: the product of the primes above a ramified p, each to exponent 1. */
FractionalIdeal radical_above(const Field& f, long p);

/* J_p^k for any integer k, reduced through J_p^{e_p} = (p). */
FractionalIdeal radical_power(const Field& f, long p, long k);

/* A generator of J_p when it is known to be principal: 1 - zeta_{p^r} in
 * Q(zeta_n), 2 - 2cos(2pi/p^r) in Q(zeta_{p^r} + zeta_{p^r}^{-1}). */
std::optional<FieldElement> radical_generator(const Field& f, long p);

/* Contraction O_K cap A of an ideal of Q(zeta_n) to Q(zeta_n + zeta_n^{-1}). */
FractionalIdeal contract(const FractionalIdeal& ambient_ideal, const Field& real_subfield);

/* Common exponent of the primes above p in D_K, from closed formulas. */
long different_valuation(const Field& f, long p);

/* Common exponent of the primes above p in A. Throws Unsupported when A
 * is not of the form J_p^k * B with B coprime to p. */
long valuation(const FractionalIdeal& a, long p);

/* Formal product of radical powers and principal powers.
 * Text form: factors joined by '*', each P<p>[^k] or (c0,c1,...)[^k];
 * "1" or "" is the unit ideal. */
struct IdealRecipe {
    struct Factor {
        long prime = 0;                   // radical J_p when nonzero
        std::vector<mpq_class> element;   // principal generator otherwise
        long exponent = 1;
    };
    std::vector<Factor> factors;

    static IdealRecipe parse(std::string_view text);
    static IdealRecipe radicals(const std::vector<std::pair<long, long>>& exps);
    std::string format() const;
    long exponent_of(long p) const;
    bool operator==(const IdealRecipe& o) const;
};

FractionalIdeal realize(const IdealRecipe& recipe, const Field& f);

}  // namespace arakelov
