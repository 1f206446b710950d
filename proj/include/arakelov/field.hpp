#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "arakelov/bigfloat.hpp"
#include "arakelov/linalg.hpp"

namespace arakelov {

enum class FieldKind { real_quadratic, imag_quadratic, cyclotomic, real_cyclotomic };

class NumberField;
using Field = std::shared_ptr<const NumberField>;

/* One of the supported fields, presented by the monic minimal polynomial
 * of a generator theta with O_K = Z[theta]:
 *
 *   real_quadratic(d)   theta = sqrt(d), or (1+sqrt(d))/2 when d = 1 mod 4
 *   imag_quadratic(d)   theta = sqrt(-d), or (1+sqrt(-d))/2 when d = 3 mod 4
 *   cyclotomic(n)       theta = zeta_n
 *   real_cyclotomic(n)  theta = zeta_n + zeta_n^{-1}
 *
 * Instances are immutable and shared; two fields are the same field iff
 * their spec() strings agree.
 */
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    /* Field-spec grammar: quad:+<d> | quad:-<d> | cyclo:<n> | realcyclo:<n> */
    static Field parse(std::string_view spec);
    static Field make(FieldKind kind, long parameter);

    FieldKind kind() const { return kind_; }
    long parameter() const { return param_; }
    std::size_t degree() const { return degree_; }
    const std::string& spec() const { return spec_; }
    bool is_cm() const { return kind_ == FieldKind::imag_quadratic || kind_ == FieldKind::cyclotomic; }
    bool is_totally_real() const { return !is_cm(); }

    /* ramified primes p with ramification index e_p > 1 */
    const std::map<long, int>& ramification() const { return ramification_; }

    /* The data below is computed on first use. */

    /* coefficients f_0 .. f_deg of the monic minimal polynomial of theta */
    const std::vector<mpz_class>& minimal_polynomial() const;

    /* Tr(theta^k) for 0 <= k <= 2*deg - 2 */
    const std::vector<mpz_class>& power_traces() const;

    /* Tr(theta^i * theta^j): the trace form on the power basis */
    const IntMatrix& trace_form() const;

    /* row i: coordinates of conj(theta^i) */
    const IntMatrix& conjugation() const;

    /* Q(zeta_n) for real_cyclotomic(n); null otherwise */
    const Field& ambient() const;

    /* row i: coordinates of (zeta + zeta^{-1})^i in the ambient field */
    const IntMatrix& lift_matrix() const;

    /* product of coordinate vectors, reduced modulo the minimal polynomial */
    std::vector<mpz_class> mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) const;
    std::vector<mpq_class> mul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const;

    /* coordinates of theta^k */
    std::vector<mpz_class> theta_power(std::size_t k) const;

    /* Images of theta under the embeddings, as (re, im) pairs. Totally real
     * fields list one value per real embedding, starting with the identity;
     * CM fields list conjugate pairs adjacently (sigma_{2i} = conj sigma_{2i-1}). */
    std::vector<std::pair<BigFloat, BigFloat>> theta_embeddings(mpfr_prec_t bits) const;

    /* Enclosures of the real embeddings of theta; totally real fields only. */
    std::vector<Interval> theta_enclosures(mpfr_prec_t bits) const;

  private:
    NumberField(FieldKind kind, long param);
    void init();
    void init_polynomial() const;
    void init_forms() const;
    void init_ambient() const;

    FieldKind kind_;
    long param_;
    std::size_t degree_ = 0;
    std::string spec_;
    std::map<long, int> ramification_;
    mutable std::once_flag poly_once_, forms_once_, ambient_once_;
    mutable std::vector<mpz_class> minpoly_;
    mutable std::vector<mpz_class> power_traces_;
    mutable IntMatrix trace_form_;
    mutable IntMatrix conjugation_;
    mutable Field ambient_;
    mutable IntMatrix lift_;
};

bool same_field(const Field& a, const Field& b);

/* Exact element of a supported field: rational coordinates on the
 * integral power basis 1, theta, ..., theta^{deg-1}. */
class FieldElement {
  public:
    FieldElement(Field field, std::vector<mpq_class> coefficients);

    static FieldElement zero(const Field& f);
    static FieldElement from_rational(const Field& f, const mpq_class& q);
    static FieldElement theta(const Field& f);

    const Field& field() const { return field_; }
    const std::vector<mpq_class>& coefficients() const { return coeffs_; }
    bool is_zero() const;
    bool is_rational() const;
    bool is_integral() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    bool operator==(const FieldElement& o) const;

    FieldElement inverse() const;
    FieldElement pow(long k) const;

    /* rows theta^i * x */
    RatMatrix multiplication_matrix() const;

    std::string to_string() const;

  private:
    void check_same(const FieldElement& o) const;

    Field field_;
    std::vector<mpq_class> coeffs_;
};

mpq_class trace(const FieldElement& x);
FieldElement conj(const FieldElement& x);

/* Transport between Q(zeta_n + zeta_n^{-1}) and Q(zeta_n). */
FieldElement lift(const FieldElement& x);
FieldElement descend(const FieldElement& x, const Field& target);
FieldElement lift_descend(const FieldElement& x, const Field& target);

/* 2 - zeta_m - zeta_m^{-1} for m | n, i.e. (1 - zeta_m)(1 - zeta_m^{-1}),
 * as an element of real_cyclotomic(n) or cyclotomic(n). */
FieldElement two_minus_two_cos(const Field& f, long m);

/* beta with beta^2 = m when the squarefree m > 0 is a square in the field,
 * built from Gauss sums, zeta_8 + zeta_8^{-1} and sqrt(+-d). */
std::optional<FieldElement> sqrt_integer(const Field& f, long m);

/* Quadratic Gauss sum sum_j (j/p) zeta_p^j, in cyclotomic(n) with p | n. */
FieldElement gauss_sum(const Field& cyclo, long p);

bool is_totally_positive(const FieldElement& alpha);

/* Complex images of x under the embeddings, ordered as in theta_embeddings. */
std::vector<std::pair<BigFloat, BigFloat>> embed(const FieldElement& x, mpfr_prec_t bits);

/* Rows are the power basis elements; totally real: entry (i, j) is
 * sigma_j(theta^i); CM: sqrt(2)*Re sigma_{2k-1}, sqrt(2)*Im sigma_{2k}. */
struct EmbeddingMatrix {
    bool cm = false;
    mpfr_prec_t precision = 0;
    std::vector<std::vector<BigFloat>> rows;
};

EmbeddingMatrix embedding_matrix(const Field& f, mpfr_prec_t bits);

/* Real generator-matrix layout for an arbitrary list of elements, each
 * column scaled by sqrt(sigma(alpha)). alpha must be totally positive. */
EmbeddingMatrix twisted_embedding(const std::vector<FieldElement>& rows, const FieldElement& alpha, mpfr_prec_t bits);

}  // namespace arakelov
