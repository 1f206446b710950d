#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace arakelov {

/* RAII wrapper around mpfr_t. Every value carries its own precision;
 * binary operations produce a result at the larger operand precision and
 * round to nearest. Directed rounding is only used by Interval. */
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t bits = 53);
    BigFloat(mpfr_prec_t bits, long v);
    BigFloat(mpfr_prec_t bits, const mpq_class& q, mpfr_rnd_t rnd = MPFR_RNDN);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    static BigFloat pi(mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN);

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /* scientific decimal with enough digits to round-trip the precision */
    std::string to_string() const;
    int sign() const { return mpfr_sgn(v_); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    BigFloat operator-() const;
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }

  private:
    mpfr_t v_;
};

BigFloat sqrt(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat abs(const BigFloat& x);

/* Closed interval [lo, hi] with outward rounding. */
class Interval {
  public:
    explicit Interval(mpfr_prec_t bits);
    Interval(mpfr_prec_t bits, const mpq_class& q);
    Interval(BigFloat lo, BigFloat hi);

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }

    bool positive() const { return lo_.sign() > 0; }
    bool negative() const { return hi_.sign() < 0; }
    bool contains_zero() const { return !positive() && !negative(); }

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);

    /* enclosure of 2*cos(2*pi*k/n) for 0 < k < n/2 */
    static Interval two_cos_2pi(long k, long n, mpfr_prec_t bits);
    /* enclosure of sqrt(d) for d > 0 */
    static Interval sqrt_of(long d, mpfr_prec_t bits);

  private:
    BigFloat lo_, hi_;
};

}  // namespace arakelov
