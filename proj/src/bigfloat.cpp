#include "arakelov/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace arakelov {

BigFloat::BigFloat(mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(mpfr_prec_t bits, long v) : BigFloat(bits)
{
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(mpfr_prec_t bits, const mpq_class& q, mpfr_rnd_t rnd) : BigFloat(bits)
{
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
}

BigFloat::BigFloat(const BigFloat& o)
{
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t bits, mpfr_rnd_t rnd)
{
    BigFloat r(bits);
    mpfr_const_pi(r.v_, rnd);
    return r;
}

std::string BigFloat::to_string() const
{
    if (mpfr_zero_p(v_))
        return "0";
    const int digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 1;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

namespace {

mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-() const
{
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat sqrt(const BigFloat& x)
{
    BigFloat r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat cos(const BigFloat& x)
{
    BigFloat r(x.precision());
    mpfr_cos(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat sin(const BigFloat& x)
{
    BigFloat r(x.precision());
    mpfr_sin(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat abs(const BigFloat& x)
{
    BigFloat r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Interval::Interval(mpfr_prec_t bits) : lo_(bits), hi_(bits) {}

Interval::Interval(mpfr_prec_t bits, const mpq_class& q) : lo_(bits, q, MPFR_RNDD), hi_(bits, q, MPFR_RNDU) {}

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

Interval operator+(const Interval& a, const Interval& b)
{
    const mpfr_prec_t p = std::max(a.lo_.precision(), b.lo_.precision());
    Interval r(p);
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b)
{
    const mpfr_prec_t p = std::max(a.lo_.precision(), b.lo_.precision());
    Interval r(p);
    const BigFloat* xs[2] = {&a.lo_, &a.hi_};
    const BigFloat* ys[2] = {&b.lo_, &b.hi_};
    BigFloat t(p);
    bool first = true;
    for (const BigFloat* x : xs)
        for (const BigFloat* y : ys) {
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo_.get()))
                mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi_.get()))
                mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r;
}

Interval Interval::two_cos_2pi(long k, long n, mpfr_prec_t bits)
{
    /* x = 2*pi*k/n lies in (0, pi), where cos is decreasing */
    const mpfr_prec_t work = bits + 16;
    BigFloat pi_lo = BigFloat::pi(work, MPFR_RNDD), pi_hi = BigFloat::pi(work, MPFR_RNDU);
    BigFloat x_lo(work), x_hi(work);
    mpfr_mul_si(x_lo.get(), pi_lo.get(), 2 * k, MPFR_RNDD);
    mpfr_div_si(x_lo.get(), x_lo.get(), n, MPFR_RNDD);
    mpfr_mul_si(x_hi.get(), pi_hi.get(), 2 * k, MPFR_RNDU);
    mpfr_div_si(x_hi.get(), x_hi.get(), n, MPFR_RNDU);
    BigFloat lo(bits), hi(bits);
    if (mpfr_less_p(x_hi.get(), pi_lo.get()))
        mpfr_cos(lo.get(), x_hi.get(), MPFR_RNDD);
    else
        mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    if (mpfr_sgn(x_lo.get()) > 0)
        mpfr_cos(hi.get(), x_lo.get(), MPFR_RNDU);
    else
        mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    mpfr_mul_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
    mpfr_mul_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval Interval::sqrt_of(long d, mpfr_prec_t bits)
{
    BigFloat lo(bits), hi(bits);
    mpfr_set_si(lo.get(), d, MPFR_RNDD);
    mpfr_set_si(hi.get(), d, MPFR_RNDU);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

}  // namespace arakelov
