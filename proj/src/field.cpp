#include "arakelov/field.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "arakelov/arith.hpp"
#include "arakelov/errors.hpp"

namespace arakelov {

namespace {

using Poly = std::vector<mpz_class>;  // low degree first

void trim(Poly& p)
{
    while (p.size() > 1 && sgn(p.back()) == 0)
        p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

/* exact quotient a / b for monic b */
Poly poly_divexact_monic(Poly a, const Poly& b)
{
    const std::size_t db = b.size() - 1;
    Poly q(a.size() - db);
    for (std::size_t k = a.size(); k-- > db;) {
        const mpz_class c = a[k];
        q[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i)
            a[k - db + i] -= c * b[i];
    }
    for (const auto& r : a)
        if (sgn(r) != 0)
            throw InternalInconsistency("non-exact polynomial division");
    return q;
}

Poly cyclotomic_polynomial(long n)
{
    long rad = 1;
    for (const auto& [p, e] : factorize(n))
        rad *= p;
    if (rad != n) {
        /* Phi_n(x) = Phi_rad(x^{n/rad}) */
        const Poly base = cyclotomic_polynomial(rad);
        const long step = n / rad;
        Poly out((base.size() - 1) * step + 1);
        for (std::size_t i = 0; i < base.size(); ++i)
            out[i * step] = base[i];
        return out;
    }
    Poly num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (long d : divisors(n))
        if (d < n)
            num = poly_divexact_monic(num, cyclotomic_polynomial(d));
    trim(num);
    return num;
}

/* minimal polynomial of zeta_n + zeta_n^{-1}, from the palindromic Phi_n
 * via x^{-m} Phi_n(x) = a_m + sum_k a_{m+k} D_k(x + 1/x) */
Poly real_cyclotomic_polynomial(long n)
{
    const Poly phi = cyclotomic_polynomial(n);
    const std::size_t m = (phi.size() - 1) / 2;
    Poly d_prev{2}, d_cur{0, 1};  // D_0 = 2, D_1 = theta
    Poly psi(m + 1);
    psi[0] = phi[m];
    for (std::size_t k = 1; k <= m; ++k) {
        for (std::size_t i = 0; i < d_cur.size(); ++i)
            psi[i] += phi[m + k] * d_cur[i];
        Poly next = poly_mul(d_cur, Poly{0, 1});
        for (std::size_t i = 0; i < d_prev.size(); ++i)
            next[i] -= d_prev[i];
        d_prev = std::move(d_cur);
        d_cur = std::move(next);
    }
    trim(psi);
    return psi;
}

mpz_class ramanujan_sum(long n, long k)
{
    const long g = gcd(k == 0 ? n : k, n);
    return mpz_class(moebius(n / g)) * (euler_phi(n) / euler_phi(n / g));
}

long parse_long(std::string_view s, std::string_view whole)
{
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw SpecError("malformed field spec '" + std::string(whole) + "'");
    return v;
}

template <typename T>
std::vector<T> reduce_product(const std::vector<T>& a, const std::vector<T>& b, const std::vector<mpz_class>& f)
{
    const std::size_t m = f.size() - 1;
    std::vector<T> c(2 * m - 1);
    T t;
    for (std::size_t i = 0; i < m; ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (std::size_t j = 0; j < m; ++j) {
            t = a[i] * b[j];
            c[i + j] += t;
        }
    }
    for (std::size_t k = c.size(); k-- > m;) {
        if (sgn(c[k]) == 0)
            continue;
        for (std::size_t i = 0; i < m; ++i) {
            t = c[k] * f[i];
            c[k - m + i] -= t;
        }
    }
    c.resize(m);
    return c;
}

}  // namespace

NumberField::NumberField(FieldKind kind, long param) : kind_(kind), param_(param) {}

Field NumberField::parse(std::string_view spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw SpecError("malformed field spec '" + std::string(spec) + "'");
    const std::string_view head = spec.substr(0, colon), tail = spec.substr(colon + 1);
    if (head == "quad") {
        if (tail.empty() || (tail[0] != '+' && tail[0] != '-'))
            throw SpecError("quadratic spec needs a sign: '" + std::string(spec) + "'");
        const long d = parse_long(tail.substr(1), spec);
        return make(tail[0] == '+' ? FieldKind::real_quadratic : FieldKind::imag_quadratic, d);
    }
    if (head == "cyclo")
        return make(FieldKind::cyclotomic, parse_long(tail, spec));
    if (head == "realcyclo")
        return make(FieldKind::real_cyclotomic, parse_long(tail, spec));
    throw SpecError("unknown field family '" + std::string(head) + "'");
}

Field NumberField::make(FieldKind kind, long param)
{
    switch (kind) {
    case FieldKind::real_quadratic:
    case FieldKind::imag_quadratic:
        if (param < 1 || !is_squarefree(param))
            throw SpecError("d must be a squarefree positive integer, got " + std::to_string(param));
        if (kind == FieldKind::real_quadratic && param == 1)
            throw SpecError("quad:+1 is not a quadratic field");
        break;
    case FieldKind::cyclotomic:
    case FieldKind::real_cyclotomic:
        if (param < 3 || param % 4 == 2)
            throw SpecError("conductor must satisfy n >= 3 and n != 2 mod 4, got " + std::to_string(param));
        if (param > 100000)
            throw SpecError("conductor too large: " + std::to_string(param));
        break;
    }
    std::shared_ptr<NumberField> f(new NumberField(kind, param));
    f->init();
    return f;
}

void NumberField::init()
{
    const long d = param_, n = param_;
    switch (kind_) {
    case FieldKind::real_quadratic:
        spec_ = "quad:+" + std::to_string(d);
        degree_ = 2;
        for (const auto& [p, e] : factorize(d))
            ramification_[p] = 2;
        if (d % 4 == 2 || d % 4 == 3)
            ramification_[2] = 2;
        break;
    case FieldKind::imag_quadratic:
        spec_ = "quad:-" + std::to_string(d);
        degree_ = 2;
        for (const auto& [p, e] : factorize(d))
            ramification_[p] = 2;
        if (d % 4 == 1 || d % 4 == 2)
            ramification_[2] = 2;
        break;
    case FieldKind::cyclotomic:
        spec_ = "cyclo:" + std::to_string(n);
        degree_ = static_cast<std::size_t>(euler_phi(n));
        for (const auto& [p, r] : factorize(n))
            ramification_[p] = static_cast<int>(euler_phi(ipow(p, r)));
        break;
    case FieldKind::real_cyclotomic: {
        spec_ = "realcyclo:" + std::to_string(n);
        degree_ = static_cast<std::size_t>(euler_phi(n) / 2);
        const auto fac = factorize(n);
        for (const auto& [p, r] : fac) {
            /* Q(zeta_n)/K is unramified at finite primes unless n is a prime power */
            const long e = fac.size() == 1 ? euler_phi(ipow(p, r)) / 2 : euler_phi(ipow(p, r));
            if (e > 1)
                ramification_[p] = static_cast<int>(e);
        }
        break;
    }
    }
}

void NumberField::init_polynomial() const
{
    std::call_once(poly_once_, [this] {
        const long d = param_;
        switch (kind_) {
        case FieldKind::real_quadratic:
            minpoly_ = d % 4 == 1 ? Poly{-(d - 1) / 4, -1, 1} : Poly{-d, 0, 1};
            break;
        case FieldKind::imag_quadratic:
            minpoly_ = d % 4 == 3 ? Poly{(d + 1) / 4, -1, 1} : Poly{d, 0, 1};
            break;
        case FieldKind::cyclotomic:
            minpoly_ = cyclotomic_polynomial(d);
            break;
        case FieldKind::real_cyclotomic:
            minpoly_ = real_cyclotomic_polynomial(d);
            break;
        }
        if (minpoly_.size() != degree_ + 1)
            throw InternalInconsistency("minimal polynomial degree mismatch for " + spec_);
    });
}

void NumberField::init_forms() const
{
    std::call_once(forms_once_, [this] {
        const long n = param_;
        const std::size_t m = degree_;
        const auto& f = minimal_polynomial();
        power_traces_.assign(2 * m - 1, 0);
        if (kind_ == FieldKind::cyclotomic) {
            for (std::size_t k = 0; k < power_traces_.size(); ++k)
                power_traces_[k] = ramanujan_sum(n, static_cast<long>(k));
        } else if (kind_ == FieldKind::real_cyclotomic) {
            /* Tr_K(theta^k) = Tr_L((zeta + zeta^{-1})^k) / 2 */
            for (std::size_t k = 0; k < power_traces_.size(); ++k) {
                mpz_class s = 0, binom;
                for (std::size_t j = 0; j <= k; ++j) {
                    mpz_bin_uiui(binom.get_mpz_t(), k, j);
                    s += binom * ramanujan_sum(n, std::labs(2 * static_cast<long>(j) - static_cast<long>(k)));
                }
                power_traces_[k] = s / 2;
            }
        } else {
            /* Newton identities for the quadratic minimal polynomial */
            power_traces_[0] = 2;
            power_traces_[1] = -f[1];
            for (std::size_t k = 2; k < power_traces_.size(); ++k)
                power_traces_[k] = -f[1] * power_traces_[k - 1] - f[0] * power_traces_[k - 2];
        }

        trace_form_ = IntMatrix(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                trace_form_(i, j) = power_traces_[i + j];

        conjugation_ = IntMatrix::identity(m);
        if (kind_ == FieldKind::imag_quadratic) {
            conjugation_(1, 0) = n % 4 == 3 ? 1 : 0;
            conjugation_(1, 1) = -1;
        } else if (kind_ == FieldKind::cyclotomic) {
            for (std::size_t i = 1; i < m; ++i)
                conjugation_.set_row(i, theta_power(static_cast<std::size_t>(n) - i));
        }
    });
}

void NumberField::init_ambient() const
{
    std::call_once(ambient_once_, [this] {
        if (kind_ != FieldKind::real_cyclotomic)
            return;
        const long n = param_;
        const std::size_t m = degree_;
        ambient_ = make(FieldKind::cyclotomic, n);
        const std::size_t big = ambient_->degree();
        std::vector<mpz_class> s = ambient_->theta_power(1), inv = ambient_->theta_power(static_cast<std::size_t>(n) - 1);
        for (std::size_t i = 0; i < big; ++i)
            s[i] += inv[i];
        lift_ = IntMatrix(m, big);
        std::vector<mpz_class> acc(big);
        acc[0] = 1;
        for (std::size_t i = 0; i < m; ++i) {
            lift_.set_row(i, acc);
            acc = ambient_->mul(acc, s);
        }
    });
}

const std::vector<mpz_class>& NumberField::minimal_polynomial() const
{
    init_polynomial();
    return minpoly_;
}

const std::vector<mpz_class>& NumberField::power_traces() const
{
    init_forms();
    return power_traces_;
}

const IntMatrix& NumberField::trace_form() const
{
    init_forms();
    return trace_form_;
}

const IntMatrix& NumberField::conjugation() const
{
    init_forms();
    return conjugation_;
}

const Field& NumberField::ambient() const
{
    init_ambient();
    return ambient_;
}

const IntMatrix& NumberField::lift_matrix() const
{
    init_ambient();
    return lift_;
}

std::vector<mpz_class> NumberField::mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) const
{
    return reduce_product(a, b, minimal_polynomial());
}

std::vector<mpq_class> NumberField::mul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const
{
    return reduce_product(a, b, minimal_polynomial());
}

std::vector<mpz_class> NumberField::theta_power(std::size_t k) const
{
    const std::size_t m = degree_;
    const auto& f = minimal_polynomial();
    std::vector<mpz_class> v(m);
    v[0] = 1;
    for (std::size_t step = 0; step < k; ++step) {
        /* multiply by theta: shift, then fold the overflow through f */
        const mpz_class top = v[m - 1];
        for (std::size_t i = m - 1; i > 0; --i)
            v[i] = v[i - 1];
        v[0] = 0;
        for (std::size_t i = 0; i < m; ++i)
            v[i] -= top * f[i];
    }
    return v;
}

std::vector<std::pair<BigFloat, BigFloat>> NumberField::theta_embeddings(mpfr_prec_t bits) const
{
    const mpfr_prec_t work = bits + 32;
    std::vector<std::pair<BigFloat, BigFloat>> out;
    const BigFloat zero(work);
    const BigFloat half(work, mpq_class(1, 2));
    const BigFloat two_pi = BigFloat::pi(work) * BigFloat(work, 2);
    switch (kind_) {
    case FieldKind::real_quadratic: {
        const BigFloat s = sqrt(BigFloat(work, param_));
        for (int sign : {1, -1}) {
            BigFloat v = sign > 0 ? s : -s;
            if (param_ % 4 == 1)
                v = (BigFloat(work, 1) + v) * half;
            out.emplace_back(v, zero);
        }
        break;
    }
    case FieldKind::imag_quadratic: {
        const BigFloat s = sqrt(BigFloat(work, param_));
        for (int sign : {1, -1}) {
            BigFloat re = zero, im = sign > 0 ? s : -s;
            if (param_ % 4 == 3) {
                re = half;
                im = im * half;
            }
            out.emplace_back(re, im);
        }
        break;
    }
    case FieldKind::cyclotomic:
        for (long k = 1; 2 * k < param_; ++k) {
            if (gcd(k, param_) != 1)
                continue;
            const BigFloat x = two_pi * BigFloat(work, mpq_class(k, param_));
            const BigFloat c = cos(x), s = sin(x);
            out.emplace_back(c, s);
            out.emplace_back(c, -s);
        }
        break;
    case FieldKind::real_cyclotomic:
        for (long k = 1; 2 * k < param_; ++k) {
            if (gcd(k, param_) != 1)
                continue;
            const BigFloat x = two_pi * BigFloat(work, mpq_class(k, param_));
            out.emplace_back(BigFloat(work, 2) * cos(x), zero);
        }
        break;
    }
    return out;
}

std::vector<Interval> NumberField::theta_enclosures(mpfr_prec_t bits) const
{
    std::vector<Interval> out;
    if (kind_ == FieldKind::real_quadratic) {
        const Interval s = Interval::sqrt_of(param_, bits);
        for (int sign : {1, -1}) {
            Interval v = s * Interval(bits, mpq_class(sign));
            if (param_ % 4 == 1)
                v = (v + Interval(bits, mpq_class(1))) * Interval(bits, mpq_class(1, 2));
            out.push_back(v);
        }
    } else if (kind_ == FieldKind::real_cyclotomic) {
        for (long k = 1; 2 * k < param_; ++k)
            if (gcd(k, param_) == 1)
                out.push_back(Interval::two_cos_2pi(k, param_, bits));
    } else {
        throw FieldMismatch("enclosures are only defined for totally real fields");
    }
    return out;
}

bool same_field(const Field& a, const Field& b)
{
    return a == b || (a && b && a->spec() == b->spec());
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(Field field, std::vector<mpq_class> coefficients)
    : field_(std::move(field)), coeffs_(std::move(coefficients))
{
    if (coeffs_.size() != field_->degree())
        throw ShapeError("coefficient vector length must equal the field degree");
}

FieldElement FieldElement::zero(const Field& f) { return {f, std::vector<mpq_class>(f->degree())}; }

FieldElement FieldElement::from_rational(const Field& f, const mpq_class& q)
{
    FieldElement x = zero(f);
    x.coeffs_[0] = q;
    return x;
}

FieldElement FieldElement::theta(const Field& f)
{
    const auto v = f->theta_power(1);
    return {f, {v.begin(), v.end()}};
}

bool FieldElement::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
}

bool FieldElement::is_rational() const
{
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
}

bool FieldElement::is_integral() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

void FieldElement::check_same(const FieldElement& o) const
{
    if (!same_field(field_, o.field_))
        throw FieldMismatch(field_->spec() + " vs " + o.field_->spec());
}

FieldElement FieldElement::operator-() const
{
    FieldElement r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o)
{
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o)
{
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o)
{
    check_same(o);
    coeffs_ = field_->mul(coeffs_, o.coeffs_);
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o)
{
    check_same(o);
    return *this *= o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const
{
    return same_field(field_, o.field_) && coeffs_ == o.coeffs_;
}

RatMatrix FieldElement::multiplication_matrix() const
{
    const std::size_t m = field_->degree();
    RatMatrix mm(m, m);
    std::vector<mpq_class> row = coeffs_;
    const auto th = field_->theta_power(1);
    const std::vector<mpq_class> theta(th.begin(), th.end());
    for (std::size_t i = 0; i < m; ++i) {
        mm.set_row(i, row);
        if (i + 1 < m)
            row = field_->mul(row, theta);
    }
    return mm;
}

FieldElement FieldElement::inverse() const
{
    if (is_zero())
        throw DivError("division by zero in " + field_->spec());
    std::vector<mpq_class> one(field_->degree());
    one[0] = 1;
    auto y = solve_left(multiplication_matrix(), one);
    if (!y)
        throw InternalInconsistency("no inverse for a nonzero element");
    return {field_, std::move(*y)};
}

FieldElement FieldElement::pow(long k) const
{
    FieldElement base = k < 0 ? inverse() : *this;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    FieldElement r = from_rational(field_, 1);
    while (e) {
        if (e & 1)
            r *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return r;
}

std::string FieldElement::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        os << (i ? "," : "") << coeffs_[i];
    os << ')';
    return os.str();
}

mpq_class trace(const FieldElement& x)
{
    const auto& t = x.field()->power_traces();
    mpq_class s = 0;
    for (std::size_t i = 0; i < x.coefficients().size(); ++i)
        s += x.coefficients()[i] * t[i];
    return s;
}

FieldElement conj(const FieldElement& x)
{
    const auto& f = x.field();
    if (f->is_totally_real())
        return x;
    const IntMatrix& c = f->conjugation();
    const std::size_t m = f->degree();
    std::vector<mpq_class> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (sgn(x.coefficients()[i]) == 0)
            continue;
        for (std::size_t j = 0; j < m; ++j)
            out[j] += x.coefficients()[i] * c(i, j);
    }
    return {f, std::move(out)};
}

FieldElement lift(const FieldElement& x)
{
    const auto& f = x.field();
    if (f->kind() != FieldKind::real_cyclotomic)
        throw FieldMismatch("lift is defined from a real cyclotomic field, got " + f->spec());
    const IntMatrix& lm = f->lift_matrix();
    std::vector<mpq_class> out(lm.cols());
    for (std::size_t i = 0; i < lm.rows(); ++i) {
        if (sgn(x.coefficients()[i]) == 0)
            continue;
        for (std::size_t j = 0; j < lm.cols(); ++j)
            out[j] += x.coefficients()[i] * lm(i, j);
    }
    return {f->ambient(), std::move(out)};
}

FieldElement descend(const FieldElement& x, const Field& target)
{
    if (target->kind() != FieldKind::real_cyclotomic || !same_field(target->ambient(), x.field()))
        throw FieldMismatch("cannot descend from " + x.field()->spec() + " to " + target->spec());
    auto y = solve_left(to_rational(target->lift_matrix()), x.coefficients());
    if (!y)
        throw NotInSubfield(x.to_string() + " is not fixed by complex conjugation");
    return {target, std::move(*y)};
}

FieldElement lift_descend(const FieldElement& x, const Field& target)
{
    if (same_field(x.field(), target))
        return x;
    if (x.field()->kind() == FieldKind::real_cyclotomic && same_field(x.field()->ambient(), target))
        return lift(x);
    return descend(x, target);
}

FieldElement two_minus_two_cos(const Field& f, long m)
{
    const long n = f->parameter();
    if ((f->kind() != FieldKind::cyclotomic && f->kind() != FieldKind::real_cyclotomic) || m <= 0 || n % m != 0)
        throw SpecError("2 - 2cos(2pi/" + std::to_string(m) + ") is not available in " + f->spec());
    const long k = n / m;
    if (f->kind() == FieldKind::cyclotomic) {
        const auto a = f->theta_power(static_cast<std::size_t>(k % n)), b = f->theta_power(static_cast<std::size_t>((n - k) % n));
        std::vector<mpq_class> c(f->degree());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = -a[i] - b[i];
        c[0] += 2;
        return {f, std::move(c)};
    }
    /* zeta^k + zeta^{-k} = D_k(theta) with D_0 = 2, D_1 = theta */
    const FieldElement theta = FieldElement::theta(f);
    FieldElement prev = FieldElement::from_rational(f, 2), cur = theta;
    for (long i = 1; i < k; ++i) {
        FieldElement next = theta * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    if (k == 0)
        cur = prev;
    return FieldElement::from_rational(f, 2) - cur;
}

FieldElement gauss_sum(const Field& cyclo, long p)
{
    const long n = cyclo->parameter();
    if (cyclo->kind() != FieldKind::cyclotomic || n % p != 0 || p == 2 || !is_prime(p))
        throw SpecError("Gauss sum for p=" + std::to_string(p) + " not available in " + cyclo->spec());
    std::vector<mpq_class> c(cyclo->degree());
    for (long j = 1; j < p; ++j) {
        const auto z = cyclo->theta_power(static_cast<std::size_t>((j * (n / p)) % n));
        const int s = legendre(j, p);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += s * z[i];
    }
    return {cyclo, std::move(c)};
}

std::optional<FieldElement> sqrt_integer(const Field& f, long m)
{
    if (m < 1 || !is_squarefree(m))
        throw SpecError("sqrt_integer expects a squarefree positive integer, got " + std::to_string(m));
    if (m == 1)
        return FieldElement::from_rational(f, 1);
    const long d = f->parameter();
    switch (f->kind()) {
    case FieldKind::real_quadratic: {
        if (m != d)
            return std::nullopt;
        const FieldElement th = FieldElement::theta(f);
        return d % 4 == 1 ? th + th - FieldElement::from_rational(f, 1) : th;
    }
    case FieldKind::imag_quadratic:
        return std::nullopt;
    case FieldKind::cyclotomic:
    case FieldKind::real_cyclotomic:
        break;
    }

    const long n = d;
    const Field big = f->kind() == FieldKind::cyclotomic ? f : f->ambient();
    auto zeta_pow = [&](long k) {
        const auto v = big->theta_power(static_cast<std::size_t>(((k % n) + n) % n));
        return FieldElement(big, {v.begin(), v.end()});
    };
    FieldElement root = FieldElement::from_rational(big, 1);
    std::vector<long> three_mod_four;
    for (const auto& [p, e] : factorize(m)) {
        if (p == 2) {
            if (n % 8 != 0)
                return std::nullopt;
            root *= zeta_pow(n / 8) + zeta_pow(-n / 8);
        } else if (n % p != 0) {
            return std::nullopt;
        } else if (p % 4 == 1) {
            root *= gauss_sum(big, p);
        } else {
            three_mod_four.push_back(p);
        }
    }
    if (!three_mod_four.empty()) {
        if (n % 4 == 0) {
            /* the Gauss sum is i*sqrt(p); divide by i = zeta_n^{n/4} */
            const FieldElement minus_i = -zeta_pow(n / 4);
            for (long p : three_mod_four)
                root *= minus_i * gauss_sum(big, p);
        } else {
            if (three_mod_four.size() % 2 != 0)
                return std::nullopt;
            for (std::size_t i = 0; i < three_mod_four.size(); i += 2)
                root *= -(gauss_sum(big, three_mod_four[i]) * gauss_sum(big, three_mod_four[i + 1]));
        }
    }
    if (!(root * root == FieldElement::from_rational(big, m)))
        throw InternalInconsistency("constructed square root does not square to " + std::to_string(m));
    if (f->kind() == FieldKind::real_cyclotomic)
        return descend(root, f);
    return root;
}

namespace {

Interval enclose(const FieldElement& x, const Interval& theta, mpfr_prec_t bits)
{
    const auto& c = x.coefficients();
    Interval v(bits, c.back());
    for (std::size_t i = c.size() - 1; i-- > 0;)
        v = v * theta + Interval(bits, c[i]);
    return v;
}

}  // namespace

bool is_totally_positive(const FieldElement& alpha)
{
    if (alpha.is_zero())
        return false;
    const Field& f = alpha.field();
    if (f->is_cm()) {
        if (!(conj(alpha) == alpha))
            return false;
        if (f->kind() == FieldKind::imag_quadratic)
            return sgn(alpha.coefficients()[0]) > 0;
        return is_totally_positive(descend(alpha, NumberField::make(FieldKind::real_cyclotomic, f->parameter())));
    }
    /* refine until every enclosure excludes zero; terminates since alpha != 0 */
    for (mpfr_prec_t bits = 64; bits <= (1 << 20); bits *= 2) {
        bool decided = true;
        for (const Interval& t : f->theta_enclosures(bits)) {
            const Interval v = enclose(alpha, t, bits);
            if (v.negative())
                return false;
            if (v.contains_zero())
                decided = false;
        }
        if (decided)
            return true;
    }
    throw InternalInconsistency("sign of an embedding could not be separated from zero");
}

std::vector<std::pair<BigFloat, BigFloat>> embed(const FieldElement& x, mpfr_prec_t bits)
{
    const mpfr_prec_t work = bits + 32;
    const auto thetas = x.field()->theta_embeddings(bits);
    const auto& c = x.coefficients();
    std::vector<std::pair<BigFloat, BigFloat>> out;
    out.reserve(thetas.size());
    for (const auto& [tr, ti] : thetas) {
        BigFloat re(work, c.back()), im(work);
        for (std::size_t i = c.size() - 1; i-- > 0;) {
            BigFloat nr = re * tr - im * ti;
            BigFloat ni = re * ti + im * tr;
            re = nr + BigFloat(work, c[i]);
            im = std::move(ni);
        }
        out.emplace_back(std::move(re), std::move(im));
    }
    return out;
}

EmbeddingMatrix twisted_embedding(const std::vector<FieldElement>& rows, const FieldElement& alpha, mpfr_prec_t bits)
{
    if (!is_totally_positive(alpha))
        throw FormError("alpha is not totally positive");
    const Field& f = alpha.field();
    const mpfr_prec_t work = bits + 32;
    std::vector<BigFloat> scale;
    for (const auto& [re, im] : embed(alpha, bits))
        scale.push_back(sqrt(re));
    if (f->is_cm()) {
        const BigFloat root2 = sqrt(BigFloat(work, 2));
        for (auto& s : scale)
            s = s * root2;
    }
    EmbeddingMatrix out;
    out.cm = f->is_cm();
    out.precision = bits;
    for (const FieldElement& x : rows) {
        const auto e = embed(x, bits);
        std::vector<BigFloat> row;
        for (std::size_t j = 0; j < e.size(); ++j) {
            const BigFloat& part = (out.cm && j % 2 == 1) ? e[j].second : e[j].first;
            BigFloat v = part * scale[j];
            mpfr_prec_round(v.get(), bits, MPFR_RNDN);
            row.push_back(std::move(v));
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

EmbeddingMatrix embedding_matrix(const Field& f, mpfr_prec_t bits)
{
    std::vector<FieldElement> basis;
    for (std::size_t i = 0; i < f->degree(); ++i) {
        const auto v = f->theta_power(i);
        basis.emplace_back(f, std::vector<mpq_class>(v.begin(), v.end()));
    }
    return twisted_embedding(basis, FieldElement::from_rational(f, 1), bits);
}

}  // namespace arakelov
