#include "arakelov/ideal.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "arakelov/arith.hpp"
#include "arakelov/errors.hpp"

namespace arakelov {

namespace {

mpz_class content(const IntMatrix& m)
{
    mpz_class g = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m(i, j).get_mpz_t());
    return g;
}

long padic_valuation(mpz_class x, long p)
{
    if (sgn(x) == 0)
        throw InternalInconsistency("valuation of zero");
    long v = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
        x /= p;
        ++v;
    }
    return v;
}

long padic_valuation(const mpq_class& q, long p) { return padic_valuation(q.get_num(), p) - padic_valuation(q.get_den(), p); }

/* HNF of the lattice spanned by the rows of a full-rank generating set */
IntMatrix lattice_hnf(const IntMatrix& gens)
{
    const std::size_t n = gens.cols();
    if (gens.rows() == n)
        return hnf_modular(gens, abs(det(gens)));
    // pick n independent rows; their determinant is a multiple of the index
    RatMatrix echelon(0, n);
    std::vector<std::vector<mpq_class>> basis_rows;
    std::vector<std::size_t> pivots, chosen;
    for (std::size_t r = 0; r < gens.rows() && chosen.size() < n; ++r) {
        std::vector<mpq_class> v(n);
        for (std::size_t j = 0; j < n; ++j)
            v[j] = gens(r, j);
        for (std::size_t k = 0; k < basis_rows.size(); ++k) {
            const std::size_t c = pivots[k];
            if (sgn(v[c]) == 0)
                continue;
            const mpq_class f = v[c] / basis_rows[k][c];
            for (std::size_t j = 0; j < n; ++j)
                v[j] -= f * basis_rows[k][j];
        }
        std::size_t c = 0;
        while (c < n && sgn(v[c]) == 0)
            ++c;
        if (c == n)
            continue;
        basis_rows.push_back(std::move(v));
        pivots.push_back(c);
        chosen.push_back(r);
    }
    if (chosen.size() < n)
        throw RankError("generators do not span a full-rank module");
    IntMatrix sub(n, n);
    for (std::size_t i = 0; i < n; ++i)
        sub.set_row(i, gens.row(chosen[i]));
    return hnf_modular(gens, abs(det(sub)));
}

IntMatrix int_mult_matrix(const Field& f, const std::vector<mpz_class>& x)
{
    const std::size_t m = f->degree();
    IntMatrix out(m, m);
    const auto theta = f->theta_power(1);
    std::vector<mpz_class> row = x;
    for (std::size_t i = 0; i < m; ++i) {
        out.set_row(i, row);
        if (i + 1 < m)
            row = f->mul(row, theta);
    }
    return out;
}

/* solve y * h = v for upper triangular h */
std::vector<mpq_class> solve_upper(const IntMatrix& h, const std::vector<mpq_class>& v)
{
    const std::size_t n = h.rows();
    std::vector<mpq_class> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        mpq_class s = v[j];
        for (std::size_t i = 0; i < j; ++i)
            s -= y[i] * h(i, j);
        y[j] = s / h(j, j);
    }
    return y;
}

mpz_class diagonal_product(const IntMatrix& h)
{
    mpz_class d = 1;
    for (std::size_t i = 0; i < h.rows(); ++i)
        d *= h(i, i);
    return d;
}

/* Elements h_0, then random combinations of the rows of h. Two of them
 * almost always generate the ideal; callers stop once the index is right. */
class ElementStream {
  public:
    explicit ElementStream(const IntMatrix& h) : h_(h) {}
    std::vector<mpz_class> next()
    {
        if (count_++ == 0)
            return h_.row(0);
        std::vector<mpz_class> x(h_.cols());
        std::uniform_int_distribution<int> coef(-4, 4);
        for (std::size_t i = 0; i < h_.rows(); ++i) {
            const int c = coef(rng_);
            if (c)
                for (std::size_t j = 0; j < x.size(); ++j)
                    x[j] += c * h_(i, j);
        }
        return x;
    }
    bool exhausted() const { return count_ > h_.rows() + 8; }

  private:
    const IntMatrix& h_;
    std::size_t count_ = 0;
    std::mt19937_64 rng_{0x5eed};
};

/* HNF of span(rows of acc and extra) + modulus Z^m */
IntMatrix absorb(const IntMatrix& acc, const IntMatrix& extra, const mpz_class& modulus)
{
    IntMatrix g(acc.rows() + extra.rows(), extra.cols());
    for (std::size_t i = 0; i < acc.rows(); ++i)
        g.set_row(i, acc.row(i));
    for (std::size_t i = 0; i < extra.rows(); ++i)
        g.set_row(acc.rows() + i, extra.row(i));
    return hnf_modular(g, modulus);
}

/* inverse of the integral ideal with HNF h: {x : x h_i in O_K for all i} */
FractionalIdeal integral_inverse(const Field& f, const IntMatrix& h)
{
    const std::size_t m = f->degree();
    const mpz_class norm = diagonal_product(h);
    /* the intersection of the lattices Z^m M_x^{-1} is dual to the sum of the Z^m M_x^t */
    IntMatrix s(0, m);
    ElementStream xs(h);
    do {
        if (xs.exhausted())
            throw InternalInconsistency("ideal inverse did not reach the expected index");
        s = absorb(s, int_mult_matrix(f, xs.next()).transpose(), norm);
    } while (diagonal_product(s) != norm);
    return FractionalIdeal::from_generators(f, invert(to_rational(s)).transpose());
}

struct Caches {
    std::mutex mu;
    std::map<std::string, FractionalIdeal> codifferent, different;
    std::map<std::pair<std::string, long>, FractionalIdeal> radical;
};

Caches& caches()
{
    static Caches c;
    return c;
}

FieldElement sqrt_pm_d(const Field& f)
{
    const long d = f->parameter();
    const bool shifted = f->kind() == FieldKind::real_quadratic ? d % 4 == 1 : d % 4 == 3;
    return shifted ? FieldElement(f, {-1, 2}) : FieldElement(f, {0, 1});
}

FractionalIdeal compute_radical(const Field& f, long p)
{
    if (auto g = radical_generator(f, p))
        return principal(*g);
    const long n = f->parameter();
    switch (f->kind()) {
    case FieldKind::real_quadratic:
    case FieldKind::imag_quadratic: {
        FieldElement gamma = sqrt_pm_d(f);
        if (p == 2 && n % 2 == 1)
            gamma += FieldElement::from_rational(f, 1);
        IntMatrix gens(4, 2);
        gens(0, 0) = p;
        gens(1, 1) = p;
        const RatMatrix mg = gamma.multiplication_matrix();
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                gens(2 + i, j) = mg(i, j).get_num();
        return FractionalIdeal(f, hnf_modular(gens, mpz_class(p * p)), 1);
    }
    case FieldKind::cyclotomic:
        break;
    case FieldKind::real_cyclotomic:
        /* J_p O_L is the radical of p in L, i.e. (1 - zeta_{p^r}); contract it back */
        return contract(radical_above(f->ambient(), p), f);
    }
    throw InternalInconsistency("unreachable");
}

mpq_class parse_rational(std::string_view s)
{
    if (s.empty())
        throw SpecError("empty coefficient in recipe");
    mpq_class q;
    if (q.set_str(std::string(s), 10) != 0)
        throw SpecError("bad coefficient '" + std::string(s) + "' in recipe");
    if (sgn(q.get_den()) == 0)
        throw SpecError("zero denominator in recipe");
    q.canonicalize();
    return q;
}

long parse_int(std::string_view s, std::string_view whole)
{
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(std::string(s), &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (s.empty() || pos != s.size())
        throw SpecError("malformed recipe '" + std::string(whole) + "'");
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------

FractionalIdeal::FractionalIdeal(Field field, IntMatrix numerator, mpz_class denominator)
    : field_(std::move(field)), num_(std::move(numerator)), den_(std::move(denominator))
{
    const std::size_t m = field_->degree();
    if (num_.rows() != m || num_.cols() != m)
        throw ShapeError("ideal numerator must be square of the field degree");
    if (sgn(den_) <= 0)
        throw ShapeError("ideal denominator must be positive");
    for (std::size_t i = 0; i < m; ++i)
        if (sgn(num_(i, i)) == 0)
            throw ZeroIdeal("numerator is not of full rank");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), content(num_).get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                num_(i, j) /= g;
        den_ /= g;
    }
}

FractionalIdeal FractionalIdeal::from_generators(const Field& field, const RatMatrix& rows)
{
    const mpz_class l = common_denominator(rows);
    return {field, lattice_hnf(scale_to_integer(rows, l)), l};
}

RatMatrix FractionalIdeal::basis() const
{
    RatMatrix b = to_rational(num_);
    const mpq_class inv(1, den_);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            b(i, j) *= inv;
    return b;
}

std::vector<FieldElement> FractionalIdeal::basis_elements() const
{
    const RatMatrix b = basis();
    std::vector<FieldElement> out;
    for (std::size_t i = 0; i < b.rows(); ++i)
        out.emplace_back(field_, b.row(i));
    return out;
}

mpq_class FractionalIdeal::norm() const
{
    mpz_class d = 1, dm = 1;
    for (std::size_t i = 0; i < num_.rows(); ++i) {
        d *= num_(i, i);
        dm *= den_;
    }
    mpq_class q(d, dm);
    q.canonicalize();
    return q;
}

bool FractionalIdeal::contains(const FieldElement& x) const
{
    if (!same_field(field_, x.field()))
        throw FieldMismatch(field_->spec() + " vs " + x.field()->spec());
    std::vector<mpq_class> v = x.coefficients();
    for (auto& c : v)
        c *= den_;
    for (const auto& y : solve_upper(num_, v))
        if (y.get_den() != 1)
            return false;
    return true;
}

bool FractionalIdeal::subset_of(const FractionalIdeal& o) const
{
    for (const auto& x : basis_elements())
        if (!o.contains(x))
            return false;
    return true;
}

bool FractionalIdeal::operator==(const FractionalIdeal& o) const
{
    return same_field(field_, o.field_) && den_ == o.den_ && num_ == o.num_;
}

std::string FractionalIdeal::to_string() const
{
    std::ostringstream os;
    os << "(1/" << den_ << ")[";
    for (std::size_t i = 0; i < num_.rows(); ++i) {
        os << (i ? ";" : "");
        for (std::size_t j = 0; j < num_.cols(); ++j)
            os << (j ? "," : "") << num_(i, j);
    }
    os << "]";
    return os.str();
}

FractionalIdeal unit_ideal(const Field& f) { return {f, IntMatrix::identity(f->degree()), 1}; }

FractionalIdeal principal(const FieldElement& gamma)
{
    if (gamma.is_zero())
        throw ZeroIdeal("principal ideal of zero");
    return FractionalIdeal::from_generators(gamma.field(), gamma.multiplication_matrix());
}

FractionalIdeal ideal_mul(const FractionalIdeal& a, const FractionalIdeal& b)
{
    if (!same_field(a.field(), b.field()))
        throw FieldMismatch(a.field()->spec() + " vs " + b.field()->spec());
    const Field& f = a.field();
    const std::size_t m = f->degree();
    /* AB = sum of x B over generators x of A; its index is N(A) N(B) */
    const mpz_class index = diagonal_product(a.numerator()) * diagonal_product(b.numerator());
    IntMatrix h(0, m), xb(m, m);
    ElementStream xs(a.numerator());
    do {
        if (xs.exhausted())
            throw InternalInconsistency("ideal product did not reach the expected index");
        const auto x = xs.next();
        for (std::size_t j = 0; j < m; ++j)
            xb.set_row(j, f->mul(x, b.numerator().row(j)));
        h = absorb(h, xb, index);
    } while (diagonal_product(h) != index);
    return {f, std::move(h), a.denominator() * b.denominator()};
}

FractionalIdeal ideal_inverse(const FractionalIdeal& a)
{
    const FractionalIdeal inv = integral_inverse(a.field(), a.numerator());
    IntMatrix num = inv.numerator();
    for (std::size_t i = 0; i < num.rows(); ++i)
        for (std::size_t j = 0; j < num.cols(); ++j)
            num(i, j) *= a.denominator();
    return {a.field(), std::move(num), inv.denominator()};
}

FractionalIdeal ideal_pow(const FractionalIdeal& a, long k)
{
    FractionalIdeal base = k < 0 ? ideal_inverse(a) : a;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    FractionalIdeal r = unit_ideal(a.field());
    while (e) {
        if (e & 1)
            r = ideal_mul(r, base);
        e >>= 1;
        if (e)
            base = ideal_mul(base, base);
    }
    return r;
}

FractionalIdeal conj(const FractionalIdeal& a)
{
    const Field& f = a.field();
    if (f->is_totally_real())
        return a;
    const IntMatrix c = a.numerator() * f->conjugation();
    mpz_class index = 1;
    for (std::size_t i = 0; i < c.rows(); ++i)
        index *= a.numerator()(i, i);
    return {f, hnf_modular(c, index), a.denominator()};
}

RatMatrix form_matrix(const FieldElement& alpha)
{
    const Field& f = alpha.field();
    return alpha.multiplication_matrix() * to_rational(f->trace_form()) * to_rational(f->conjugation().transpose());
}

RatMatrix gram_matrix(const FractionalIdeal& a, const FieldElement& alpha)
{
    if (!same_field(a.field(), alpha.field()))
        throw FieldMismatch(a.field()->spec() + " vs " + alpha.field()->spec());
    const RatMatrix b = a.basis();
    return b * form_matrix(alpha) * b.transpose();
}

mpq_class gram_determinant(const FractionalIdeal& a, const FieldElement& alpha)
{
    if (!same_field(a.field(), alpha.field()))
        throw FieldMismatch(a.field()->spec() + " vs " + alpha.field()->spec());
    const mpq_class n = a.norm();
    return n * n * det(form_matrix(alpha));
}

FractionalIdeal trace_dual(const FractionalIdeal& a, const FieldElement& alpha)
{
    if (!is_totally_positive(alpha))
        throw FormError("alpha " + alpha.to_string() + " is not totally positive");
    /* dual basis x_k with b(x_k, w_j) = delta_kj: rows of G^{-1} B. With
     * G = g / c and B = N / d these are c g^{-1} N / d, and the solve hands
     * back |det g|, which fixes the index for the modular HNF. */
    const Field& f = a.field();
    const std::size_t m = f->degree();
    const RatMatrix gram = gram_matrix(a, alpha);
    const mpz_class c = common_denominator(gram);
    const IntSolution s = solve_integer(scale_to_integer(gram, c), a.numerator());
    RatMatrix rows(m, m);
    const mpz_class den = s.den * a.denominator();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            rows(i, j) = mpq_class(c * s.num(i, j), den);
            rows(i, j).canonicalize();
        }
    const mpz_class l = common_denominator(rows);
    mpz_class lm, cm, dm;
    mpz_pow_ui(lm.get_mpz_t(), l.get_mpz_t(), m);
    mpz_pow_ui(cm.get_mpz_t(), c.get_mpz_t(), m);
    mpz_pow_ui(dm.get_mpz_t(), a.denominator().get_mpz_t(), m);
    mpq_class index(lm * diagonal_product(a.numerator()) * cm, dm * s.den);
    index.canonicalize();
    if (index.get_den() != 1)
        throw InternalInconsistency("dual basis has non-integral index");
    return {f, hnf_modular(scale_to_integer(rows, l), index.get_num()), l};
}

FractionalIdeal codifferent(const Field& f)
{
    auto& c = caches();
    {
        std::lock_guard lock(c.mu);
        if (auto it = c.codifferent.find(f->spec()); it != c.codifferent.end())
            return it->second;
    }
    FractionalIdeal cd = FractionalIdeal::from_generators(f, invert(to_rational(f->trace_form())));
    std::lock_guard lock(c.mu);
    return c.codifferent.emplace(f->spec(), std::move(cd)).first->second;
}

FractionalIdeal different(const Field& f)
{
    auto& c = caches();
    {
        std::lock_guard lock(c.mu);
        if (auto it = c.different.find(f->spec()); it != c.different.end())
            return it->second;
    }
    FractionalIdeal d = ideal_inverse(codifferent(f));
    std::lock_guard lock(c.mu);
    return c.different.emplace(f->spec(), std::move(d)).first->second;
}

FractionalIdeal ideal_inverse_by_duality(const FractionalIdeal& a)
{
    return ideal_mul(different(a.field()), trace_dual(conj(a), FieldElement::from_rational(a.field(), 1)));
}

FractionalIdeal radical_above(const Field& f, long p)
{
    if (!f->ramification().count(p))
        throw NotRamified(std::to_string(p) + " is not ramified in " + f->spec());
    auto& c = caches();
    const auto key = std::make_pair(f->spec(), p);
    {
        std::lock_guard lock(c.mu);
        if (auto it = c.radical.find(key); it != c.radical.end())
            return it->second;
    }
    FractionalIdeal j = compute_radical(f, p);
    std::lock_guard lock(c.mu);
    return c.radical.emplace(key, std::move(j)).first->second;
}

std::optional<FieldElement> radical_generator(const Field& f, long p)
{
    if (!f->ramification().count(p))
        throw NotRamified(std::to_string(p) + " is not ramified in " + f->spec());
    const long n = f->parameter();
    if (f->kind() == FieldKind::cyclotomic) {
        const long q = ipow(p, factorize(n).at(p));
        const auto z = f->theta_power(static_cast<std::size_t>(n / q));
        std::vector<mpq_class> c(f->degree());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = -z[i];
        c[0] += 1;
        return FieldElement(f, std::move(c));
    }
    if (f->kind() == FieldKind::real_cyclotomic && factorize(n).size() == 1)
        return two_minus_two_cos(f, n);
    return std::nullopt;
}

FractionalIdeal radical_power(const Field& f, long p, long k)
{
    const auto it = f->ramification().find(p);
    if (it == f->ramification().end())
        throw NotRamified(std::to_string(p) + " is not ramified in " + f->spec());
    /* J_p^e = (p): write k = q e + r with 0 <= r < e */
    const long e = it->second;
    long q = k / e, r = k % e;
    if (r < 0) {
        r += e;
        --q;
    }
    const FractionalIdeal j = ideal_pow(radical_above(f, p), r);
    mpz_class pq;
    mpz_ui_pow_ui(pq.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(q < 0 ? -q : q));
    if (q < 0)
        return {f, j.numerator(), j.denominator() * pq};
    IntMatrix num = j.numerator();
    for (std::size_t a = 0; a < num.rows(); ++a)
        for (std::size_t b = 0; b < num.cols(); ++b)
            num(a, b) *= pq;
    return {f, std::move(num), j.denominator()};
}

FractionalIdeal contract(const FractionalIdeal& ambient_ideal, const Field& k)
{
    if (k->kind() != FieldKind::real_cyclotomic || !same_field(k->ambient(), ambient_ideal.field()))
        throw FieldMismatch("cannot contract from " + ambient_ideal.field()->spec() + " to " + k->spec());
    const std::size_t m = k->degree();
    /* x in O_K lies in A iff coords(x) * N is integral, N = Lambda * d * H^{-1} */
    RatMatrix n = to_rational(k->lift_matrix()) * invert(to_rational(ambient_ideal.numerator()));
    for (std::size_t i = 0; i < n.rows(); ++i)
        for (std::size_t j = 0; j < n.cols(); ++j)
            n(i, j) *= ambient_ideal.denominator();
    const mpz_class l = common_denominator(n);
    const IntMatrix cols = scale_to_integer(n.transpose(), l);
    IntMatrix gens(cols.rows() + m, m);
    for (std::size_t i = 0; i < cols.rows(); ++i)
        gens.set_row(i, cols.row(i));
    for (std::size_t i = 0; i < m; ++i)
        gens(cols.rows() + i, i) = l;
    mpz_class modulus = 1;
    for (std::size_t i = 0; i < m; ++i)
        modulus *= l;
    const IntMatrix s = hnf_modular(gens, modulus);
    /* the contraction is the dual of (1/l) * s */
    RatMatrix dual = invert(to_rational(s)).transpose();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            dual(i, j) *= l;
    return FractionalIdeal::from_generators(k, dual);
}

long different_valuation(const Field& f, long p)
{
    if (!f->ramification().count(p))
        throw NotRamified(std::to_string(p) + " is not ramified in " + f->spec());
    const long n = f->parameter();
    switch (f->kind()) {
    case FieldKind::real_quadratic:
    case FieldKind::imag_quadratic:
        if (p != 2)
            return 1;
        return n % 2 == 0 ? 3 : 2;
    case FieldKind::cyclotomic:
    case FieldKind::real_cyclotomic: {
        const auto fac = factorize(n);
        const long r = fac.at(p);
        const long full = ipow(p, r - 1) * (p * r - r - 1);
        if (f->kind() == FieldKind::cyclotomic || fac.size() > 1)
            return full;
        /* Q(zeta_{p^r}) / K is ramified at p with different (zeta - zeta^{-1}) */
        return p == 2 ? (r - 1) * ipow(2, static_cast<int>(r - 2)) - 1 : (full - 1) / 2;
    }
    }
    throw InternalInconsistency("unreachable");
}

long valuation(const FractionalIdeal& a, long p)
{
    const Field& f = a.field();
    const auto it = f->ramification().find(p);
    if (it == f->ramification().end())
        throw NotRamified(std::to_string(p) + " is not ramified in " + f->spec());
    const long e = it->second, m = static_cast<long>(f->degree());
    /* N(J_p) = p^{m/e} */
    const long vn = padic_valuation(a.norm(), p);
    if ((vn * e) % m != 0)
        throw Unsupported("unequal exponents above " + std::to_string(p));
    const long v = vn * e / m;
    const FractionalIdeal rest = ideal_mul(a, radical_power(f, p, -v));
    if (mpz_divisible_ui_p(rest.denominator().get_mpz_t(), static_cast<unsigned long>(p)) || padic_valuation(rest.norm(), p) != 0)
        throw Unsupported("unequal exponents above " + std::to_string(p));
    return v;
}

// ---------------------------------------------------------------------------

IdealRecipe IdealRecipe::parse(std::string_view text)
{
    IdealRecipe r;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s.push_back(ch);
    if (s.empty() || s == "1")
        return r;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        Factor fac;
        std::size_t end;
        if (pos < s.size() && s[pos] == '(') {
            const std::size_t close = s.find(')', pos);
            if (close == std::string::npos)
                throw SpecError("unbalanced parenthesis in recipe '" + s + "'");
            std::string_view inner(s.data() + pos + 1, close - pos - 1);
            std::size_t start = 0;
            while (true) {
                const std::size_t comma = inner.find(',', start);
                fac.element.push_back(parse_rational(inner.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            end = close + 1;
        } else if (pos < s.size() && s[pos] == 'P') {
            end = pos + 1;
            while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
                ++end;
            fac.prime = parse_int(std::string_view(s).substr(pos + 1, end - pos - 1), s);
            if (!is_prime(fac.prime))
                throw SpecError("P" + std::to_string(fac.prime) + " does not name a prime");
        } else {
            throw SpecError("malformed recipe '" + s + "'");
        }
        std::size_t next = s.find('*', end);
        if (next == std::string::npos)
            next = s.size();
        if (end < next) {
            if (s[end] != '^')
                throw SpecError("malformed recipe '" + s + "'");
            fac.exponent = parse_int(std::string_view(s).substr(end + 1, next - end - 1), s);
        }
        if (fac.exponent == 0)
            throw SpecError("zero exponent in recipe '" + s + "'");
        r.factors.push_back(std::move(fac));
        pos = next + 1;
        if (next == s.size())
            break;
    }
    return r;
}

IdealRecipe IdealRecipe::radicals(const std::vector<std::pair<long, long>>& exps)
{
    std::map<long, long, std::greater<>> sorted;
    for (const auto& [p, k] : exps)
        sorted[p] += k;
    IdealRecipe r;
    for (const auto& [p, k] : sorted)
        if (k != 0)
            r.factors.push_back({p, {}, k});
    return r;
}

std::string IdealRecipe::format() const
{
    if (factors.empty())
        return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Factor& f = factors[i];
        os << (i ? "*" : "");
        if (f.prime) {
            os << 'P' << f.prime;
        } else {
            os << '(';
            for (std::size_t j = 0; j < f.element.size(); ++j)
                os << (j ? "," : "") << f.element[j];
            os << ')';
        }
        if (f.exponent != 1)
            os << '^' << f.exponent;
    }
    return os.str();
}

long IdealRecipe::exponent_of(long p) const
{
    long k = 0;
    for (const auto& f : factors)
        if (f.prime == p)
            k += f.exponent;
    return k;
}

bool IdealRecipe::operator==(const IdealRecipe& o) const { return format() == o.format(); }

FractionalIdeal realize(const IdealRecipe& recipe, const Field& f)
{
    FractionalIdeal acc = unit_ideal(f);
    for (const auto& fac : recipe.factors) {
        if (fac.prime) {
            acc = ideal_mul(acc, radical_power(f, fac.prime, fac.exponent));
        } else {
            if (fac.element.size() != f->degree())
                throw SpecError("principal factor needs " + std::to_string(f->degree()) + " coefficients");
            acc = ideal_mul(acc, principal(FieldElement(f, fac.element).pow(fac.exponent)));
        }
    }
    return acc;
}

}  // namespace arakelov
