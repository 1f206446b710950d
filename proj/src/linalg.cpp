#include "arakelov/linalg.hpp"

#include <algorithm>
#include <utility>

namespace arakelov {

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init)
{
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_)
            throw ShapeError("ragged initializer");
        for (const auto& x : r)
            data_.push_back(x);
    }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

template <typename T>
std::vector<T> Matrix<T>::row(std::size_t i) const
{
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
}

template <typename T>
void Matrix<T>::set_row(std::size_t i, const std::vector<T>& v)
{
    if (v.size() != cols_)
        throw ShapeError("row length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
}

template <typename T>
void Matrix<T>::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t k = 0; k < cols_; ++k)
        std::swap((*this)(i, k), (*this)(j, k));
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw ShapeError("product of incompatible matrices");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0)
                continue;
            const mpz_srcptr x = a(i, k).get_mpz_t();
            for (std::size_t j = 0; j < b.cols(); ++j)
                mpz_addmul(c(i, j).get_mpz_t(), x, b(k, j).get_mpz_t());
        }
    return c;
}

/* clear denominators and multiply over Z */
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b)
{
    if (a.cols() != b.rows())
        throw ShapeError("product of incompatible matrices");
    const mpz_class la = common_denominator(a), lb = common_denominator(b);
    const IntMatrix c = scale_to_integer(a, la) * scale_to_integer(b, lb);
    const mpz_class l = la * lb;
    RatMatrix r(c.rows(), c.cols());
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) {
            r(i, j) = mpq_class(c(i, j), l);
            r(i, j).canonicalize();
        }
    return r;
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

template class Matrix<mpz_class>;
template class Matrix<mpq_class>;
template std::ostream& operator<<(std::ostream&, const IntMatrix&);
template std::ostream& operator<<(std::ostream&, const RatMatrix&);

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = m(i, j);
    return r;
}

mpz_class common_denominator(const RatMatrix& m)
{
    mpz_class l = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    return l;
}

IntMatrix scale_to_integer(const RatMatrix& m, const mpz_class& denominator)
{
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpq_class x = m(i, j) * denominator;
            if (x.get_den() != 1)
                throw ShapeError("denominator does not clear matrix");
            r(i, j) = x.get_num();
        }
    return r;
}

namespace {

/* floor division for mpz */
mpz_class fdiv(const mpz_class& a, const mpz_class& b)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/* row i -= q * row j, in both the working matrix and the transform */
void row_submul(IntMatrix& a, std::size_t i, std::size_t j, const mpz_class& q, std::size_t from = 0)
{
    if (q == 0)
        return;
    for (std::size_t k = from; k < a.cols(); ++k)
        a(i, k) -= q * a(j, k);
}

}  // namespace

HnfResult hnf(const IntMatrix& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            /* bring the smallest nonzero |entry| of column c into row r */
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (sgn(a(i, c)) != 0 && (best == rows || abs(a(i, c)) < abs(a(best, c))))
                    best = i;
            if (best == rows)
                break;
            a.swap_rows(r, best);
            u.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (sgn(a(i, c)) == 0)
                    continue;
                mpz_class q = fdiv(a(i, c), a(r, c));
                row_submul(a, i, r, q);
                row_submul(u, i, r, q);
                if (sgn(a(i, c)) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (sgn(a(r, c)) == 0)
            continue;
        if (sgn(a(r, c)) < 0) {
            for (std::size_t k = 0; k < cols; ++k)
                a(r, k) = -a(r, k);
            for (std::size_t k = 0; k < rows; ++k)
                u(r, k) = -u(r, k);
        }
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q = fdiv(a(i, c), a(r, c));
            row_submul(a, i, r, q);
            row_submul(u, i, r, q);
        }
        ++r;
    }
    if (r < rows)
        throw RankError("matrix does not have full row rank");
    return {std::move(a), std::move(u)};
}

IntMatrix hnf_modular(const IntMatrix& gens, const mpz_class& modulus)
{
    const std::size_t n = gens.cols();
    if (sgn(modulus) == 0)
        throw RankError("zero modulus");
    const mpz_class d = abs(modulus);
    IntMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        h(i, i) = d;

    /* reduce row c of h by the rows below it, column by column */
    auto reduce_row = [&](std::size_t c) {
        for (std::size_t j = c + 1; j < n; ++j) {
            if (sgn(h(c, j)) == 0 || (h(c, j) >= 0 && h(c, j) < h(j, j)))
                continue;
            row_submul(h, c, j, fdiv(h(c, j), h(j, j)), j);
        }
    };

    std::vector<mpz_class> v(n), w(n);
    mpz_class g, s, t, q, a_g, b_g;
    for (std::size_t gi = 0; gi < gens.rows(); ++gi) {
        for (std::size_t k = 0; k < n; ++k)
            mpz_fdiv_r(v[k].get_mpz_t(), gens(gi, k).get_mpz_t(), d.get_mpz_t());
        for (std::size_t c = 0; c < n; ++c) {
            if (sgn(v[c]) == 0)
                continue;
            const mpz_class a = h(c, c);
            if (mpz_divisible_p(v[c].get_mpz_t(), a.get_mpz_t())) {
                q = v[c] / a;
                for (std::size_t k = c; k < n; ++k)
                    v[k] -= q * h(c, k);
            } else {
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), v[c].get_mpz_t());
                a_g = a / g;
                b_g = v[c] / g;
                for (std::size_t k = c; k < n; ++k) {
                    w[k] = s * h(c, k) + t * v[k];
                    v[k] = a_g * v[k] - b_g * h(c, k);
                }
                for (std::size_t k = c; k < n; ++k)
                    h(c, k) = w[k];
                reduce_row(c);
            }
            for (std::size_t k = c + 1; k < n; ++k)
                mpz_fdiv_r(v[k].get_mpz_t(), v[k].get_mpz_t(), d.get_mpz_t());
        }
    }
    for (std::size_t c = n; c-- > 0;)
        reduce_row(c);
    return h;
}

namespace {

mpz_class det_bareiss(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    IntMatrix a = m;
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(a(p, k)) == 0)
                ++p;
            if (p == n)
                return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class x = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace

mpz_class det(const IntMatrix& m)
{
    if (!m.square())
        throw ShapeError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    return det_bareiss(m);
}

mpq_class det(const RatMatrix& m)
{
    if (!m.square())
        throw ShapeError("determinant of non-square matrix");
    const mpz_class l = common_denominator(m);
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), l.get_mpz_t(), m.rows());
    mpq_class r(det(scale_to_integer(m, l)), scale);
    r.canonicalize();
    return r;
}

IntSolution solve_integer(const IntMatrix& a, const IntMatrix& b)
{
    if (!a.square() || a.rows() != b.rows())
        throw ShapeError("solve_integer needs a square system");
    const std::size_t n = a.rows(), k = b.cols(), w = n + k;
    IntMatrix m(n, w);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = a(i, j);
        for (std::size_t j = 0; j < k; ++j)
            m(i, n + j) = b(i, j);
    }
    /* Bareiss elimination: m(i, i) becomes the i-th leading minor */
    mpz_class prev = 1, x;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0)
            ++p;
        if (p == n)
            throw SingularError("matrix is singular");
        m.swap_rows(c, p);
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < w; ++j) {
                mpz_mul(x.get_mpz_t(), m(i, j).get_mpz_t(), m(c, c).get_mpz_t());
                mpz_submul(x.get_mpz_t(), m(i, c).get_mpz_t(), m(c, j).get_mpz_t());
                mpz_divexact(m(i, j).get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, c) = 0;
        }
        prev = m(c, c);
    }
    /* back substitution for d * x, which is integral by Cramer's rule */
    IntSolution s{IntMatrix(n, k), prev};
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = n; i-- > 0;) {
            mpz_mul(x.get_mpz_t(), s.den.get_mpz_t(), m(i, n + j).get_mpz_t());
            for (std::size_t t = i + 1; t < n; ++t)
                mpz_submul(x.get_mpz_t(), m(i, t).get_mpz_t(), s.num(t, j).get_mpz_t());
            mpz_divexact(s.num(i, j).get_mpz_t(), x.get_mpz_t(), m(i, i).get_mpz_t());
        }
    if (sgn(s.den) < 0) {
        s.den = -s.den;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j)
                s.num(i, j) = -s.num(i, j);
    }
    return s;
}

RatMatrix invert(const RatMatrix& m)
{
    if (!m.square())
        throw ShapeError("inverse of non-square matrix");
    /* (A / l)^{-1} = l * A^{-1} */
    const mpz_class l = common_denominator(m);
    const IntSolution s = solve_integer(scale_to_integer(m, l), IntMatrix::identity(m.rows()));
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) {
            r(i, j) = mpq_class(s.num(i, j) * l, s.den);
            r(i, j).canonicalize();
        }
    return r;
}

std::optional<std::vector<mpq_class>> solve_left(const RatMatrix& a, const std::vector<mpq_class>& b)
{
    /* y * a = b  <=>  a^t * y^t = b^t; eliminate on the augmented system */
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != n)
        throw ShapeError("right-hand side length mismatch");
    if (m == n) {
        RatMatrix at(n, n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                at(i, j) = a(j, i);
            at(i, n) = b[i];
        }
        const mpz_class l = common_denominator(at);
        const IntMatrix ai = scale_to_integer(at, l);
        IntMatrix lhs(n, n), rhs(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                lhs(i, j) = ai(i, j);
            rhs(i, 0) = ai(i, n);
        }
        try {
            const IntSolution s = solve_integer(lhs, rhs);
            std::vector<mpq_class> y(n);
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = mpq_class(s.num(i, 0), s.den);
                y[i].canonicalize();
            }
            return y;
        } catch (const SingularError&) {
            throw RankError("solve_left requires full row rank");
        }
    }
    RatMatrix aug(n, m + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            aug(i, j) = a(j, i);
        aug(i, m) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        std::size_t p = r;
        while (p < n && sgn(aug(p, c)) == 0)
            ++p;
        if (p == n)
            continue;
        aug.swap_rows(r, p);
        const mpq_class piv = aug(r, c);
        for (std::size_t k = c; k <= m; ++k)
            aug(r, k) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || sgn(aug(i, c)) == 0)
                continue;
            const mpq_class f = aug(i, c);
            for (std::size_t k = c; k <= m; ++k)
                aug(i, k) -= f * aug(r, k);
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (r < m)
        throw RankError("solve_left requires full row rank");
    for (std::size_t i = r; i < n; ++i)
        if (sgn(aug(i, m)) != 0)
            return std::nullopt;
    std::vector<mpq_class> y(m);
    for (std::size_t i = 0; i < r; ++i)
        y[pivot_col[i]] = aug(i, m);
    return y;
}

namespace {

void check_symmetric(const RatMatrix& g)
{
    if (!g.square())
        throw ShapeError("Gram matrix must be square");
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (g(i, j) != g(j, i))
                throw FormError("Gram matrix is not symmetric");
}

/* nearest integer to a/b, ties rounded down */
mpz_class round_div(const mpz_class& a, const mpz_class& b)
{
    mpz_class num = 2 * a + b, den = 2 * b, q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

Cholesky cholesky(const RatMatrix& gram)
{
    check_symmetric(gram);
    const std::size_t n = gram.rows();
    Cholesky out{RatMatrix::identity(n), std::vector<mpq_class>(n)};
    /* fraction-free elimination on c * gram: a(k, k) after step k is the
     * leading minor D_{k+1}, pivot_k = D_{k+1} / (c D_k), r(k, j) = a(k, j) / a(k, k) */
    const mpz_class c = common_denominator(gram);
    IntMatrix a = scale_to_integer(gram, c);
    mpz_class prev = 1, t;
    for (std::size_t k = 0; k < n; ++k) {
        if (sgn(a(k, k)) <= 0)
            throw FormError("form is not positive definite");
        out.pivots[k] = mpq_class(a(k, k), prev * c);
        out.pivots[k].canonicalize();
        for (std::size_t j = k + 1; j < n; ++j) {
            out.r(k, j) = mpq_class(a(k, j), a(k, k));
            out.r(k, j).canonicalize();
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                t = a(k, k) * a(i, j);
                mpz_submul(t.get_mpz_t(), a(k, i).get_mpz_t(), a(k, j).get_mpz_t());
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(j, i) = a(i, j);
            }
        prev = a(k, k);
    }
    return out;
}

bool is_lll_reduced(const RatMatrix& gram, const mpq_class& delta)
{
    const Cholesky c = cholesky(gram);
    const std::size_t n = gram.rows();
    const mpq_class half(1, 2);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (abs(c.r(i, j)) > half)
                return false;
    for (std::size_t k = 1; k < n; ++k) {
        const mpq_class mu = c.r(k - 1, k);
        if (c.pivots[k] < (delta - mu * mu) * c.pivots[k - 1])
            return false;
    }
    return true;
}

LllResult lll_reduce(const RatMatrix& gram)
{
    check_symmetric(gram);
    const std::size_t n = gram.rows();
    /* integral Gram-form LLL (Cohen, Algorithm 2.6.7) on a scaled copy */
    const mpz_class scale = common_denominator(gram);
    IntMatrix b = scale_to_integer(gram, scale);
    IntMatrix h = IntMatrix::identity(n);  // rows: new basis in old coordinates
    if (n == 0)
        return {gram, h};

    const mpz_class delta_num = lll_delta.get_num(), delta_den = lll_delta.get_den();
    std::vector<mpz_class> d(n + 1);  // d[0] = 1, d[i+1] = det of leading i+1 block
    IntMatrix lambda(n, n);
    d[0] = 1;
    d[1] = b(0, 0);
    if (sgn(d[1]) <= 0)
        throw FormError("form is not positive definite");

    auto sub_vec = [&](std::size_t k, std::size_t l, const mpz_class& q) {
        // b_k <- b_k - q b_l in Gram form (row then column) and in h
        for (std::size_t j = 0; j < n; ++j)
            b(k, j) -= q * b(l, j);
        for (std::size_t j = 0; j < n; ++j)
            b(j, k) -= q * b(j, l);
        row_submul(h, k, l, q);
    };

    auto red = [&](std::size_t k, std::size_t l) {
        mpz_class two_lambda = 2 * lambda(k, l);
        if (abs(two_lambda) <= d[l + 1])
            return;
        const mpz_class q = round_div(lambda(k, l), d[l + 1]);
        sub_vec(k, l, q);
        lambda(k, l) -= q * d[l + 1];
        for (std::size_t i = 0; i < l; ++i)
            lambda(k, i) -= q * lambda(l, i);
    };

    std::size_t kmax = 0;
    auto swap = [&](std::size_t k) {
        h.swap_rows(k, k - 1);
        b.swap_rows(k, k - 1);
        for (std::size_t j = 0; j < n; ++j)
            std::swap(b(j, k), b(j, k - 1));
        for (std::size_t j = 0; j + 1 < k; ++j)
            std::swap(lambda(k, j), lambda(k - 1, j));
        const mpz_class lam = lambda(k, k - 1);
        const mpz_class bb = (d[k - 1] * d[k + 1] + lam * lam) / d[k];
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            const mpz_class t = lambda(i, k);
            lambda(i, k) = (d[k + 1] * lambda(i, k - 1) - lam * t) / d[k];
            lambda(i, k - 1) = (bb * t + lam * lambda(i, k)) / d[k + 1];
        }
        d[k] = bb;
    };

    std::size_t k = 1;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 0; j <= k; ++j) {
                mpz_class u = b(k, j);
                for (std::size_t i = 0; i < j; ++i)
                    u = (d[i + 1] * u - lambda(k, i) * lambda(j, i)) / d[i];
                if (j < k)
                    lambda(k, j) = u;
                else {
                    if (sgn(u) <= 0)
                        throw FormError("form is not positive definite");
                    d[k + 1] = u;
                }
            }
        }
        for (;;) {
            red(k, k - 1);
            const mpz_class& lam = lambda(k, k - 1);
            // Lovasz: d_k d_{k-2} >= delta d_{k-1}^2 - lambda^2 (1-based)
            const mpz_class lhs = delta_den * d[k + 1] * d[k - 1];
            const mpz_class rhs = delta_num * d[k] * d[k] - delta_den * lam * lam;
            if (lhs >= rhs)
                break;
            swap(k);
            if (k > 1)
                --k;
        }
        for (std::size_t l = k - 1; l-- > 0;)
            red(k, l);
        ++k;
    }

    RatMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = mpq_class(b(i, j), scale);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j).canonicalize();
    return {std::move(out), h.transpose()};
}

}  // namespace arakelov
