#include "doctest.h"

#include <random>

#include "arakelov/linalg.hpp"

using namespace arakelov;

namespace {

mpz_class cofactor_det(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    if (n == 1)
        return m(0, 0);
    mpz_class s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j)
                    minor(i - 1, c++) = m(i, k);
        s += (j % 2 ? -1 : 1) * m(0, j) * cofactor_det(minor);
    }
    return s;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    return m;
}

bool is_hnf(const IntMatrix& h)
{
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (sgn(h(i, i)) <= 0)
            return false;
        for (std::size_t j = 0; j < i; ++j)
            if (sgn(h(i, j)) != 0)
                return false;
        for (std::size_t k = 0; k < i; ++k)
            if (sgn(h(k, i)) < 0 || h(k, i) >= h(i, i))
                return false;
    }
    return true;
}

/* Gauss-Lagrange reduction of a binary form; returns the two successive minima */
std::pair<mpq_class, mpq_class> lagrange(mpq_class a, mpq_class b, mpq_class c)
{
    // form a x^2 + 2 b x y + c y^2
    for (;;) {
        if (c < a) {
            std::swap(a, c);
            continue;
        }
        mpq_class q = b / a;
        mpz_class r;
        const mpz_class num = q.get_num() * 2 + q.get_den(), den = q.get_den() * 2;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (sgn(r) == 0)
            break;
        c = c - 2 * r * b + r * r * a;
        b = b - r * a;
    }
    return {a, c};
}

}  // namespace

TEST_CASE("hnf of identity")
{
    const auto r = hnf(IntMatrix::identity(3));
    CHECK(r.h == IntMatrix::identity(3));
    CHECK(r.u == IntMatrix::identity(3));
}

TEST_CASE("hnf small example")
{
    const IntMatrix m{{2, 0}, {1, 1}};
    const auto r = hnf(m);
    CHECK(r.u * m == r.h);
    CHECK(is_hnf(r.h));
    CHECK(abs(det(r.h)) == abs(cofactor_det(m)));
    CHECK(abs(det(r.u)) == 1);
    CHECK(r.h == IntMatrix{{1, 1}, {0, 2}});
}

TEST_CASE("hnf of a unimodular product is the identity")
{
    std::mt19937 rng(7);
    IntMatrix m = IntMatrix::identity(5);
    std::uniform_int_distribution<int> idx(0, 4), mult(-3, 3);
    for (int step = 0; step < 40; ++step) {
        const int i = idx(rng), j = idx(rng);
        if (i == j)
            continue;
        IntMatrix e = IntMatrix::identity(5);
        e(i, j) = mult(rng);
        m = e * m;
    }
    CHECK(abs(cofactor_det(m)) == 1);
    CHECK(hnf(m).h == IntMatrix::identity(5));
}

TEST_CASE("hnf is idempotent and matches the modular variant")
{
    std::mt19937 rng(11);
    for (int t = 0; t < 20; ++t) {
        const IntMatrix m = random_matrix(rng, 4, 4, 9);
        const mpz_class d = cofactor_det(m);
        if (sgn(d) == 0)
            continue;
        const auto r = hnf(m);
        CHECK(is_hnf(r.h));
        CHECK(r.u * m == r.h);
        CHECK(hnf(r.h).h == r.h);
        CHECK(hnf_modular(m, abs(d)) == r.h);
        CHECK(det(r.h) == abs(d));
    }
}

TEST_CASE("hnf rejects rank deficiency")
{
    CHECK_THROWS_AS(hnf(IntMatrix{{1, 2}, {2, 4}}), RankError);
}

TEST_CASE("det")
{
    CHECK(det(IntMatrix::identity(4)) == 1);
    CHECK(det(IntMatrix{{2, 1}, {1, 3}}) == 5);
    std::mt19937 rng(3);
    for (int t = 0; t < 10; ++t) {
        const IntMatrix m = random_matrix(rng, 6, 6, 20);
        CHECK(det(m) == cofactor_det(m));
    }
    CHECK_THROWS_AS(det(IntMatrix(2, 3)), ShapeError);
}

TEST_CASE("invert")
{
    CHECK(invert(RatMatrix::identity(3)) == RatMatrix::identity(3));
    const RatMatrix m{{2, 1}, {1, 3}};
    // adjugate over determinant
    const RatMatrix expect{{mpq_class(3, 5), mpq_class(-1, 5)}, {mpq_class(-1, 5), mpq_class(2, 5)}};
    CHECK(invert(m) == expect);
    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) {
        const RatMatrix r = to_rational(random_matrix(rng, 4, 4, 7));
        if (sgn(det(r)) == 0)
            continue;
        CHECK(r * invert(r) == RatMatrix::identity(4));
    }
    CHECK_THROWS_AS(invert(RatMatrix{{1, 2}, {2, 4}}), SingularError);
}

TEST_CASE("fraction-free solve")
{
    std::mt19937 rng(17);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 6;
        IntMatrix a = random_matrix(rng, n, n, 9);
        // force a zero leading pivot now and then
        if (t % 3 == 0 && n > 1)
            a(0, 0) = 0;
        const mpz_class d = cofactor_det(a);
        if (sgn(d) == 0) {
            CHECK_THROWS_AS(solve_integer(a, IntMatrix::identity(n)), SingularError);
            continue;
        }
        const IntMatrix b = random_matrix(rng, n, 3, 20);
        const IntSolution s = solve_integer(a, b);
        CHECK(s.den == abs(d));
        IntMatrix scaled = b;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                scaled(i, j) *= s.den;
        CHECK(a * s.num == scaled);
    }
}

TEST_CASE("solve_left")
{
    const RatMatrix a{{1, 2}, {3, 4}};
    const auto y = solve_left(a, {5, 6});
    REQUIRE(y);
    CHECK((*y)[0] * 1 + (*y)[1] * 3 == 5);
    CHECK((*y)[0] * 2 + (*y)[1] * 4 == 6);
    const RatMatrix r{{mpq_class(1, 2), 0, 1}, {2, mpq_class(-1, 3), 0}, {0, 1, 5}};
    const auto z = solve_left(r, {1, 2, 3});
    REQUIRE(z);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK((*z)[0] * r(0, j) + (*z)[1] * r(1, j) + (*z)[2] * r(2, j) == std::vector<mpq_class>{1, 2, 3}[j]);
    CHECK_THROWS_AS(solve_left(RatMatrix{{1, 2}, {2, 4}}, {1, 1}), RankError);
    const RatMatrix thin{{1, 0, 0}};
    CHECK(!solve_left(thin, {0, 1, 0}));
}

TEST_CASE("lll")
{
    const auto id = lll_reduce(RatMatrix::identity(3));
    CHECK(id.gram == RatMatrix::identity(3));
    CHECK(id.transform == IntMatrix::identity(3));

    const RatMatrix g{{4, 2}, {2, 4}};
    const auto r = lll_reduce(g);
    CHECK(to_rational(r.transform).transpose() * g * to_rational(r.transform) == r.gram);
    CHECK(abs(det(r.transform)) == 1);
    const auto [m1, m2] = lagrange(4, 2, 4);
    CHECK(r.gram(0, 0) == m1);
    CHECK(r.gram(1, 1) <= 4);
    CHECK(is_lll_reduced(r.gram));

    std::mt19937 rng(13);
    for (int t = 0; t < 10; ++t) {
        const IntMatrix b = random_matrix(rng, 5, 5, 30);
        if (sgn(det(b)) == 0)
            continue;
        const RatMatrix gram = to_rational(b * b.transpose());
        const auto red = lll_reduce(gram);
        CHECK(to_rational(red.transform).transpose() * gram * to_rational(red.transform) == red.gram);
        CHECK(abs(det(red.transform)) == 1);
        CHECK(det(red.gram) == det(gram));
        CHECK(is_lll_reduced(red.gram));
    }
    CHECK_THROWS_AS(lll_reduce(RatMatrix{{1, 2}, {2, 1}}), FormError);
}

TEST_CASE("lagrange oracle agrees with lll in dimension 2")
{
    std::mt19937 rng(17);
    for (int t = 0; t < 30; ++t) {
        const IntMatrix b = random_matrix(rng, 2, 2, 40);
        if (sgn(det(b)) == 0)
            continue;
        const RatMatrix gram = to_rational(b * b.transpose());
        const auto red = lll_reduce(gram);
        const auto [m1, m2] = lagrange(gram(0, 0), gram(0, 1), gram(1, 1));
        CHECK(red.gram(0, 0) == m1);
    }
}

TEST_CASE("cholesky")
{
    const auto c = cholesky(RatMatrix::identity(3));
    CHECK(c.r == RatMatrix::identity(3));
    CHECK(c.pivots == std::vector<mpq_class>{1, 1, 1});

    const auto h = cholesky(RatMatrix{{2, 1}, {1, 2}});
    CHECK(h.pivots == std::vector<mpq_class>{2, mpq_class(3, 2)});

    std::mt19937 rng(19);
    for (int t = 0; t < 10; ++t) {
        const IntMatrix b = random_matrix(rng, 4, 4, 10);
        if (sgn(det(b)) == 0)
            continue;
        const RatMatrix gram = to_rational(b * b.transpose());
        const auto f = cholesky(gram);
        RatMatrix d(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(f.pivots[i] > 0);
            d(i, i) = f.pivots[i];
        }
        CHECK(f.r.transpose() * d * f.r == gram);

        RatMatrix scaled = gram;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                scaled(i, j) *= mpq_class(3, 14);
        const auto g = cholesky(scaled);
        for (std::size_t i = 0; i < 4; ++i)
            d(i, i) = g.pivots[i];
        CHECK(g.r == f.r);
        CHECK(g.r.transpose() * d * g.r == scaled);
    }
    CHECK_THROWS_AS(cholesky(RatMatrix{{1, 2}, {2, 1}}), FormError);
}
