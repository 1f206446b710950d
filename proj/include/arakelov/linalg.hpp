#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <vector>

#include <gmpxx.h>

#include "arakelov/errors.hpp"

namespace arakelov {

/* Dense row-major matrix over an exact ring (mpz_class or mpq_class).
 * Row vectors are the convention everywhere in the library: a module basis
 * is stored one generator per row.
 */
template <typename T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<T>& v);
    void swap_rows(std::size_t i, std::size_t j);

    Matrix transpose() const;

    bool operator==(const Matrix& o) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m);

RatMatrix to_rational(const IntMatrix& m);

/* Least common multiple of all denominators, and the integer matrix
 * denominator * m. */
mpz_class common_denominator(const RatMatrix& m);
IntMatrix scale_to_integer(const RatMatrix& m, const mpz_class& denominator);

/* Row-style Hermite normal form: H = U*M is upper echelon, pivots positive,
 * entries above each pivot reduced into [0, pivot). */
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
};

HnfResult hnf(const IntMatrix& m);

/* HNF (square, full rank) of the lattice spanned by the rows of gens.
 * modulus must be a nonzero multiple of the index of that lattice in Z^n,
 * so that modulus * Z^n is contained in it; entries stay bounded by it. */
IntMatrix hnf_modular(const IntMatrix& gens, const mpz_class& modulus);

mpz_class det(const IntMatrix& m);
mpq_class det(const RatMatrix& m);

RatMatrix invert(const RatMatrix& m);

/* Fraction-free solution of a * x = b for square nonsingular a:
 * x = num / den with den = |det(a)|. */
struct IntSolution {
    IntMatrix num;
    mpz_class den;
};
IntSolution solve_integer(const IntMatrix& a, const IntMatrix& b);

/* Solve y * a = b for the row vector y; std::nullopt when inconsistent.
 * a must have full row rank. */
std::optional<std::vector<mpq_class>> solve_left(const RatMatrix& a, const std::vector<mpq_class>& b);

/* Gram-form LLL. G' = T^t * G * T, i.e. column j of T holds the
 * coordinates of the j-th reduced vector in the input basis. */
struct LllResult {
    RatMatrix gram;
    IntMatrix transform;
};

inline const mpq_class lll_delta{99, 100};

LllResult lll_reduce(const RatMatrix& gram);

/* Exact check of size reduction (|mu| <= 1/2) and the Lovasz condition. */
bool is_lll_reduced(const RatMatrix& gram, const mpq_class& delta = lll_delta);

/* G = R^t * diag(pivots) * R with R unit upper triangular. */
struct Cholesky {
    RatMatrix r;
    std::vector<mpq_class> pivots;
};

Cholesky cholesky(const RatMatrix& gram);

}  // namespace arakelov
