#pragma once

#include <symchain/expr.hpp>
#include <symchain/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace symchain {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    /// Convenience for literal integer matrices in tests and fixtures.
    static RationalMatrix from_ints(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::vector<Rational> row_vector(std::size_t i) const;

    RationalMatrix transpose() const;
    /// Keeps the listed columns, in the given order.
    RationalMatrix select_columns(const std::vector<std::size_t>& cols) const;

    bool is_zero() const;
    bool is_antisymmetric() const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

    /// One row per line, entries separated by single spaces.
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Row vector times matrix.
std::vector<Rational> left_multiply(std::span<const Rational> v, const RationalMatrix& m);

struct RowEchelon {
    RationalMatrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan reduction; pivots are the leftmost available columns.
RowEchelon rref(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// Basis of {v : v*M = 0}.
///
/// Canonical form: the kernel of M^T is read off the reduced echelon form of
/// M^T. Each vector carries +1 in its own free coordinate (a row of M that
/// is dependent on the rows above it), minus the echelon entries in the
/// pivot coordinates, and is then scaled by a positive factor to a primitive
/// integer vector. Vectors are ordered by free coordinate.
struct NullBasis {
    std::size_t length = 0;
    std::vector<std::vector<Rational>> vectors;

    bool empty() const noexcept { return vectors.empty(); }
    std::size_t dimension() const noexcept { return vectors.size(); }
    friend bool operator==(const NullBasis&, const NullBasis&) = default;
};

NullBasis left_null_space(const RationalMatrix& m);

/// Fraction-free (Bareiss) determinant. Rows are first cleared of
/// denominators, eliminated over the integers, and the row scales divided
/// back out. Throws std::invalid_argument for non-square input.
Rational determinant(const RationalMatrix& m);

/// Matrix of polynomial entries sharing one variable table.
class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols, VarTablePtr vars);
    static PolyMatrix from_constant(const RationalMatrix& m, VarTablePtr vars);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const VarTablePtr& vars() const noexcept { return vars_; }

    Expression& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Expression& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_constant() const;
    /// Throws std::domain_error when some entry is not constant.
    RationalMatrix to_rational() const;
    RationalMatrix evaluate(std::span<const Rational> point) const;

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

private:
    std::size_t rows_;
    std::size_t cols_;
    VarTablePtr vars_;
    std::vector<Expression> data_;
};

/// Largest rank observed over `trials` evaluations at seeded random
/// rational points. Trial t draws integer numerators from [-R, R] with
/// R = 8 * 4^t over denominators in [1, 7], so a polynomial entry vanishes
/// at every probe only with vanishing probability.
std::size_t generic_rank(const PolyMatrix& m, std::size_t trials, std::uint64_t seed = 0x5eed);

/// A point drawn the same way as the probes of generic_rank.
std::vector<Rational> random_point(std::size_t n, std::uint64_t seed, unsigned spread = 0);

}  // namespace symchain
