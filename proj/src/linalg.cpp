#include <symchain/linalg.hpp>

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace symchain {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
}

RationalMatrix RationalMatrix::from_ints(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Rational>> r;
    for (const auto& row : rows) {
        std::vector<Rational> v;
        for (long x : row) v.emplace_back(x);
        r.push_back(std::move(v));
    }
    return from_rows(r);
}

std::vector<Rational> RationalMatrix::row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

RationalMatrix RationalMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    RationalMatrix out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols.at(k));
    }
    return out;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return symchain::is_zero(q); });
}

bool RationalMatrix::is_antisymmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            if ((*this)(i, j) != -(*this)(j, i)) return false;
        }
    }
    return true;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out << ' ';
            out << symchain::to_string((*this)(i, j));
        }
        out << '\n';
    }
    return out.str();
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    }
    return c;
}

std::vector<Rational> left_multiply(std::span<const Rational> v, const RationalMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vector length does not match matrix rows");
    std::vector<Rational> out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (is_zero(v[i])) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

RowEchelon rref(RationalMatrix m) {
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        }
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            const Rational k = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (!is_zero(m(r, j))) m(i, j) -= k * m(r, j);
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

NullBasis left_null_space(const RationalMatrix& m) {
    NullBasis basis;
    basis.length = m.rows();
    const RowEchelon e = rref(m.transpose());
    std::vector<bool> is_pivot(m.rows(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < m.rows(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.rows());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
        basis.vectors.push_back(make_primitive(std::move(v)));
    }
    return basis;
}

Rational determinant(const RationalMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    Rational scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Integer l = lcm_of_denominators(m.row_vector(i));
        scale *= l;
        for (std::size_t j = 0; j < n; ++j) {
            Rational x = m(i, j) * l;
            a[i][j] = x.get_num();
        }
    }
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a[k][k]) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(a[p][k]) == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rational det(a[n - 1][n - 1]);
    det /= scale;
    return sign < 0 ? Rational(-det) : det;
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, VarTablePtr vars)
    : rows_(rows), cols_(cols), vars_(vars), data_(rows * cols, Expression(vars)) {}

PolyMatrix PolyMatrix::from_constant(const RationalMatrix& m, VarTablePtr vars) {
    PolyMatrix p(m.rows(), m.cols(), vars);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = Expression(vars, m(i, j));
    }
    return p;
}

bool PolyMatrix::is_constant() const {
    return std::all_of(data_.begin(), data_.end(), [](const Expression& e) { return e.is_constant(); });
}

RationalMatrix PolyMatrix::to_rational() const {
    RationalMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!data_[k].is_constant()) throw std::domain_error("matrix entry is not constant: " + data_[k].to_string());
        m(k / cols_, k % cols_) = data_[k].constant_term();
    }
    return m;
}

RationalMatrix PolyMatrix::evaluate(std::span<const Rational> point) const {
    RationalMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m(k / cols_, k % cols_) = symchain::evaluate(data_[k], point);
    return m;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && same_vars(a.vars_, b.vars_) && a.data_ == b.data_;
}

std::vector<Rational> random_point(std::size_t n, std::uint64_t seed, unsigned spread) {
    std::mt19937_64 rng(seed);
    long range = 8;
    for (unsigned t = 0; t < spread && range < (1L << 40); ++t) range *= 4;
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<long> den(1, 7);
    std::vector<Rational> p;
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        p.push_back(q);
    }
    return p;
}

std::size_t generic_rank(const PolyMatrix& m, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("generic_rank needs at least one trial");
    if (m.is_constant()) return rank(m.to_rational());
    std::size_t best = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto point = random_point(m.vars()->size(), seed + t, static_cast<unsigned>(t));
        best = std::max(best, rank(m.evaluate(point)));
        if (best == std::min(m.rows(), m.cols())) break;
    }
    return best;
}

}  // namespace symchain
