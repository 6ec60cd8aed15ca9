#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cuspfrob/rational.hpp"

namespace cuspfrob {

// Dense matrix over the rationals. Small sizes only (mu_A x mu_A); all
// elimination is exact, so singularity detection is a pivot search that
// finds no nonzero entry.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const QMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    QMatrix operator*(const QMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        QMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Rational& b = o(k, j);
                    if (b != 0) r(i, j) += a * b;
                }
            }
        return r;
    }

    QMatrix operator+(const QMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
        QMatrix r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }

    QMatrix operator-(const QMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
        QMatrix r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }

    QMatrix scaled(const Rational& c) const {
        QMatrix r = *this;
        for (auto& x : r.data_) x *= c;
        return r;
    }

    Rational trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
        Rational t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    // Gaussian elimination with first-nonzero pivoting; exact.
    Rational det() const {
        if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
        QMatrix m = *this;
        Rational d = 1;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t p = c;
            while (p < rows_ && m(p, c) == 0) ++p;
            if (p == rows_) return 0;
            if (p != c) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(c, j));
                d = -d;
            }
            d *= m(c, c);
            for (std::size_t r = c + 1; r < rows_; ++r) {
                if (m(r, c) == 0) continue;
                Rational f = m(r, c) / m(c, c);
                for (std::size_t j = c; j < cols_; ++j) m(r, j) -= f * m(c, j);
            }
        }
        return d;
    }

    // Throws std::domain_error on a singular matrix.
    QMatrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
        const std::size_t n = rows_;
        QMatrix m = *this;
        QMatrix inv = identity(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && m(p, c) == 0) ++p;
            if (p == n) throw std::domain_error("singular matrix");
            if (p != c)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(m(p, j), m(c, j));
                    std::swap(inv(p, j), inv(c, j));
                }
            Rational piv = m(c, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(c, j) /= piv;
                inv(c, j) /= piv;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || m(r, c) == 0) continue;
                Rational f = m(r, c);
                for (std::size_t j = 0; j < n; ++j) {
                    m(r, j) -= f * m(c, j);
                    inv(r, j) -= f * inv(c, j);
                }
            }
        }
        return inv;
    }

    // Solves M x = b; throws std::domain_error if M is singular.
    std::vector<Rational> solve(const std::vector<Rational>& b) const {
        if (rows_ != cols_ || b.size() != rows_) throw std::invalid_argument("solve shape mismatch");
        QMatrix m = *this;
        std::vector<Rational> v = b;
        const std::size_t n = rows_;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && m(p, c) == 0) ++p;
            if (p == n) throw std::domain_error("singular matrix");
            if (p != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
                std::swap(v[p], v[c]);
            }
            for (std::size_t r = c + 1; r < n; ++r) {
                if (m(r, c) == 0) continue;
                Rational f = m(r, c) / m(c, c);
                for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
                v[r] -= f * v[c];
            }
        }
        std::vector<Rational> x(n);
        for (std::size_t i = n; i-- > 0;) {
            Rational s = v[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
            x[i] = s / m(i, i);
        }
        return x;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

// Solves the (possibly overdetermined) system M x = b exactly when it is
// consistent; returns false otherwise.
inline bool solve_consistent(const QMatrix& M, const std::vector<Rational>& b,
                             std::vector<Rational>& x) {
    const std::size_t rows = M.rows(), cols = M.cols();
    if (b.size() != rows) throw std::invalid_argument("solve_consistent shape mismatch");
    QMatrix m = M;
    std::vector<Rational> v = b;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
            std::swap(v[p], v[r]);
        }
        for (std::size_t q = r + 1; q < rows; ++q) {
            if (m(q, c) == 0) continue;
            Rational f = m(q, c) / m(r, c);
            for (std::size_t j = c; j < cols; ++j) m(q, j) -= f * m(r, j);
            v[q] -= f * v[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t q = r; q < rows; ++q)
        if (v[q] != 0) return false;
    x.assign(cols, Rational(0));
    for (std::size_t i = r; i-- > 0;) {
        Rational s = v[i];
        for (std::size_t j = pivot_col[i] + 1; j < cols; ++j) s -= m(i, j) * x[j];
        x[pivot_col[i]] = s / m(i, pivot_col[i]);
    }
    return true;
}

// Fraction-free (Bareiss) determinant over the integers; used where the
// input is integral and intermediate growth matters.
inline Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("bareiss_det: non-square matrix");
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace cuspfrob
