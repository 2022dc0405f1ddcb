#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rtrace/errors.hpp"

namespace rtrace {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline int sign(const Integer& a) { return a.sign(); }

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Remainder in [0, |m|). m must be nonzero.
inline Integer floor_mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

/// Floor division matching floor_mod: a = q*m + floor_mod(a, m) for m > 0.
inline Integer floor_div(const Integer& a, const Integer& m) {
    return (a - floor_mod(a, m)) / m;
}

inline Integer floor(const Rational& q) {
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    return floor_div(num, den);
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline bool is_integral(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

inline Integer to_integer(const Rational& q) {
    return boost::multiprecision::numerator(q);
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1) {
        os << '/' << boost::multiprecision::denominator(q);
    }
    return os.str();
}

template <typename Scalar>
std::string vector_to_string(const std::vector<Scalar>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += to_string(v[i]);
    }
    return out + ")";
}

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw NonSquare("ragged matrix literal");
            for (long long v : r) data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    IntVector column(std::size_t j) const {
        IntVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& k) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
    }
    /// col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& k) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }
    void negate_col(std::size_t c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
        require_same_shape(a, b);
        IntMatrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
        require_same_shape(a, b);
        IntMatrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw NonSquare("matrix product shape mismatch");
        IntMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
        if (a.cols_ != v.size()) throw NonSquare("matrix-vector shape mismatch");
        IntVector r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
        return r;
    }
    friend RatVector operator*(const IntMatrix& a, const RatVector& v) {
        if (a.cols_ != v.size()) throw NonSquare("matrix-vector shape mismatch");
        RatVector r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (a(i, j) != 0) r[i] += Rational(a(i, j)) * v[j];
        return r;
    }

    std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) out += ',';
            out += '[';
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) out += ',';
                out += to_string((*this)(i, j));
            }
            out += ']';
        }
        return out + "]";
    }

private:
    static void require_same_shape(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw NonSquare("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

inline Integer trace(const IntMatrix& m) {
    if (!m.square()) throw NonSquare("trace of a non-square matrix");
    Integer t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

/// Fraction-free (Bareiss) elimination; exact for any integer matrix.
inline Integer determinant(IntMatrix m) {
    if (!m.square()) throw NonSquare("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Integer prev = 1;
    int flip = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            flip = -flip;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return flip * m(n - 1, n - 1);
}

/// Solves m x = v over Q for nonsingular square m.
inline RatVector solve_rational(const IntMatrix& m, const RatVector& v) {
    if (!m.square() || v.size() != m.rows()) throw NonSquare("solve_rational shape mismatch");
    const std::size_t n = m.rows();
    std::vector<RatVector> a(n, RatVector(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
        a[i][n] = v[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) throw NonSquare("solve_rational: singular matrix");
        std::swap(a[k], a[p]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            const Rational r = a[i][k] / a[k][k];
            for (std::size_t j = k; j <= n; ++j) a[i][j] -= r * a[k][j];
        }
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

} // namespace rtrace
