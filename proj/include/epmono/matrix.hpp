#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "error.hpp"
#include "polynomial.hpp"

namespace epmono {

/// Dense row-major square matrix over a ring `T` (complex numbers or polynomials).
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, const T& fill = T{}) : n_(n), data_(n * n, fill) {}

    SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
        data_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_) throw Error(ErrorCode::size_mismatch, "matrix rows must all have length n");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static SquareMatrix identity(std::size_t n, const T& one, const T& zero = T{}) {
        SquareMatrix m(n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    T trace() const {
        T t{};
        for (std::size_t i = 0; i < n_; ++i) t = t + (*this)(i, i);
        return t;
    }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        if (a.n_ != b.n_) throw Error(ErrorCode::size_mismatch, "matrix product of different sizes");
        SquareMatrix c(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t k = 0; k < a.n_; ++k)
                for (std::size_t j = 0; j < a.n_; ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
        return c;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = SquareMatrix<Complex>;

inline double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

inline double max_abs_entry(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) s = std::max(s, std::abs(m(i, j)));
    return s;
}

/// Determinant by LU with partial pivoting.
inline Complex determinant(ComplexMatrix a) {
    const std::size_t n = a.size();
    Complex det{1.0};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == Complex{}) return Complex{};
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = a(r, col) / a(col, col);
            if (f == Complex{}) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

} // namespace epmono
