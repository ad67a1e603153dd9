#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"

namespace epmono {

/// n x n matrix whose entries are polynomials in one complex parameter z.
class PolyMatrixFamily {
public:
    PolyMatrixFamily() = default;

    explicit PolyMatrixFamily(SquareMatrix<Polynomial> entries) : entries_(std::move(entries)) {
        if (entries_.size() == 0) throw Error(ErrorCode::invalid_input, "family dimension must be >= 1");
    }

    PolyMatrixFamily(std::initializer_list<std::initializer_list<Polynomial>> rows)
        : PolyMatrixFamily(SquareMatrix<Polynomial>(rows)) {}

    std::size_t dim() const noexcept { return entries_.size(); }
    const SquareMatrix<Polynomial>& entries() const noexcept { return entries_; }
    const Polynomial& entry(std::size_t i, std::size_t j) const noexcept { return entries_(i, j); }

    int max_entry_degree() const noexcept {
        int d = 0;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) d = std::max(d, entries_(i, j).degree());
        return d;
    }

    double max_entry_coeff() const noexcept {
        double m = 0.0;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) m = std::max(m, entries_(i, j).max_abs_coeff());
        return m;
    }

    ComplexMatrix evaluate(Complex z) const {
        ComplexMatrix m(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) m(i, j) = entries_(i, j)(z);
        return m;
    }

private:
    SquareMatrix<Polynomial> entries_;
};

inline ComplexMatrix evaluate(const PolyMatrixFamily& family, Complex z) { return family.evaluate(z); }

/// Faddeev-LeVerrier recursion over any ring that can be scaled by a complex number.
/// Returns the ascending coefficients of det(lambda*I - A); the last one is `one`.
template <typename T>
std::vector<T> faddeev_leverrier(const SquareMatrix<T>& a, const T& one) {
    const std::size_t n = a.size();
    std::vector<T> c(n + 1);
    c[n] = one;
    SquareMatrix<T> m(n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        SquareMatrix<T> next = a * m;
        for (std::size_t i = 0; i < n; ++i) next(i, i) = next(i, i) + c[n - k + 1];
        m = std::move(next);
        c[n - k] = (a * m).trace() * Complex(-1.0 / static_cast<double>(k));
    }
    return c;
}

/// Characteristic polynomial det(lambda*I - M(z)); coefficient k multiplies lambda^k.
struct CharPoly {
    std::vector<Polynomial> coeffs_in_lambda;

    std::size_t order() const noexcept { return coeffs_in_lambda.empty() ? 0 : coeffs_in_lambda.size() - 1; }

    /// Numeric lambda-coefficients at a fixed parameter value.
    std::vector<Complex> at(Complex z) const {
        std::vector<Complex> out;
        out.reserve(coeffs_in_lambda.size());
        for (const auto& p : coeffs_in_lambda) out.push_back(p(z));
        return out;
    }
};

inline CharPoly char_poly(const PolyMatrixFamily& family) {
    return CharPoly{faddeev_leverrier(family.entries(), Polynomial::constant(1.0))};
}

/// Sylvester-matrix discriminant of a numeric polynomial (ascending coefficients,
/// degree n >= 1): (-1)^(n(n-1)/2) * Res(p, p') / a_n.
inline Complex numeric_discriminant(const std::vector<Complex>& p) {
    const std::size_t n = p.size() - 1;
    if (n == 0) throw Error(ErrorCode::invalid_input, "discriminant needs degree >= 1");
    if (n == 1) return Complex{1.0};
    std::vector<Complex> dp(n);
    for (std::size_t k = 1; k <= n; ++k) dp[k - 1] = static_cast<double>(k) * p[k];

    const std::size_t size = 2 * n - 1;
    ComplexMatrix syl(size);
    // n-1 shifted rows of p, then n shifted rows of p', coefficients in descending order.
    for (std::size_t r = 0; r + 1 < n; ++r)
        for (std::size_t k = 0; k <= n; ++k) syl(r, r + k) = p[n - k];
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) syl(n - 1 + r, r + k) = dp[n - 1 - k];

    const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    return sign * determinant(syl) / p[n];
}

struct DiscriminantOptions {
    /// Relative chop applied to the interpolated coefficients.
    double trim_rel_tol = 1e-8;
    /// Relative residual allowed when checking the interpolant against the samples.
    double residual_tol = 1e-8;
    /// Below this fraction of the a-priori magnitude, the discriminant is treated as zero.
    double zero_rel_tol = 1e-10;
};

/// Degree bound in z for the discriminant of the char poly of `family`.
inline std::size_t discriminant_degree_bound(std::size_t n, int max_entry_degree) {
    return n * (n - 1) * static_cast<std::size_t>(std::max(0, max_entry_degree));
}

/// Discriminant of `cp` as a polynomial in z, by evaluation at D+1 points on a circle
/// of radius `radius` followed by inverse-DFT interpolation. Throws
/// InterpolationIllConditioned when the interpolant misses D+1 interleaved check points.
inline Polynomial discriminant(const CharPoly& cp, std::size_t degree_bound, double radius,
                               const DiscriminantOptions& opts = {}) {
    const std::size_t n = cp.order();
    if (n < 1) throw Error(ErrorCode::invalid_input, "char poly must have order >= 1");
    if (n == 1) return Polynomial::constant(1.0);

    const std::size_t count = degree_bound + 1;
    std::vector<Complex> nodes(count), values(count);
    double scale = 0.0;
    double max_value = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        nodes[j] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count));
        const auto p = cp.at(nodes[j]);
        values[j] = numeric_discriminant(p);
        double pn = 0.0, dpn = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            pn += std::norm(p[k]);
            dpn += std::norm(static_cast<double>(k) * p[k]);
        }
        // Hadamard bound on the Sylvester determinant.
        scale = std::max(scale, std::pow(std::sqrt(pn), double(n - 1)) * std::pow(std::sqrt(dpn), double(n)));
        max_value = std::max(max_value, std::abs(values[j]));
    }
    if (max_value <= opts.zero_rel_tol * scale) return {};

    std::vector<Complex> coeffs(count);
    for (std::size_t k = 0; k < count; ++k) {
        Complex acc{};
        for (std::size_t j = 0; j < count; ++j) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % count) / static_cast<double>(count);
            acc += values[j] * std::polar(1.0, angle);
        }
        coeffs[k] = acc / (static_cast<double>(count) * std::pow(radius, static_cast<double>(k)));
    }
    Polynomial interp(std::move(coeffs));

    // Check against fresh samples interleaved with the nodes; aliasing from an
    // underestimated degree bound shows up there.
    double residual = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        const double angle = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(count);
        const Complex z = std::polar(radius, angle);
        const Complex v = numeric_discriminant(cp.at(z));
        max_value = std::max(max_value, std::abs(v));
        residual = std::max(residual, std::abs(interp(z) - v));
    }
    if (residual > opts.residual_tol * max_value)
        throw Error(ErrorCode::interpolation_ill_conditioned,
                    "interpolation residual " + std::to_string(residual / max_value) + " exceeds tolerance");
    return interp.chopped(opts.trim_rel_tol);
}

/// Discriminant of `cp` with the degree bound n(n-1)*d, where d is the per-order
/// degree of the lambda-coefficients (the max entry degree when cp comes from a family),
/// sampled on the unit circle.
inline Polynomial discriminant(const CharPoly& cp, const DiscriminantOptions& opts = {}) {
    const std::size_t n = cp.order();
    int d = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const int deg = cp.coeffs_in_lambda[k].degree();
        const int orders = static_cast<int>(n - k);
        if (deg > 0) d = std::max(d, (deg + orders - 1) / orders);
    }
    return discriminant(cp, discriminant_degree_bound(n, d), 1.0, opts);
}

inline Polynomial discriminant(const PolyMatrixFamily& family, const DiscriminantOptions& opts = {}) {
    return discriminant(char_poly(family), opts);
}

} // namespace epmono
