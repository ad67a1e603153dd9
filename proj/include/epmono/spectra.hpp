#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "matrix_family.hpp"
#include "polynomial.hpp"

namespace epmono {

struct RootOptions {
    int max_iterations = 200;
    /// Seeds the angular offset of the starting circle.
    std::uint64_t seed = 0;
};

namespace detail {

struct HornerValue {
    Complex p;
    Complex dp;
    double abs_sum;  // sum |a_k| |z|^k, for the rounding-error bound
};

inline HornerValue horner_with_derivative(const std::vector<Complex>& a, Complex z) {
    HornerValue h{Complex{}, Complex{}, 0.0};
    const double az = std::abs(z);
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        h.dp = h.dp * z + h.p;
        h.p = h.p * z + *it;
        h.abs_sum = h.abs_sum * az + std::abs(*it);
    }
    return h;
}

} // namespace detail

/// All roots (with multiplicity) of the polynomial with ascending coefficients
/// `coeffs`, by Aberth-Ehrlich simultaneous iteration.
///
/// Exact zero roots are deflated up front. Iteration uses Gauss-Seidel updates and stops
/// per root once its residual reaches the Horner rounding bound or its correction stalls.
inline std::vector<Complex> poly_roots(std::vector<Complex> coeffs, const RootOptions& opts = {}) {
    while (!coeffs.empty() && coeffs.back() == Complex{}) coeffs.pop_back();
    if (coeffs.size() < 2) throw Error(ErrorCode::invalid_input, "poly_roots needs degree >= 1");

    double max_coeff = 0.0;
    for (const auto& c : coeffs) max_coeff = std::max(max_coeff, std::abs(c));
    const std::size_t full_degree = coeffs.size() - 1;

    std::vector<Complex> roots;
    std::size_t zeros = 0;
    while (coeffs[zeros] == Complex{}) ++zeros;
    roots.assign(zeros, Complex{});
    std::vector<Complex> a(coeffs.begin() + static_cast<std::ptrdiff_t>(zeros), coeffs.end());
    const std::size_t n = a.size() - 1;
    if (n == 0) return roots;

    const Complex lead = a.back();
    for (auto& c : a) c /= lead;
    if (n == 1) {
        roots.push_back(-a[0]);
        return roots;
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    const double radius = std::pow(std::abs(a[0]), 1.0 / static_cast<double>(n));
    const double offset = 0.4 + jitter(rng) * (2.0 * std::numbers::pi / static_cast<double>(n)) * 0.5;
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(radius, offset + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> done(n, false);
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        bool all_done = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            const auto h = detail::horner_with_derivative(a, z[i]);
            if (std::abs(h.p) <= 4.0 * static_cast<double>(n) * eps * h.abs_sum) {
                done[i] = true;
                continue;
            }
            Complex s{};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            const Complex denom = h.dp - h.p * s;
            const Complex w = denom == Complex{} ? Complex(1e-8 * (1.0 + std::abs(z[i]))) : h.p / denom;
            z[i] -= w;
            if (std::abs(w) <= 2.0 * eps * std::abs(z[i])) done[i] = true;
            else all_done = false;
        }
        if (all_done) break;
    }

    for (const auto& r : z) {
        const auto h = detail::horner_with_derivative(a, r);
        const double residual = std::abs(h.p * lead);
        const double bound = 1e-10 * max_coeff * std::pow(std::max(1.0, std::abs(r)), static_cast<double>(full_degree));
        if (!(residual <= bound))
            throw Error(ErrorCode::no_convergence, "Aberth iteration did not converge (residual " +
                                                       std::to_string(residual) + ")");
    }
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

/// Unordered eigenvalues with their char-poly residuals.
struct Spectrum {
    std::vector<Complex> values;
    std::vector<double> residuals;
};

inline constexpr std::size_t max_eigen_dim = 12;

/// Eigenvalues via the numeric Faddeev-LeVerrier char poly and `poly_roots`.
/// The matrix is scaled to unit max-entry before forming the char poly.
inline Spectrum eigenvalues(const ComplexMatrix& m, const RootOptions& opts = {}) {
    const std::size_t n = m.size();
    if (n == 0 || n > max_eigen_dim)
        throw Error(ErrorCode::invalid_input, "eigenvalues supports 1 <= n <= 12, got " + std::to_string(n));
    Spectrum s;
    const double scale = max_abs_entry(m);
    if (scale == 0.0) {
        s.values.assign(n, Complex{});
        s.residuals.assign(n, 0.0);
        return s;
    }
    ComplexMatrix a = m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) /= scale;
    const auto cp = faddeev_leverrier(a, Complex{1.0});
    const auto roots = poly_roots(cp, opts);
    const Polynomial p(cp);
    for (const auto& r : roots) {
        s.values.push_back(r * scale);
        s.residuals.push_back(std::abs(p(r)));
    }
    return s;
}

inline Spectrum eigenvalues(const PolyMatrixFamily& family, Complex z, const RootOptions& opts = {}) {
    return eigenvalues(family.evaluate(z), opts);
}

struct Disk {
    Complex center{};
    double radius = 1.0;

    bool contains(Complex z) const noexcept { return std::abs(z - center) <= radius; }
};

/// Merges points closer than `tol` (single linkage) and returns cluster means.
inline std::vector<Complex> deduplicate(const std::vector<Complex>& pts, double tol) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(pts[i] - pts[j]) <= tol) parent[find(i)] = find(j);

    std::vector<Complex> sums(n, Complex{});
    std::vector<std::size_t> counts(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        sums[find(i)] += pts[i];
        ++counts[find(i)];
    }
    std::vector<Complex> out;
    for (std::size_t i = 0; i < n; ++i)
        if (counts[i] > 0) out.push_back(sums[i] / static_cast<double>(counts[i]));
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

/// Discriminant roots closer than this (times max(1, largest root modulus)) are one
/// degeneracy. A root of multiplicity m is split by about eps^(1/m) in floating point.
inline constexpr double degeneracy_dedup_tol = 1e-5;

/// Every distinct root of the discriminant of the family's char poly.
inline std::vector<Complex> all_degeneracies(const PolyMatrixFamily& family, const RootOptions& opts = {}) {
    if (family.dim() < 2) return {};
    const auto disc = discriminant(family);
    if (disc.is_zero())
        throw Error(ErrorCode::discriminant_identically_zero, "family has a repeated eigenvalue for every z");
    if (disc.degree() < 1) return {};
    const auto roots = poly_roots(disc.coeffs(), opts);
    double scale = 1.0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));
    return deduplicate(roots, degeneracy_dedup_tol * scale);
}

/// Degeneracy candidates (discriminant roots) inside `region`.
inline std::vector<Complex> locate_degeneracies(const PolyMatrixFamily& family, const Disk& region,
                                                const RootOptions& opts = {}) {
    if (!std::isfinite(region.radius) || region.radius < 0.0)
        throw Error(ErrorCode::invalid_input, "region radius must be finite and non-negative");
    std::vector<Complex> out;
    for (const auto& z : all_degeneracies(family, opts))
        if (region.contains(z)) out.push_back(z);
    return out;
}

} // namespace epmono
