#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace epmono {

using Complex = std::complex<double>;

/// Univariate polynomial with complex coefficients, stored in ascending degree.
///
/// The stored form is always trimmed: the last coefficient is nonzero unless the
/// polynomial is identically zero, in which case the coefficient list is empty and
/// `degree()` returns -1.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim_exact(); }

    Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim_exact(); }

    static Polynomial constant(Complex c) { return Polynomial({c}); }

    /// The monomial `c * z^k`.
    static Polynomial monomial(Complex c, std::size_t k) {
        std::vector<Complex> v(k + 1, Complex{});
        v[k] = c;
        return Polynomial(std::move(v));
    }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

    /// Coefficient of z^k; zero beyond the stored degree.
    Complex operator[](std::size_t k) const noexcept {
        return k < coeffs_.size() ? coeffs_[k] : Complex{};
    }

    Complex leading() const noexcept { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

    double max_abs_coeff() const noexcept {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    // Horner
    Complex operator()(Complex z) const noexcept {
        Complex acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Complex> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
        return Polynomial(std::move(d));
    }

    /// Zeroes every coefficient with modulus below `rel_tol * max|coeff|`, then trims.
    Polynomial chopped(double rel_tol) const {
        const double cutoff = rel_tol * max_abs_coeff();
        std::vector<Complex> v = coeffs_;
        for (auto& c : v)
            if (std::abs(c) <= cutoff) c = Complex{};
        return Polynomial(std::move(v));
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim_exact();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim_exact();
        return *this;
    }

    Polynomial& operator*=(Complex s) {
        for (auto& c : coeffs_) c *= s;
        trim_exact();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
    friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= Complex{-1.0}; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Complex> v(a.coeffs_.size() + b.coeffs_.size() - 1, Complex{});
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(v));
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim_exact() {
        while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
    }

    std::vector<Complex> coeffs_;
};

/// Monic polynomial with the given roots, ascending coefficients.
inline std::vector<Complex> expand_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex{1.0}};
    for (const auto& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex{});
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

} // namespace epmono
