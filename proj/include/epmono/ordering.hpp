#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "polynomial.hpp"
#include "spectra.hpp"
#include "tracking.hpp"

namespace epmono {

/// Global, parameter-independent ordering of eigenvalues.
///
/// `re_then_im`: larger real part first, equal real parts broken by larger imaginary part.
/// `im_then_re`: the same with the two keys swapped.
struct TotalOrder {
    enum class Mode { re_then_im, im_then_re };
    Mode mode = Mode::re_then_im;
    /// Keys closer than this (relative to the spectrum scale) count as equal.
    double tie_tol = 1e-10;

    static TotalOrder parse(std::string_view s) {
        if (s == "re_then_im") return {Mode::re_then_im};
        if (s == "im_then_re") return {Mode::im_then_re};
        throw Error(ErrorCode::invalid_input, "unknown order '" + std::string(s) + "'");
    }

    std::string_view name() const noexcept { return mode == Mode::re_then_im ? "re_then_im" : "im_then_re"; }

    /// True when `a` sorts strictly before `b`. Throws UnresolvableTie when neither key separates them.
    bool before(Complex a, Complex b, double scale = 1.0) const {
        const double tol = tie_tol * scale;
        const double pa = mode == Mode::re_then_im ? a.real() : a.imag();
        const double pb = mode == Mode::re_then_im ? b.real() : b.imag();
        if (std::abs(pa - pb) > tol) return pa > pb;
        const double sa = mode == Mode::re_then_im ? a.imag() : a.real();
        const double sb = mode == Mode::re_then_im ? b.imag() : b.real();
        if (std::abs(sa - sb) > tol) return sa > sb;
        throw Error(ErrorCode::unresolvable_tie, "two eigenvalues coincide; the global order cannot label them");
    }
};

/// For each entry of `values`, its position in the sorted order.
inline std::vector<std::size_t> sorted_ranks(const std::vector<Complex>& values, const TotalOrder& order) {
    const double scale = spectrum_scale(values);
    std::vector<std::size_t> rank(values.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = 0; j < values.size(); ++j)
            if (i != j && order.before(values[j], values[i], scale)) ++rank[i];
    std::vector<bool> taken(values.size(), false);
    for (auto r : rank) {
        if (taken[r]) throw Error(ErrorCode::unresolvable_tie, "order is not consistent at this tolerance");
        taken[r] = true;
    }
    return rank;
}

/// Eigenvalues sorted by the global order; label k is position k.
inline LabeledSpectrum sorted_labels(const std::vector<Complex>& values, const TotalOrder& order = {}) {
    const auto rank = sorted_ranks(values, order);
    LabeledSpectrum out{std::vector<Complex>(values.size())};
    for (std::size_t i = 0; i < values.size(); ++i) out.ordered[rank[i]] = values[i];
    return out;
}

inline LabeledSpectrum sorted_labels(const Spectrum& spec, const TotalOrder& order = {}) {
    return sorted_labels(spec.values, order);
}

inline LabeledSpectrum sorted_labels_at(const PolyMatrixFamily& family, Complex z, const TotalOrder& order = {},
                                        const RootOptions& opts = {}) {
    return sorted_labels(eigenvalues(family, z, opts), order);
}

} // namespace epmono
