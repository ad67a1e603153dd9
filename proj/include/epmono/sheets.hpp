#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "error.hpp"
#include "matrix_family.hpp"
#include "ordering.hpp"
#include "path.hpp"
#include "spectra.hpp"
#include "tracking.hpp"

namespace epmono {

/// Rectangular grid of parameter values, `nx` columns along Re z and `ny` rows along Im z.
struct GridSpec {
    double re_min = -1.0, re_max = 1.0;
    double im_min = -1.0, im_max = 1.0;
    std::size_t nx = 0, ny = 0;

    double re_at(std::size_t i) const { return nx < 2 ? re_min : re_min + (re_max - re_min) * double(i) / double(nx - 1); }
    double im_at(std::size_t j) const { return ny < 2 ? im_min : im_min + (im_max - im_min) * double(j) / double(ny - 1); }
    Complex at(std::size_t i, std::size_t j) const { return {re_at(i), im_at(j)}; }
};

/// Continued eigenvalue sheets on a grid. Cells holding a degeneracy are all-NaN.
struct SheetGrid {
    GridSpec grid;
    std::size_t dim = 0;
    /// values[i * ny + j][k] is sheet k at grid point (i, j).
    std::vector<std::vector<Complex>> values;

    const std::vector<Complex>& at(std::size_t i, std::size_t j) const { return values[i * grid.ny + j]; }
    bool is_nan(std::size_t i, std::size_t j) const { return std::isnan(at(i, j).front().real()); }
};

/// Samples every grid point and links the eigenvalues into sheets: the bottom row is
/// column is continued upward, stepping in from the left column above a degenerate cell.
/// column is continued upward from its bottom cell.
inline SheetGrid compute_sheets(const PolyMatrixFamily& family, const GridSpec& grid, const TotalOrder& order = {},
                                const TrackOptions& opts = {}) {
    SheetGrid out;
    out.grid = grid;
    out.dim = family.dim();
    if (grid.nx == 0 || grid.ny == 0) return out;

    std::vector<Complex> degs;
    try {
        degs = all_degeneracies(family, opts.roots);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::discriminant_identically_zero) throw;
    }
    const double dx = grid.nx > 1 ? (grid.re_max - grid.re_min) / double(grid.nx - 1) : 0.0;
    const double dy = grid.ny > 1 ? (grid.im_max - grid.im_min) / double(grid.ny - 1) : 0.0;
    const double hx = std::max(0.5 * dx, 1e-12), hy = std::max(0.5 * dy, 1e-12);
    auto degenerate_cell = [&](Complex z) {
        for (const auto& d : degs)
            if (std::abs(d.real() - z.real()) <= hx && std::abs(d.imag() - z.imag()) <= hy) return true;
        return false;
    };

    TrackOptions step_opts = opts;
    if (!step_opts.max_step) step_opts.max_step = std::max({dx, dy, 1e-3});

    const Complex nan(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
    out.values.assign(grid.nx * grid.ny, std::vector<Complex>(out.dim, nan));

    // Continue from the last valid point; fall back to direct matching when the step
    // cannot be tracked safely (e.g. right after a skipped degenerate cell).
    auto continue_to = [&](Complex from_z, const std::vector<Complex>& from_vals, Complex to_z) {
        try {
            return track(family, Path::line(from_z, to_z), LabeledSpectrum{from_vals}, step_opts).final_ordered();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::step_underflow) throw;
            return align_to(from_vals, eigenvalues(family, to_z, opts.roots).values,
                            std::numeric_limits<double>::infinity());
        }
    };

    // Bottom row: left to right from the last valid cell.
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const Complex z = grid.at(i, 0);
        if (degenerate_cell(z)) continue;
        out.values[i * grid.ny] = last ? continue_to(grid.at(*last, 0), out.at(*last, 0), z)
                                       : sorted_labels_at(family, z, order, opts.roots).ordered;
        last = i;
    }
    // Columns: upward from the cell below, or sideways from the finished column to the
    // left when the cell below is missing, so no step passes through a degeneracy.
    for (std::size_t i = 0; i < grid.nx; ++i) {
        for (std::size_t j = 1; j < grid.ny; ++j) {
            const Complex z = grid.at(i, j);
            if (degenerate_cell(z)) continue;
            auto& slot = out.values[i * grid.ny + j];
            if (!out.is_nan(i, j - 1)) slot = continue_to(grid.at(i, j - 1), out.at(i, j - 1), z);
            else if (i > 0 && !out.is_nan(i - 1, j)) slot = continue_to(grid.at(i - 1, j), out.at(i - 1, j), z);
            else if (j > 1 && !out.is_nan(i, j - 2)) slot = continue_to(grid.at(i, j - 2), out.at(i, j - 2), z);
            else slot = sorted_labels_at(family, z, order, opts.roots).ordered;
        }
    }
    return out;
}

} // namespace epmono
