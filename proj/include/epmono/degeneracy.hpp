#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix_family.hpp"
#include "path.hpp"
#include "permutation.hpp"
#include "spectra.hpp"
#include "tracking.hpp"

namespace epmono {

struct DegeneracyPoint {
    enum class Kind { branch_point, trivial_crossing };

    Complex location;
    Kind kind = Kind::trivial_crossing;
    /// Monodromy of a small counterclockwise circle, in the solver's labelling at its start.
    Permutation local_permutation;
    double probe_radius = 0.0;
};

inline std::string_view to_string(DegeneracyPoint::Kind k) {
    return k == DegeneracyPoint::Kind::branch_point ? "branch_point" : "trivial_crossing";
}

/// Half the distance to the nearest other degeneracy, capped at 0.25.
inline double default_probe_radius(Complex z0, const std::vector<Complex>& degeneracies) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& d : degeneracies) {
        const double dist = std::abs(d - z0);
        if (dist > degeneracy_dedup_tol) nearest = std::min(nearest, dist);
    }
    return std::min(0.25, 0.5 * nearest);
}

/// Tracks the eigenvalues once around the circle of radius `probe_radius` about `z0`;
/// a nontrivial permutation marks a branch point.
inline DegeneracyPoint classify_degeneracy(const PolyMatrixFamily& family, Complex z0,
                                           std::optional<double> probe_radius = std::nullopt,
                                           const TrackOptions& opts = {}) {
    const auto all = all_degeneracies(family, opts.roots);
    const double r = probe_radius.value_or(default_probe_radius(z0, all));
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::invalid_input, "probe radius must be positive");
    for (const auto& d : all) {
        const double dist = std::abs(d - z0);
        if (dist > degeneracy_dedup_tol && dist < 2.0 * r)
            throw Error(ErrorCode::probe_circle_contaminated,
                        "degeneracy at (" + std::to_string(d.real()) + ", " + std::to_string(d.imag()) +
                            ") lies within twice the probe radius");
    }

    const Path circle = Path::circle(z0, r);
    const auto labels = solver_labels(family, circle.start(), opts.roots);
    const auto result = track(family, circle, labels, opts);

    DegeneracyPoint p;
    p.location = z0;
    p.probe_radius = r;
    p.local_permutation = result.permutation;
    p.kind = result.permutation.is_identity() ? DegeneracyPoint::Kind::trivial_crossing
                                              : DegeneracyPoint::Kind::branch_point;
    return p;
}

} // namespace epmono
