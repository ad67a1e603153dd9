#pragma once

// Replica of the branch-cut + global-sorting way of assigning permutations to loops.
// It is kept deliberately faithful, including the cases where it disagrees with tracking.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "error.hpp"
#include "matrix_family.hpp"
#include "ordering.hpp"
#include "path.hpp"
#include "permutation.hpp"
#include "spectra.hpp"
#include "tracking.hpp"

namespace epmono {

struct BcOptions {
    /// Half-length of the transversal probe across a cut.
    double offset = 0.05;
    /// Halvings allowed while looking for a stable crossing permutation.
    int max_shrinks = 20;
    TrackOptions track;
};

/// Permutation of globally sorted labels across `cut` at `crossing_point`, going from the
/// cut's right side to its left side (the +1 crossing direction).
///
/// Eigenvalues are continued physically along the short transversal and then re-read in
/// the sorting scheme on each side. The offset is halved until no degeneracy lies within
/// twice the offset and two successive offsets agree.
inline Permutation bc_crossing_permutation(const PolyMatrixFamily& family, const BranchCut& cut,
                                           Complex crossing_point, const TotalOrder& order = {},
                                           const BcOptions& opts = {}) {
    const Complex rel = crossing_point - cut.anchor;
    const double along = (std::conj(cut.direction) * rel).real();
    const double off = std::abs(cross(cut.direction, rel));
    const double tol = 1e-9 * std::max(1.0, std::abs(crossing_point));
    if (off > tol || along > cut.length + tol)
        throw Error(ErrorCode::invalid_input, "crossing point is not on the cut");
    if (along <= tol) throw Error(ErrorCode::tangential_crossing, "crossing point is at the cut anchor");

    std::vector<Complex> degs;
    try {
        degs = all_degeneracies(family, opts.track.roots);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::discriminant_identically_zero) throw;
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& d : degs) nearest = std::min(nearest, std::abs(d - crossing_point));

    const Complex n = cut.normal();
    auto attempt = [&](double o) {
        const Complex right = crossing_point - o * n;
        const Complex left = crossing_point + o * n;
        const auto from = sorted_labels_at(family, right, order, opts.track.roots);
        const auto to = sorted_labels_at(family, left, order, opts.track.roots);
        return track(family, Path::line(right, left), from, opts.track, to).permutation;
    };

    double o = opts.offset;
    int shrinks = 0;
    while (nearest <= 2.0 * o && shrinks < opts.max_shrinks) {
        o *= 0.5;
        ++shrinks;
    }
    Permutation current = attempt(o);
    for (; shrinks < opts.max_shrinks; ++shrinks) {
        const Permutation finer = attempt(0.5 * o);
        if (finer == current) return current;
        current = finer;
        o *= 0.5;
    }
    return current;
}

/// Multiplies the crossing permutations of every cut the loop traverses, in path order;
/// crossings in the negative direction contribute the inverse.
inline Permutation bc_loop_permutation(const PolyMatrixFamily& family, const Loop& loop,
                                       const std::vector<BranchCut>& cuts, const TotalOrder& order = {},
                                       const BcOptions& opts = {}) {
    struct Hit {
        Crossing crossing;
        std::size_t cut;
    };
    std::vector<Hit> hits;
    for (std::size_t c = 0; c < cuts.size(); ++c)
        for (const auto& x : crossings(loop.path(), cuts[c])) hits.push_back({x, c});
    std::stable_sort(hits.begin(), hits.end(),
                     [](const Hit& a, const Hit& b) { return a.crossing.position < b.crossing.position; });

    Permutation acc = Permutation::identity(family.dim());
    for (const auto& h : hits) {
        const auto p = bc_crossing_permutation(family, cuts[h.cut], h.crossing.point, order, opts);
        acc = compose(acc, h.crossing.sign > 0 ? p : p.inverse());
    }
    return acc;
}

struct RelabelEvent {
    Complex z;
    /// Arc-length position along the path.
    double position = 0.0;
    /// Sorted label before the event -> sorted label after it, for the same physical sheet.
    Permutation perm;
};

namespace detail {

inline std::optional<std::vector<std::size_t>> try_ranks(const std::vector<Complex>& v, const TotalOrder& order) {
    try {
        return sorted_ranks(v, order);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::unresolvable_tie) throw;
        return std::nullopt;
    }
}

struct RankedSample {
    double s;
    std::vector<Complex> values;  // in tracked (physical) order
    std::vector<std::size_t> ranks;
};

inline void bisect_relabel(const PolyMatrixFamily& family, const Path& path, const TotalOrder& order,
                           const RankedSample& a, const RankedSample& b, double resolution,
                           const RootOptions& roots, std::vector<RelabelEvent>& out) {
    if (b.s - a.s <= resolution) {
        std::vector<std::size_t> images(a.ranks.size());
        for (std::size_t k = 0; k < a.ranks.size(); ++k) images[a.ranks[k]] = b.ranks[k];
        const double mid = 0.5 * (a.s + b.s);
        out.push_back({path.point_at(mid), mid, Permutation(std::move(images))});
        return;
    }
    double s = 0.5 * (a.s + b.s);
    std::optional<std::vector<std::size_t>> ranks;
    std::vector<Complex> values;
    // A tie exactly at the midpoint is skipped by nudging the probe.
    for (int attempt = 0; attempt < 8 && !ranks; ++attempt) {
        values = align_to(a.values, eigenvalues(family, path.point_at(s), roots).values,
                          std::numeric_limits<double>::infinity());
        ranks = try_ranks(values, order);
        if (!ranks) s = a.s + (b.s - a.s) * (0.5 + 0.0625 * (attempt + 1));
    }
    if (!ranks) return;
    const RankedSample m{s, values, *ranks};
    if (m.ranks != a.ranks) bisect_relabel(family, path, order, a, m, resolution, roots, out);
    if (m.ranks != b.ranks) bisect_relabel(family, path, order, m, b, resolution, roots, out);
}

} // namespace detail

/// Points along `path` where the global sorted labelling of the physically continued
/// eigenvalues changes. Each event is located by bisection to `resolution` in arc length.
/// Samples where the order has an unresolvable tie are skipped.
inline std::vector<RelabelEvent> detect_relabeling(const PolyMatrixFamily& family, const Path& path,
                                                   const TotalOrder& order = {}, const TrackOptions& opts = {},
                                                   double resolution = 1e-6) {
    std::vector<RelabelEvent> events;
    if (path.is_constant()) return events;
    const auto tr = track(family, path, solver_labels(family, path.start(), opts.roots), opts);

    std::optional<detail::RankedSample> prev;
    for (const auto& smp : tr.samples) {
        auto ranks = detail::try_ranks(smp.ordered, order);
        if (!ranks) continue;
        detail::RankedSample cur{smp.position, smp.ordered, *ranks};
        if (prev && prev->ranks != cur.ranks)
            detail::bisect_relabel(family, path, order, *prev, cur, resolution, opts.roots, events);
        prev = std::move(cur);
    }
    std::sort(events.begin(), events.end(),
              [](const RelabelEvent& a, const RelabelEvent& b) { return a.position < b.position; });
    return events;
}

struct ComparisonReport {
    /// Sorted labels at the loop's base point; both permutations refer to these.
    LabeledSpectrum base_labels;
    Permutation tracking;
    Permutation branch_cut;
    bool agree = false;
    std::vector<RelabelEvent> relabel_events;
};

/// Ground truth (tracking) against the branch-cut method, both in the global sorted labels
/// at the base point, plus every sorting-induced relabelling along the loop.
inline ComparisonReport compare_methods(const PolyMatrixFamily& family, const Loop& loop,
                                        const std::vector<BranchCut>& cuts, const TotalOrder& order = {},
                                        const BcOptions& opts = {}) {
    ComparisonReport r;
    r.base_labels = sorted_labels_at(family, loop.base_point(), order, opts.track.roots);
    r.tracking = loop_permutation(family, loop, r.base_labels, opts.track);
    r.branch_cut = bc_loop_permutation(family, loop, cuts, order, opts);
    r.agree = r.tracking == r.branch_cut;
    r.relabel_events = detect_relabeling(family, loop.path(), order, opts.track);
    return r;
}

} // namespace epmono
