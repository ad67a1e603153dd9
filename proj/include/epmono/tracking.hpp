#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "error.hpp"
#include "matrix_family.hpp"
#include "path.hpp"
#include "permutation.hpp"
#include "spectra.hpp"

namespace epmono {

/// Eigenvalues in a fixed order; position k carries label k.
struct LabeledSpectrum {
    std::vector<Complex> ordered;

    std::size_t size() const noexcept { return ordered.size(); }
    friend bool operator==(const LabeledSpectrum&, const LabeledSpectrum&) = default;
};

struct TrackOptions {
    /// Sampling step along the path; defaults to `default_max_step`.
    std::optional<double> max_step;
    /// Minimum ratio (distance to the runner-up eigenvalue) / (distance moved).
    double safety = 2.0;
    /// Bisections allowed per sampling interval before giving up.
    int max_depth = 30;
    /// When positive, the path must stay this far from every degeneracy.
    double min_clearance = 0.0;
    /// Relative tolerance for comparing labelled and computed spectra.
    double multiset_tol = 1e-8;
    RootOptions roots;
};

struct TrackSample {
    Complex z;
    /// Arc-length position along the tracked path.
    double position = 0.0;
    std::vector<Complex> ordered;
};

struct TrackResult {
    /// Label k ends up at position `permutation[k]` of the target labelling.
    Permutation permutation;
    std::vector<TrackSample> samples;
    double min_gap = std::numeric_limits<double>::infinity();
    int refinements = 0;

    const std::vector<Complex>& final_ordered() const { return samples.back().ordered; }
};

inline double spectrum_scale(const std::vector<Complex>& v) {
    double s = 1.0;
    for (const auto& x : v) s = std::max(s, std::abs(x));
    return s;
}

inline double min_separation(const std::vector<Complex>& v) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) gap = std::min(gap, std::abs(v[i] - v[j]));
    return gap;
}

/// Reorders the computed `values` to follow `reference` (optimal assignment). Throws
/// MultisetMismatch if some reference value has no computed value within `abs_tol`.
inline std::vector<Complex> align_to(const std::vector<Complex>& reference, const std::vector<Complex>& values,
                                     double abs_tol) {
    if (reference.size() != values.size())
        throw Error(ErrorCode::multiset_mismatch, "labelled spectrum has the wrong number of eigenvalues");
    const auto m = match_points(reference, values);
    std::vector<Complex> out(reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i) {
        out[i] = values[m.column_of[i]];
        if (std::abs(out[i] - reference[i]) > abs_tol)
            throw Error(ErrorCode::multiset_mismatch,
                        "labelled eigenvalue " + std::to_string(i + 1) + " does not match the spectrum (off by " +
                            std::to_string(std::abs(out[i] - reference[i])) + ")");
    }
    return out;
}

/// Labels the spectrum at `z` following approximate values `hint` (e.g. typed in by hand).
inline LabeledSpectrum labels_from_hint(const PolyMatrixFamily& family, Complex z, const std::vector<Complex>& hint,
                                        double abs_tol = 1e-4, const RootOptions& opts = {}) {
    return {align_to(hint, eigenvalues(family, z, opts).values, abs_tol)};
}

/// Labels in whatever order the eigensolver returns them.
inline LabeledSpectrum solver_labels(const PolyMatrixFamily& family, Complex z, const RootOptions& opts = {}) {
    return {eigenvalues(family, z, opts).values};
}

/// 1/16 of the distance from the path to the nearest degeneracy, floored at 1e-3.
/// Without any degeneracy the step is 1/32 of the path length.
inline double default_max_step(const PolyMatrixFamily& family, const Path& path, const RootOptions& opts = {}) {
    std::vector<Complex> degs;
    try {
        degs = all_degeneracies(family, opts);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::discriminant_identically_zero) throw;
    }
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& d : degs) dist = std::min(dist, path.distance_to(d));
    if (std::isfinite(dist)) return std::max(1e-3, dist / 16.0);
    return std::max(1e-3, path.length() / 32.0);
}

namespace detail {

class Tracker {
public:
    Tracker(const PolyMatrixFamily& family, const Path& path, const TrackOptions& opts, TrackResult& out)
        : family_(family), path_(path), opts_(opts), out_(out) {}

    void advance(double from, double to, std::vector<Complex>& current, int depth) {
        const Complex z = path_.point_at(to);
        const auto next = eigenvalues(family_, z, opts_.roots).values;
        const auto m = match_points(current, next);

        bool safe = true;
        for (std::size_t i = 0; i < current.size() && safe; ++i) {
            const double moved = std::abs(current[i] - next[m.column_of[i]]);
            double runner_up = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < next.size(); ++j)
                if (j != m.column_of[i]) runner_up = std::min(runner_up, std::abs(current[i] - next[j]));
            if (current.size() > 1 && !(runner_up >= opts_.safety * moved && runner_up > 0.0)) safe = false;
        }

        if (!safe) {
            if (depth >= opts_.max_depth)
                throw Error(ErrorCode::step_underflow, "bisection depth exhausted near z = (" +
                                                           std::to_string(z.real()) + ", " +
                                                           std::to_string(z.imag()) + ")");
            ++out_.refinements;
            const double mid = 0.5 * (from + to);
            advance(from, mid, current, depth + 1);
            advance(mid, to, current, depth + 1);
            return;
        }

        std::vector<Complex> ordered(current.size());
        for (std::size_t i = 0; i < current.size(); ++i) ordered[i] = next[m.column_of[i]];
        current = std::move(ordered);
        out_.min_gap = std::min(out_.min_gap, min_separation(current));
        out_.samples.push_back({z, to, current});
    }

private:
    const PolyMatrixFamily& family_;
    const Path& path_;
    const TrackOptions& opts_;
    TrackResult& out_;
};

} // namespace detail

/// Continues the labelled eigenvalues along `path` by optimal nearest matching with
/// bisection whenever a step is ambiguous.
///
/// The permutation is read against `target` (labels at the path end). If no target is
/// given, closed paths use `initial` and open paths use the continued labels themselves,
/// which makes the permutation the identity.
inline TrackResult track(const PolyMatrixFamily& family, const Path& path, const LabeledSpectrum& initial,
                         const TrackOptions& opts = {}, const std::optional<LabeledSpectrum>& target = std::nullopt) {
    if (initial.size() != family.dim())
        throw Error(ErrorCode::multiset_mismatch, "initial labels must list every eigenvalue");

    if (opts.min_clearance > 0.0) {
        for (const auto& d : all_degeneracies(family, opts.roots)) {
            if (path.distance_to(d) < opts.min_clearance)
                throw Error(ErrorCode::step_underflow, "path passes within min_clearance of degeneracy (" +
                                                           std::to_string(d.real()) + ", " +
                                                           std::to_string(d.imag()) + ")");
        }
    }

    const double step = opts.max_step.value_or(default_max_step(family, path, opts.roots));
    const Complex z0 = path.start();
    auto current = align_to(initial.ordered, eigenvalues(family, z0, opts.roots).values,
                            opts.multiset_tol * spectrum_scale(initial.ordered));

    const auto start_values = current;

    TrackResult result;
    result.samples.push_back({z0, 0.0, current});
    result.min_gap = min_separation(current);

    detail::Tracker tracker(family, path, opts, result);
    const auto positions = path.sample_positions(step);
    for (std::size_t i = 1; i < positions.size(); ++i) tracker.advance(positions[i - 1], positions[i], current, 0);

    const auto& final_values = result.samples.back().ordered;
    std::vector<Complex> reference;
    if (target) reference = target->ordered;
    else if (path.is_closed()) reference = start_values;
    else reference = final_values;

    if (reference.size() != final_values.size())
        throw Error(ErrorCode::multiset_mismatch, "target labels have the wrong size");
    const auto m = match_points(final_values, reference);
    const double tol = 1e-6 * spectrum_scale(reference);
    for (std::size_t k = 0; k < final_values.size(); ++k)
        if (std::abs(final_values[k] - reference[m.column_of[k]]) > tol)
            throw Error(ErrorCode::multiset_mismatch, "continued spectrum does not match the target labels");
    result.permutation = Permutation(m.column_of);
    return result;
}

inline Permutation loop_permutation(const PolyMatrixFamily& family, const Loop& loop, const LabeledSpectrum& initial,
                                    const TrackOptions& opts = {}) {
    return track(family, loop.path(), initial, opts).permutation;
}

} // namespace epmono
