#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "polynomial.hpp"

namespace epmono {

struct LineSegment {
    Complex from;
    Complex to;

    friend bool operator==(const LineSegment&, const LineSegment&) = default;
};

/// Circular arc from `angle_from` to `angle_to` (radians). The sign of the sweep gives the
/// orientation: positive is counterclockwise. Sweeps beyond 2*pi wind several times.
struct Arc {
    Complex center;
    double radius = 0.0;
    double angle_from = 0.0;
    double angle_to = 0.0;

    double sweep() const noexcept { return angle_to - angle_from; }
    friend bool operator==(const Arc&, const Arc&) = default;
};

using Segment = std::variant<LineSegment, Arc>;

inline Complex point_on(const Segment& seg, double t) {
    if (const auto* l = std::get_if<LineSegment>(&seg)) {
        if (t <= 0.0) return l->from;
        if (t >= 1.0) return l->to;
        return l->from + t * (l->to - l->from);
    }
    const auto& a = std::get<Arc>(seg);
    return a.center + std::polar(a.radius, a.angle_from + t * a.sweep());
}

/// Direction of travel at parameter t (not normalized).
inline Complex tangent_on(const Segment& seg, double t) {
    if (const auto* l = std::get_if<LineSegment>(&seg)) return l->to - l->from;
    const auto& a = std::get<Arc>(seg);
    return Complex(0.0, a.sweep()) * std::polar(a.radius, a.angle_from + t * a.sweep());
}

inline double length_of(const Segment& seg) {
    if (const auto* l = std::get_if<LineSegment>(&seg)) return std::abs(l->to - l->from);
    const auto& a = std::get<Arc>(seg);
    return a.radius * std::abs(a.sweep());
}

inline Segment reversed(const Segment& seg) {
    if (const auto* l = std::get_if<LineSegment>(&seg)) return LineSegment{l->to, l->from};
    const auto& a = std::get<Arc>(seg);
    return Arc{a.center, a.radius, a.angle_to, a.angle_from};
}

inline double endpoint_tolerance(Complex z) { return 1e-12 * std::max(1.0, std::abs(z)); }

/// Piecewise path of line segments and circular arcs in the parameter plane.
/// A path with no segments is the constant path at `start()`.
class Path {
public:
    Path() = default;

    explicit Path(Complex constant_point) : anchor_(constant_point) {}

    explicit Path(std::vector<Segment> segments) : segments_(std::move(segments)) {
        if (segments_.empty()) throw Error(ErrorCode::invalid_input, "use Path(point) for a constant path");
        for (auto& s : segments_)
            if (const auto* a = std::get_if<Arc>(&s); a && !(a->radius > 0.0))
                throw Error(ErrorCode::invalid_input, "arc radius must be positive");
        for (std::size_t i = 1; i < segments_.size(); ++i) {
            const Complex prev = point_on(segments_[i - 1], 1.0);
            const Complex next = point_on(segments_[i], 0.0);
            if (std::abs(prev - next) > endpoint_tolerance(prev))
                throw Error(ErrorCode::invalid_input, "path segments " + std::to_string(i - 1) + " and " +
                                                          std::to_string(i) + " are not contiguous");
        }
        anchor_ = point_on(segments_.front(), 0.0);
        cumulative_.reserve(segments_.size() + 1);
        cumulative_.push_back(0.0);
        for (const auto& s : segments_) cumulative_.push_back(cumulative_.back() + length_of(s));
    }

    static Path line(Complex from, Complex to) { return Path({LineSegment{from, to}}); }

    static Path arc(Complex center, double radius, double angle_from, double angle_to) {
        return Path({Arc{center, radius, angle_from, angle_to}});
    }

    /// Full circle starting at `start_angle`; counterclockwise unless `ccw` is false.
    static Path circle(Complex center, double radius, double start_angle = 0.0, bool ccw = true, int turns = 1) {
        const double sweep = 2.0 * std::numbers::pi * turns * (ccw ? 1.0 : -1.0);
        return arc(center, radius, start_angle, start_angle + sweep);
    }

    const std::vector<Segment>& segments() const noexcept { return segments_; }
    bool is_constant() const noexcept { return segments_.empty(); }

    Complex start() const noexcept { return segments_.empty() ? anchor_ : point_on(segments_.front(), 0.0); }
    Complex end() const noexcept { return segments_.empty() ? anchor_ : point_on(segments_.back(), 1.0); }

    double length() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

    bool is_closed() const noexcept { return std::abs(end() - start()) <= endpoint_tolerance(start()); }

    /// Point at arc-length position `s`, clamped to [0, length()].
    Complex point_at(double s) const {
        if (segments_.empty()) return anchor_;
        if (s <= 0.0) return start();
        if (s >= length()) return end();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
        std::size_t idx = static_cast<std::size_t>(std::distance(cumulative_.begin(), it)) - 1;
        idx = std::min(idx, segments_.size() - 1);
        const double len = cumulative_[idx + 1] - cumulative_[idx];
        return point_on(segments_[idx], len > 0.0 ? (s - cumulative_[idx]) / len : 0.0);
    }

    /// Arc-length positions of the sample points: every segment endpoint plus a uniform
    /// subdivision of each segment with spacing at most `max_step`.
    std::vector<double> sample_positions(double max_step) const {
        if (!(max_step > 0.0)) throw Error(ErrorCode::invalid_input, "max_step must be positive");
        if (segments_.empty()) return {0.0, 0.0};
        std::vector<double> out{0.0};
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const double len = cumulative_[i + 1] - cumulative_[i];
            const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / max_step)));
            for (std::size_t k = 1; k <= pieces; ++k)
                out.push_back(k == pieces ? cumulative_[i + 1]
                                          : cumulative_[i] + len * static_cast<double>(k) / static_cast<double>(pieces));
        }
        return out;
    }

    std::vector<Complex> sample(double max_step) const {
        if (!(max_step > 0.0)) throw Error(ErrorCode::invalid_input, "max_step must be positive");
        if (segments_.empty()) return {anchor_, anchor_};
        std::vector<Complex> out{start()};
        for (const auto& seg : segments_) {
            const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length_of(seg) / max_step)));
            for (std::size_t k = 1; k <= pieces; ++k)
                out.push_back(point_on(seg, static_cast<double>(k) / static_cast<double>(pieces)));
        }
        return out;
    }

    /// Euclidean distance from `p` to the nearest point of the path.
    double distance_to(Complex p) const {
        if (segments_.empty()) return std::abs(p - anchor_);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& seg : segments_) best = std::min(best, segment_distance(seg, p));
        return best;
    }

    friend bool operator==(const Path& a, const Path& b) {
        return a.segments_ == b.segments_ && (!a.segments_.empty() || a.anchor_ == b.anchor_);
    }

private:
    static double segment_distance(const Segment& seg, Complex p) {
        if (const auto* l = std::get_if<LineSegment>(&seg)) {
            const Complex v = l->to - l->from;
            const double vv = std::norm(v);
            if (vv == 0.0) return std::abs(p - l->from);
            const double t = std::clamp(((p - l->from) * std::conj(v)).real() / vv, 0.0, 1.0);
            return std::abs(p - (l->from + t * v));
        }
        const auto& a = std::get<Arc>(seg);
        const Complex rel = p - a.center;
        if (rel != Complex{} && angle_in_sweep(a, std::arg(rel)))
            return std::abs(std::abs(rel) - a.radius);
        if (rel == Complex{}) return a.radius;
        return std::min(std::abs(p - point_on(seg, 0.0)), std::abs(p - point_on(seg, 1.0)));
    }

public:
    /// Whether angle `phi` is swept by the arc.
    static bool angle_in_sweep(const Arc& a, double phi) {
        const double sweep = a.sweep();
        if (std::abs(sweep) >= 2.0 * std::numbers::pi) return true;
        const double two_pi = 2.0 * std::numbers::pi;
        double delta = sweep >= 0.0 ? std::fmod(phi - a.angle_from, two_pi) : std::fmod(a.angle_from - phi, two_pi);
        if (delta < 0.0) delta += two_pi;
        return delta <= std::abs(sweep);
    }

private:
    Complex anchor_{};
    std::vector<Segment> segments_;
    std::vector<double> cumulative_;
};

inline Path reverse(const Path& p) {
    if (p.is_constant()) return p;
    std::vector<Segment> segs;
    segs.reserve(p.segments().size());
    for (auto it = p.segments().rbegin(); it != p.segments().rend(); ++it) segs.push_back(reversed(*it));
    return Path(std::move(segs));
}

/// `a` followed by `b`; the end of `a` must meet the start of `b`.
inline Path concat(const Path& a, const Path& b) {
    if (std::abs(a.end() - b.start()) > endpoint_tolerance(a.end()))
        throw Error(ErrorCode::base_point_mismatch, "paths do not meet");
    if (a.is_constant()) return b;
    if (b.is_constant()) return a;
    std::vector<Segment> segs = a.segments();
    segs.insert(segs.end(), b.segments().begin(), b.segments().end());
    return Path(std::move(segs));
}

/// Closed path with a distinguished base point.
class Loop {
public:
    Loop() = default;

    explicit Loop(Path path) : Loop(path, path.start()) {}

    Loop(Path path, Complex base_point) : path_(std::move(path)), base_(base_point) {
        if (std::abs(path_.start() - base_) > endpoint_tolerance(base_) ||
            std::abs(path_.end() - base_) > endpoint_tolerance(base_))
            throw Error(ErrorCode::base_point_mismatch, "loop must start and end at its base point");
    }

    static Loop constant(Complex base) { return Loop(Path(base), base); }

    const Path& path() const noexcept { return path_; }
    Complex base_point() const noexcept { return base_; }

    friend bool operator==(const Loop&, const Loop&) = default;

private:
    Path path_;
    Complex base_{};
};

inline Loop concat(const Loop& a, const Loop& b) {
    if (std::abs(a.base_point() - b.base_point()) > endpoint_tolerance(a.base_point()))
        throw Error(ErrorCode::base_point_mismatch, "loops have different base points");
    return Loop(concat(a.path(), b.path()), a.base_point());
}

inline Loop reverse(const Loop& l) { return Loop(reverse(l.path()), l.base_point()); }

/// Number of counterclockwise turns of a closed path around `p`, by angle accumulation.
inline int winding_number(const Path& path, Complex p, double max_step = 0.0) {
    if (path.is_constant()) return 0;
    const double clearance = path.distance_to(p);
    if (clearance == 0.0) throw Error(ErrorCode::invalid_input, "point lies on the path");
    const double step = max_step > 0.0 ? max_step : clearance / 4.0;
    const auto pts = path.sample(step);
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) total += std::arg((pts[i] - p) / (pts[i - 1] - p));
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// Ray (or segment) anchored at a branch point. `direction` is normalized on construction.
struct BranchCut {
    Complex anchor{};
    Complex direction{0.0, 1.0};
    double length = 1e6;

    BranchCut() = default;
    BranchCut(Complex anchor_, Complex direction_, double length_ = 1e6)
        : anchor(anchor_), direction(direction_), length(length_) {
        if (std::abs(direction) == 0.0) throw Error(ErrorCode::invalid_input, "cut direction must be nonzero");
        if (!(length > 0.0)) throw Error(ErrorCode::invalid_input, "cut length must be positive");
        direction /= std::abs(direction);
    }

    /// Left normal of the cut (direction rotated by +90 degrees).
    Complex normal() const noexcept { return Complex(0.0, 1.0) * direction; }
};

/// 2D cross product Im(conj(a) * b).
inline double cross(Complex a, Complex b) noexcept { return a.real() * b.imag() - a.imag() * b.real(); }

struct Crossing {
    Complex point;
    /// +1 when the path tangent points to the cut's left (cross(direction, tangent) > 0).
    int sign = 0;
    /// Arc-length position along the path.
    double position = 0.0;
};

/// Transversal intersections of `path` with `cut`, ordered along the path.
///
/// Each segment is treated as half-open [start, end) except the final one, so a crossing
/// at a joint (or at the base point of a closed loop) is counted once.
inline std::vector<Crossing> crossings(const Path& path, const BranchCut& cut, double tol = 1e-9) {
    std::vector<Crossing> out;
    if (path.is_constant()) return out;
    const auto& segs = path.segments();
    double offset = 0.0;
    const Complex d = cut.direction;

    auto transversal = [&](Complex tangent, Complex where) {
        const double t = std::abs(tangent);
        const double c = t > 0.0 ? cross(d, tangent) / t : 0.0;
        if (std::abs(c) <= tol)
            throw Error(ErrorCode::tangential_crossing, "path meets cut tangentially near (" +
                                                            std::to_string(where.real()) + ", " +
                                                            std::to_string(where.imag()) + ")");
        return c > 0.0 ? 1 : -1;
    };
    auto check_anchor = [&](double u, Complex where) {
        if (std::abs(u) <= tol * std::max(1.0, std::abs(cut.anchor)))
            throw Error(ErrorCode::tangential_crossing, "path touches the cut anchor at (" +
                                                            std::to_string(where.real()) + ", " +
                                                            std::to_string(where.imag()) + ")");
    };

    for (std::size_t i = 0; i < segs.size(); ++i) {
        const bool last = i + 1 == segs.size();
        const double len = length_of(segs[i]);
        if (const auto* l = std::get_if<LineSegment>(&segs[i])) {
            const Complex v = l->to - l->from;
            const Complex w = cut.anchor - l->from;
            const double denom = cross(v, d);
            if (len == 0.0) {
                offset += len;
                continue;
            }
            if (std::abs(denom) <= tol * std::abs(v)) {
                // Parallel: only an error if the segment runs along the cut.
                const double off_line = std::abs(cross(d, -w));
                const double u0 = ((l->from - cut.anchor) * std::conj(d)).real();
                const double u1 = ((l->to - cut.anchor) * std::conj(d)).real();
                if (off_line <= tol && std::max(u0, u1) >= 0.0 && std::min(u0, u1) <= cut.length)
                    throw Error(ErrorCode::tangential_crossing, "segment runs along the cut");
            } else {
                const double t = cross(w, d) / denom;
                const double u = cross(w, v) / denom;
                if (t >= 0.0 && (t < 1.0 || (last && t <= 1.0)) && u >= -tol && u <= cut.length) {
                    const Complex q = l->from + t * v;
                    check_anchor(u, q);
                    out.push_back({q, transversal(v, q), offset + t * len});
                }
            }
        } else {
            const auto& a = std::get<Arc>(segs[i]);
            // |anchor + u d - center|^2 = r^2
            const Complex rel = cut.anchor - a.center;
            const double b = (std::conj(d) * rel).real();
            const double c = std::norm(rel) - a.radius * a.radius;
            const double disc = b * b - c;
            if (disc >= 0.0) {
                const double root = std::sqrt(disc);
                const double us[2] = {-b - root, -b + root};
                const int count = root <= tol * std::max(1.0, a.radius) ? 1 : 2;
                const double sweep = std::abs(a.sweep());
                const double two_pi = 2.0 * std::numbers::pi;
                for (int k = 0; k < count; ++k) {
                    const double u = us[k];
                    if (u < -tol || u > cut.length) continue;
                    const Complex q = cut.anchor + u * d;
                    const double phi = std::arg(q - a.center);
                    double delta = a.sweep() >= 0.0 ? std::fmod(phi - a.angle_from, two_pi)
                                                    : std::fmod(a.angle_from - phi, two_pi);
                    if (delta < 0.0) delta += two_pi;
                    if (delta >= two_pi * (1.0 - 1e-15)) delta = 0.0;
                    for (double dd = delta; dd < sweep || (last && dd <= sweep); dd += two_pi) {
                        const double t = sweep > 0.0 ? dd / sweep : 0.0;
                        check_anchor(u, q);
                        out.push_back({q, transversal(tangent_on(segs[i], t), q), offset + t * len});
                    }
                }
            }
        }
        offset += len;
    }
    std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) { return x.position < y.position; });
    return out;
}

} // namespace epmono
