#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "matrix_family.hpp"
#include "ordering.hpp"
#include "path.hpp"
#include "permutation.hpp"
#include "tracking.hpp"

namespace epmono {

/// One generator (0-based index) raised to +1 or -1.
struct Letter {
    std::size_t generator = 0;
    int exponent = 1;

    Letter inverse() const noexcept { return {generator, -exponent}; }
    friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the keyhole generators, read left to right in path order.
class Word {
public:
    Word() = default;

    explicit Word(const std::vector<Letter>& letters) {
        for (const auto& l : letters) push(l);
    }

    /// Parses "g1 g2^-1 g1" (1-based generator indices, whitespace separated).
    static Word parse(std::string_view text) {
        std::istringstream is{std::string(text)};
        std::string tok;
        Word w;
        while (is >> tok) {
            if (tok.size() < 2 || tok[0] != 'g')
                throw Error(ErrorCode::invalid_input, "bad word token '" + tok + "'");
            int exponent = 1;
            std::string index = tok.substr(1);
            if (const auto caret = index.find('^'); caret != std::string::npos) {
                const std::string e = index.substr(caret + 1);
                if (e == "-1") exponent = -1;
                else if (e != "1") throw Error(ErrorCode::invalid_input, "exponent must be 1 or -1 in '" + tok + "'");
                index = index.substr(0, caret);
            }
            if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos)
                throw Error(ErrorCode::invalid_input, "bad generator index in '" + tok + "'");
            const auto k = std::stoul(index);
            if (k == 0) throw Error(ErrorCode::invalid_input, "generator indices are 1-based");
            w.push({k - 1, exponent});
        }
        return w;
    }

    const std::vector<Letter>& letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }

    /// Appends a letter, cancelling against the last one if they are inverse.
    void push(const Letter& l) {
        if (l.exponent != 1 && l.exponent != -1) throw Error(ErrorCode::invalid_input, "letter exponent must be +-1");
        if (!letters_.empty() && letters_.back() == l.inverse()) letters_.pop_back();
        else letters_.push_back(l);
    }

    Word inverse() const {
        Word w;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push(it->inverse());
        return w;
    }

    friend Word operator*(Word a, const Word& b) {
        for (const auto& l : b.letters_) a.push(l);
        return a;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& l : letters_) {
            if (!s.empty()) s += ' ';
            s += 'g' + std::to_string(l.generator + 1);
            if (l.exponent < 0) s += "^-1";
        }
        return s;
    }

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

/// Base point, keyhole generators of pi_1 of the punctured plane, and their permutations.
struct FundamentalLoopSystem {
    Complex base_point;
    std::vector<Complex> punctures;
    std::vector<Loop> generators;
    std::vector<Permutation> generator_perms;
    LabeledSpectrum base_labels;
    double clearance = 0.0;
};

struct GeneratorOptions {
    /// Keyhole circle radius; defaults to `default_clearance`.
    std::optional<double> clearance;
    /// Extra points (e.g. trivial crossings) that approach segments must detour around.
    std::vector<Complex> avoid;
    /// Labelling at the base point; defaults to the global re_then_im order.
    std::optional<LabeledSpectrum> base_labels;
    TrackOptions track;
};

/// 0.3 times the smallest distance among the obstacles and from the base point to them.
inline double default_clearance(Complex base, const std::vector<Complex>& points) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        d = std::min(d, std::abs(points[i] - base));
        for (std::size_t j = i + 1; j < points.size(); ++j) d = std::min(d, std::abs(points[i] - points[j]));
    }
    return 0.3 * d;
}

/// Punctures sorted by the angle at which they are seen from `base`, ties by distance.
inline std::vector<Complex> order_punctures(Complex base, std::vector<Complex> punctures) {
    std::sort(punctures.begin(), punctures.end(), [base](Complex a, Complex b) {
        const double aa = std::arg(a - base), ab = std::arg(b - base);
        if (aa != ab) return aa < ab;
        return std::abs(a - base) < std::abs(b - base);
    });
    return punctures;
}

namespace detail {

/// Straight path from `from` to `to` that goes around every obstacle it would pass
/// within `clearance` of, along the shorter arc of the obstacle's clearance circle.
inline Path detoured_line(Complex from, Complex to, const std::vector<Complex>& obstacles, double clearance) {
    struct Detour {
        double t_in, t_out;
        Complex center;
    };
    const Complex v = to - from;
    const double vv = std::norm(v);
    std::vector<Detour> detours;
    for (const auto& q : obstacles) {
        const double t_proj = ((q - from) * std::conj(v)).real() / vv;
        const Complex foot = from + std::clamp(t_proj, 0.0, 1.0) * v;
        if (std::abs(q - foot) >= clearance) continue;
        const double h2 = std::norm(q - (from + t_proj * v));
        const double half = std::sqrt(std::max(0.0, clearance * clearance - h2) / vv);
        const double t_in = t_proj - half, t_out = t_proj + half;
        if (t_in <= 0.0 || t_out >= 1.0)
            throw Error(ErrorCode::punctures_too_close, "keyhole endpoint lies inside another clearance disk");
        detours.push_back({t_in, t_out, q});
    }
    std::sort(detours.begin(), detours.end(), [](const Detour& a, const Detour& b) { return a.t_in < b.t_in; });

    std::vector<Segment> segs;
    Complex cursor = from;
    for (const auto& d : detours) {
        const Complex enter = from + d.t_in * v;
        const Complex exit = from + d.t_out * v;
        segs.push_back(LineSegment{cursor, enter});
        const double theta_in = std::arg(enter - d.center);
        double sweep = std::arg((exit - d.center) / (enter - d.center));
        if (std::abs(sweep) > std::numbers::pi - 1e-9) sweep = std::numbers::pi;
        const Arc arc{d.center, clearance, theta_in, theta_in + sweep};
        segs.push_back(arc);
        cursor = point_on(arc, 1.0);
    }
    segs.push_back(LineSegment{cursor, to});
    return Path(std::move(segs));
}

} // namespace detail

/// Keyhole loop: approach toward `puncture`, one counterclockwise circle of radius
/// `clearance`, and the approach retraced back to `base`.
inline Loop keyhole(Complex base, Complex puncture, double clearance, const std::vector<Complex>& obstacles) {
    const Complex u = (puncture - base) / std::abs(puncture - base);
    const Complex approach_end = puncture - clearance * u;
    const Path approach = detail::detoured_line(base, approach_end, obstacles, clearance);
    const double theta = std::arg(approach.end() - puncture);
    const Path circle = Path::arc(puncture, clearance, theta, theta + 2.0 * std::numbers::pi);
    return Loop(concat(concat(approach, circle), reverse(approach)), base);
}

/// Builds one keyhole generator per branch point and tracks each to get its permutation.
inline FundamentalLoopSystem build_generators(const PolyMatrixFamily& family, Complex base_point,
                                              const std::vector<Complex>& branch_points,
                                              const GeneratorOptions& opts = {}) {
    FundamentalLoopSystem sys;
    sys.base_point = base_point;
    sys.punctures = order_punctures(base_point, branch_points);
    std::vector<Complex> obstacles = sys.punctures;
    obstacles.insert(obstacles.end(), opts.avoid.begin(), opts.avoid.end());
    const double c = opts.clearance.value_or(default_clearance(base_point, obstacles));
    if (!(c > 0.0)) throw Error(ErrorCode::punctures_too_close, "clearance must be positive");
    sys.clearance = c;
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        if (std::abs(obstacles[i] - base_point) <= c)
            throw Error(ErrorCode::punctures_too_close, "base point is within the clearance of a puncture");
        for (std::size_t j = i + 1; j < obstacles.size(); ++j)
            if (std::abs(obstacles[i] - obstacles[j]) <= 2.0 * c)
                throw Error(ErrorCode::punctures_too_close, "punctures closer than twice the clearance");
    }

    sys.base_labels = opts.base_labels ? *opts.base_labels : sorted_labels_at(family, base_point, {}, opts.track.roots);

    for (std::size_t i = 0; i < sys.punctures.size(); ++i) {
        std::vector<Complex> others;
        for (std::size_t j = 0; j < obstacles.size(); ++j)
            if (j != i) others.push_back(obstacles[j]);
        Loop g = keyhole(base_point, sys.punctures[i], c, others);
        for (std::size_t j = 0; j < obstacles.size(); ++j) {
            const int w = winding_number(g.path(), obstacles[j]);
            if (w != (j == i ? 1 : 0))
                throw Error(ErrorCode::invalid_input, "keyhole " + std::to_string(i + 1) + " has winding number " +
                                                          std::to_string(w) + " about obstacle " + std::to_string(j + 1));
        }
        sys.generator_perms.push_back(loop_permutation(family, g, sys.base_labels, opts.track));
        sys.generators.push_back(std::move(g));
    }
    return sys;
}

/// Permutation of the loop spelled by `word`: generator permutations folded in path order.
inline Permutation word_permutation(const Word& word, const FundamentalLoopSystem& sys) {
    Permutation acc = Permutation::identity(sys.base_labels.size());
    for (const auto& l : word.letters()) {
        if (l.generator >= sys.generator_perms.size())
            throw Error(ErrorCode::invalid_input, "word references generator g" + std::to_string(l.generator + 1) +
                                                      " but the system has " +
                                                      std::to_string(sys.generator_perms.size()));
        const auto& p = sys.generator_perms[l.generator];
        acc = compose(acc, l.exponent > 0 ? p : p.inverse());
    }
    return acc;
}

/// The loop spelled by `word`, as an actual path (generators concatenated, inverses reversed).
inline Loop word_loop(const Word& word, const FundamentalLoopSystem& sys) {
    Loop acc = Loop::constant(sys.base_point);
    for (const auto& l : word.letters()) {
        if (l.generator >= sys.generators.size())
            throw Error(ErrorCode::invalid_input, "word references a missing generator");
        const auto& g = sys.generators[l.generator];
        acc = concat(acc, l.exponent > 0 ? g : reverse(g));
    }
    return acc;
}

/// Moves the base point along `connecting` (from the old base x0 to a new base x1).
///
/// Generators become reverse(connecting) . g . connecting, and their permutations become
/// sigma^-1 . pi . sigma, where sigma carries the x0 labels to `new_labels` along the path.
/// Without `new_labels` the x0 labels are simply continued, so sigma is the identity. Each
/// conjugated loop is re-tracked and must reproduce the formula.
inline FundamentalLoopSystem conjugate_base_change(const PolyMatrixFamily& family, const FundamentalLoopSystem& sys,
                                                   const Path& connecting,
                                                   const std::optional<LabeledSpectrum>& new_labels = std::nullopt,
                                                   const TrackOptions& opts = {}) {
    if (std::abs(connecting.start() - sys.base_point) > endpoint_tolerance(sys.base_point))
        throw Error(ErrorCode::base_point_mismatch, "connecting path must start at the current base point");

    const auto transport = track(family, connecting, sys.base_labels, opts, new_labels);
    const LabeledSpectrum labels = new_labels ? *new_labels : LabeledSpectrum{transport.final_ordered()};
    const Permutation sigma = new_labels ? transport.permutation : Permutation::identity(labels.size());

    FundamentalLoopSystem out;
    out.base_point = connecting.end();
    out.punctures = sys.punctures;
    out.clearance = sys.clearance;
    out.base_labels = labels;
    const Path back = reverse(connecting);
    for (std::size_t i = 0; i < sys.generators.size(); ++i) {
        Loop g(concat(concat(back, sys.generators[i].path()), connecting), out.base_point);
        const Permutation predicted = conjugate(sys.generator_perms[i], sigma);
        const Permutation tracked = loop_permutation(family, g, labels, opts);
        if (tracked != predicted)
            throw Error(ErrorCode::conjugation_mismatch,
                        "generator " + std::to_string(i + 1) + ": re-tracked " + tracked.cycle_string() +
                            " but conjugation predicts " + predicted.cycle_string());
        out.generators.push_back(std::move(g));
        out.generator_perms.push_back(predicted);
    }
    return out;
}

/// All non-empty reduced words of length <= max_len whose permutation is the identity,
/// in breadth-first order. Rotations and conjugates are reported separately.
inline std::vector<Word> accidental_equivalence_search(const FundamentalLoopSystem& sys, std::size_t max_len) {
    if (max_len < 1) throw Error(ErrorCode::invalid_input, "max_len must be >= 1");
    const std::size_t m = sys.generator_perms.size();
    const std::size_t n = sys.base_labels.size();

    struct Node {
        Word word;
        Permutation perm;
    };
    std::vector<Letter> alphabet;
    for (std::size_t g = 0; g < m; ++g) {
        alphabet.push_back({g, 1});
        alphabet.push_back({g, -1});
    }
    std::vector<Node> frontier{{Word{}, Permutation::identity(n)}};
    std::vector<Word> kernel;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Node> next;
        for (const auto& node : frontier) {
            for (const auto& l : alphabet) {
                if (!node.word.empty() && node.word.letters().back() == l.inverse()) continue;
                Node child{node.word, {}};
                child.word.push(l);
                const auto& p = sys.generator_perms[l.generator];
                child.perm = compose(node.perm, l.exponent > 0 ? p : p.inverse());
                if (child.perm.is_identity()) kernel.push_back(child.word);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    return kernel;
}

} // namespace epmono
