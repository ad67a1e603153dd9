#pragma once

// JSON and CSV surfaces. Grammar is documented in docs/formats.md.

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bc_method.hpp"
#include "degeneracy.hpp"
#include "error.hpp"
#include "matrix_family.hpp"
#include "monodromy.hpp"
#include "path.hpp"
#include "permutation.hpp"
#include "sheets.hpp"
#include "tracking.hpp"

namespace epmono::io {

using json = nlohmann::json;

inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorCode::invalid_input, "expected a complex number [re, im], got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

inline std::vector<Complex> complex_list_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::invalid_input, "expected a list of [re, im] pairs");
    std::vector<Complex> out;
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

inline const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorCode::invalid_input, std::string("missing required field '") + key + "'");
    return j.at(key);
}

inline double number_from_json(const json& j, const char* what) {
    if (!j.is_number()) throw Error(ErrorCode::invalid_input, std::string(what) + " must be a number");
    return j.get<double>();
}

// ---- family -------------------------------------------------------------------------

/// { "dim": n, "entries": [[coeffs, ...], ...] }, coeffs ascending [[re,im], ...].
/// Missing rows, missing entries, null and [] all mean the zero polynomial.
inline PolyMatrixFamily family_from_json(const json& j) {
    const json& dim_j = require(j, "dim");
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1)
        throw Error(ErrorCode::invalid_input, "dim must be a positive integer");
    const auto n = static_cast<std::size_t>(dim_j.get<long long>());
    const json& rows = require(j, "entries");
    if (!rows.is_array() || rows.size() > n) throw Error(ErrorCode::invalid_input, "entries must have at most dim rows");
    SquareMatrix<Polynomial> m(n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() > n)
            throw Error(ErrorCode::invalid_input, "entries row " + std::to_string(r) + " must have at most dim entries");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            const json& e = rows[r][c];
            if (e.is_null()) continue;
            m(r, c) = Polynomial(complex_list_from_json(e));
        }
    }
    return PolyMatrixFamily(std::move(m));
}

inline json to_json(const PolyMatrixFamily& f) {
    json rows = json::array();
    for (std::size_t r = 0; r < f.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < f.dim(); ++c) row.push_back(to_json(f.entry(r, c).coeffs()));
        rows.push_back(row);
    }
    return {{"dim", f.dim()}, {"entries", rows}};
}

// ---- paths, loops, cuts -------------------------------------------------------------

/// {"base": [re,im], "segments": [{"kind":"line","to":[re,im]} |
///  {"kind":"arc","center":[re,im],"radius":r,"from_angle":a0,"to_angle":a1}, ...]}
inline Path path_from_json(const json& j) {
    const Complex base = complex_from_json(require(j, "base"));
    if (!j.contains("segments") || j.at("segments").empty()) return Path(base);
    const json& segs_j = j.at("segments");
    if (!segs_j.is_array()) throw Error(ErrorCode::invalid_input, "segments must be a list");
    std::vector<Segment> segs;
    Complex cursor = base;
    for (const auto& s : segs_j) {
        const json& kind = require(s, "kind");
        if (kind == "line") {
            const Complex to = complex_from_json(require(s, "to"));
            segs.push_back(LineSegment{cursor, to});
        } else if (kind == "arc") {
            const Arc a{complex_from_json(require(s, "center")), number_from_json(require(s, "radius"), "radius"),
                        number_from_json(require(s, "from_angle"), "from_angle"),
                        number_from_json(require(s, "to_angle"), "to_angle")};
            if (!(a.radius > 0.0)) throw Error(ErrorCode::invalid_input, "arc radius must be positive");
            const Complex start = point_on(a, 0.0);
            if (std::abs(start - cursor) > 1e-9 * std::max(1.0, std::abs(cursor)))
                throw Error(ErrorCode::invalid_input, "arc does not start where the previous segment ends");
            // Absorb input rounding (e.g. angles typed to 16 digits) with a tiny connector.
            if (std::abs(start - cursor) > endpoint_tolerance(cursor)) segs.push_back(LineSegment{cursor, start});
            segs.push_back(a);
        } else {
            throw Error(ErrorCode::invalid_input, "segment kind must be 'line' or 'arc'");
        }
        cursor = point_on(segs.back(), 1.0);
    }
    return Path(std::move(segs));
}

inline Loop loop_from_json(const json& j) {
    const Path p = path_from_json(j);
    const double gap = std::abs(p.end() - p.start());
    if (gap > 1e-9 * std::max(1.0, std::abs(p.start())))
        throw Error(ErrorCode::base_point_mismatch, "loop does not return to its base point");
    if (gap > endpoint_tolerance(p.start())) return Loop(concat(p, Path::line(p.end(), p.start())), p.start());
    return Loop(p, p.start());
}

inline json to_json(const Path& p) {
    json segs = json::array();
    for (const auto& s : p.segments()) {
        if (const auto* l = std::get_if<LineSegment>(&s)) {
            segs.push_back({{"kind", "line"}, {"to", to_json(l->to)}});
        } else {
            const auto& a = std::get<Arc>(s);
            segs.push_back({{"kind", "arc"},
                            {"center", to_json(a.center)},
                            {"radius", a.radius},
                            {"from_angle", a.angle_from},
                            {"to_angle", a.angle_to}});
        }
    }
    return {{"base", to_json(p.start())}, {"segments", segs}};
}

inline json to_json(const Loop& l) { return to_json(l.path()); }

/// {"anchor": [re,im], "direction": [re,im], "length": r}; length defaults to 1e6.
inline BranchCut cut_from_json(const json& j) {
    const double length = j.contains("length") ? number_from_json(j.at("length"), "length") : 1e6;
    return BranchCut(complex_from_json(require(j, "anchor")), complex_from_json(require(j, "direction")), length);
}

inline json to_json(const BranchCut& c) {
    return {{"anchor", to_json(c.anchor)}, {"direction", to_json(c.direction)}, {"length", c.length}};
}

// ---- results ------------------------------------------------------------------------

/// {"cycles": "(1 2)", "images": [2, 1, 3]} with 1-based one-line images.
inline json to_json(const Permutation& p) {
    json images = json::array();
    for (auto v : p.images()) images.push_back(v + 1);
    return {{"cycles", p.cycle_string()}, {"images", images}};
}

inline Permutation permutation_from_json(const json& j) {
    const json& images = require(j, "images");
    std::vector<std::size_t> v;
    for (const auto& e : images) {
        if (!e.is_number_integer() || e.get<long long>() < 1)
            throw Error(ErrorCode::invalid_input, "permutation images are 1-based integers");
        v.push_back(static_cast<std::size_t>(e.get<long long>() - 1));
    }
    return Permutation(std::move(v));
}

inline json to_json(const DegeneracyPoint& d) {
    return {{"location", to_json(d.location)},
            {"kind", std::string(to_string(d.kind))},
            {"local_permutation", to_json(d.local_permutation)},
            {"probe_radius", d.probe_radius}};
}

inline json to_json(const FundamentalLoopSystem& sys) {
    json gens = json::array();
    for (std::size_t i = 0; i < sys.generators.size(); ++i)
        gens.push_back({{"name", "g" + std::to_string(i + 1)},
                        {"puncture", to_json(sys.punctures[i])},
                        {"permutation", to_json(sys.generator_perms[i])},
                        {"loop", to_json(sys.generators[i])}});
    return {{"base", to_json(sys.base_point)},
            {"base_labels", to_json(sys.base_labels.ordered)},
            {"clearance", sys.clearance},
            {"punctures", to_json(sys.punctures)},
            {"generators", gens}};
}

inline json to_json(const RelabelEvent& e) {
    return {{"z", to_json(e.z)}, {"position", e.position}, {"permutation", to_json(e.perm)}};
}

inline json to_json(const ComparisonReport& r) {
    json events = json::array();
    for (const auto& e : r.relabel_events) events.push_back(to_json(e));
    return {{"base_labels", to_json(r.base_labels.ordered)},
            {"tracking", to_json(r.tracking)},
            {"branch_cut", to_json(r.branch_cut)},
            {"agree", r.agree},
            {"relabel_events", events}};
}

// ---- CSV ----------------------------------------------------------------------------

inline void write_csv_number(std::ostream& os, double v) {
    if (std::isnan(v)) {
        os << "nan";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

inline void write_lambda_header(std::ostream& os, std::size_t n) {
    for (std::size_t k = 1; k <= n; ++k) os << ",re_lambda_" << k << ",im_lambda_" << k;
    os << '\n';
}

/// s_index,re_z,im_z,re_lambda_1,im_lambda_1,...
inline void write_track_csv(std::ostream& os, const TrackResult& r, std::size_t n) {
    os << "s_index,re_z,im_z";
    write_lambda_header(os, n);
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const auto& s = r.samples[i];
        os << i << ',';
        write_csv_number(os, s.z.real());
        os << ',';
        write_csv_number(os, s.z.imag());
        for (const auto& v : s.ordered) {
            os << ',';
            write_csv_number(os, v.real());
            os << ',';
            write_csv_number(os, v.imag());
        }
        os << '\n';
    }
}

/// re_z,im_z,re_lambda_1,im_lambda_1,... one row per grid point, column-major (Re z outer).
inline void write_sheets_csv(std::ostream& os, const SheetGrid& g) {
    os << "re_z,im_z";
    write_lambda_header(os, g.dim);
    for (std::size_t i = 0; i < g.grid.nx; ++i) {
        for (std::size_t j = 0; j < g.grid.ny; ++j) {
            const Complex z = g.grid.at(i, j);
            write_csv_number(os, z.real());
            os << ',';
            write_csv_number(os, z.imag());
            for (const auto& v : g.at(i, j)) {
                os << ',';
                write_csv_number(os, v.real());
                os << ',';
                write_csv_number(os, v.imag());
            }
            os << '\n';
        }
    }
}

} // namespace epmono::io
