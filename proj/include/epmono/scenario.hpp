#pragma once

// Scenario files: one JSON document bundling a family, named loops and cuts, and options.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bc_method.hpp"
#include "degeneracy.hpp"
#include "error.hpp"
#include "io.hpp"
#include "matrix_family.hpp"
#include "monodromy.hpp"
#include "ordering.hpp"
#include "path.hpp"
#include "sheets.hpp"
#include "spectra.hpp"
#include "tracking.hpp"

namespace epmono {

struct ScenarioLoop {
    Loop loop;
    /// Optional labelling at the loop's base point, accurate to 1e-3 relative.
    std::optional<std::vector<Complex>> labels;
};

struct ScenarioOptions {
    std::optional<double> max_step;
    double safety = 2.0;
    int max_depth = 30;
    unsigned long long seed = 0;
    std::optional<double> clearance;
    std::optional<double> probe_radius;
    std::optional<Disk> region;
    std::optional<std::vector<Complex>> punctures;
    std::vector<Complex> avoid;
    double bc_offset = 0.05;
    std::optional<std::size_t> kernel;

    TrackOptions track() const {
        TrackOptions t;
        t.max_step = max_step;
        t.safety = safety;
        t.max_depth = max_depth;
        t.roots.seed = seed;
        return t;
    }

    BcOptions bc() const {
        BcOptions b;
        b.offset = bc_offset;
        b.track = track();
        return b;
    }
};

struct Scenario {
    PolyMatrixFamily family;
    Complex base_point{0.0, 0.0};
    /// Optional labelling at base_point for the generator system; default is the global order.
    std::optional<std::vector<Complex>> base_labels;
    TotalOrder order;
    std::map<std::string, ScenarioLoop> loops;
    std::map<std::string, BranchCut> cuts;
    ScenarioOptions options;
    std::optional<GridSpec> sheets;

    const ScenarioLoop& loop(const std::string& name) const {
        const auto it = loops.find(name);
        if (it == loops.end()) throw Error(ErrorCode::invalid_input, "scenario has no loop named '" + name + "'");
        return it->second;
    }

    std::vector<BranchCut> cut_list() const {
        std::vector<BranchCut> out;
        for (const auto& [name, c] : cuts) out.push_back(c);
        return out;
    }

    /// Initial labels for a loop: its hint if present, otherwise the global order at its base.
    LabeledSpectrum labels_for(const ScenarioLoop& l) const {
        const auto roots = options.track().roots;
        if (l.labels)
            return labels_from_hint(family, l.loop.base_point(), *l.labels, 1e-3 * spectrum_scale(*l.labels), roots);
        return sorted_labels_at(family, l.loop.base_point(), order, roots);
    }
};

/// Every degeneracy of the scenario family (inside options.region when given), classified.
inline std::vector<DegeneracyPoint> degeneracy_census(const Scenario& s) {
    const auto t = s.options.track();
    const auto pts = s.options.region ? locate_degeneracies(s.family, *s.options.region, t.roots)
                                      : all_degeneracies(s.family, t.roots);
    std::vector<DegeneracyPoint> out;
    for (const auto& z : pts) out.push_back(classify_degeneracy(s.family, z, s.options.probe_radius, t));
    return out;
}

/// Fundamental loop system at the scenario base point. Punctures are the explicit
/// options.punctures, or else every classified branch point; trivial crossings and
/// options.avoid are detoured around.
inline FundamentalLoopSystem scenario_loop_system(const Scenario& s) {
    GeneratorOptions g;
    g.track = s.options.track();
    g.clearance = s.options.clearance;
    g.avoid = s.options.avoid;
    if (s.base_labels)
        g.base_labels = labels_from_hint(s.family, s.base_point, *s.base_labels, 1e-3 * spectrum_scale(*s.base_labels),
                                         g.track.roots);
    else
        g.base_labels = sorted_labels_at(s.family, s.base_point, s.order, g.track.roots);
    std::vector<Complex> punctures;
    if (s.options.punctures) {
        punctures = *s.options.punctures;
    } else {
        for (const auto& d : degeneracy_census(s)) {
            if (d.kind == DegeneracyPoint::Kind::branch_point) punctures.push_back(d.location);
            else g.avoid.push_back(d.location);
        }
    }
    return build_generators(s.family, s.base_point, punctures, g);
}

namespace io {

/// Parses JSON text, rejecting duplicate keys inside any object.
inline json parse_strict(const std::string& text) {
    std::vector<std::set<std::string>> keys;
    std::string duplicate;
    auto cb = [&](int, json::parse_event_t ev, json& parsed) {
        if (ev == json::parse_event_t::object_start) keys.emplace_back();
        else if (ev == json::parse_event_t::object_end) keys.pop_back();
        else if (ev == json::parse_event_t::key && !keys.empty()) {
            const auto k = parsed.get<std::string>();
            if (!keys.back().insert(k).second && duplicate.empty()) duplicate = k;
        }
        return true;
    };
    json j;
    try {
        j = json::parse(text, cb);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_input, std::string("malformed JSON: ") + e.what());
    }
    if (!duplicate.empty()) throw Error(ErrorCode::invalid_input, "duplicate key '" + duplicate + "'");
    return j;
}

inline GridSpec grid_from_json(const json& j) {
    GridSpec g;
    g.re_min = number_from_json(require(j, "re_min"), "re_min");
    g.re_max = number_from_json(require(j, "re_max"), "re_max");
    g.im_min = number_from_json(require(j, "im_min"), "im_min");
    g.im_max = number_from_json(require(j, "im_max"), "im_max");
    for (const char* k : {"nx", "ny"})
        if (!require(j, k).is_number_integer() || j.at(k).get<long long>() < 0)
            throw Error(ErrorCode::invalid_input, std::string(k) + " must be a non-negative integer");
    g.nx = j.at("nx").get<std::size_t>();
    g.ny = j.at("ny").get<std::size_t>();
    return g;
}

inline ScenarioOptions options_from_json(const json& j) {
    ScenarioOptions o;
    if (!j.is_object()) throw Error(ErrorCode::invalid_input, "options must be an object");
    static const std::set<std::string> known{"max_step", "safety",     "max_depth", "seed",   "clearance", "probe_radius",
                                             "region",   "punctures",  "avoid",     "bc_offset", "kernel"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw Error(ErrorCode::invalid_input, "unknown option '" + k + "'");
    auto positive = [&](const char* k) {
        const double v = number_from_json(j.at(k), k);
        if (!(v > 0.0)) throw Error(ErrorCode::invalid_input, std::string(k) + " must be positive");
        return v;
    };
    if (j.contains("max_step")) o.max_step = positive("max_step");
    if (j.contains("safety")) o.safety = positive("safety");
    if (j.contains("clearance")) o.clearance = positive("clearance");
    if (j.contains("probe_radius")) o.probe_radius = positive("probe_radius");
    if (j.contains("bc_offset")) o.bc_offset = positive("bc_offset");
    if (j.contains("max_depth")) {
        if (!j.at("max_depth").is_number_integer() || j.at("max_depth").get<long long>() < 0)
            throw Error(ErrorCode::invalid_input, "max_depth must be a non-negative integer");
        o.max_depth = j.at("max_depth").get<int>();
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw Error(ErrorCode::invalid_input, "seed must be a non-negative integer");
        o.seed = j.at("seed").get<unsigned long long>();
    }
    if (j.contains("kernel")) {
        if (!j.at("kernel").is_number_unsigned() || j.at("kernel").get<long long>() < 1)
            throw Error(ErrorCode::invalid_input, "kernel must be a positive integer");
        o.kernel = j.at("kernel").get<std::size_t>();
    }
    if (j.contains("region")) {
        const auto& r = j.at("region");
        o.region = Disk{complex_from_json(require(r, "center")), number_from_json(require(r, "radius"), "radius")};
    }
    if (j.contains("punctures")) o.punctures = complex_list_from_json(j.at("punctures"));
    if (j.contains("avoid")) o.avoid = complex_list_from_json(j.at("avoid"));
    return o;
}

inline Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::invalid_input, "scenario must be a JSON object");
    static const std::set<std::string> known{"family", "base_point", "base_labels", "order",
                                             "loops",  "cuts",       "options",     "sheets"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw Error(ErrorCode::invalid_input, "unknown scenario field '" + k + "'");

    Scenario s;
    s.family = family_from_json(require(j, "family"));
    if (j.contains("base_point")) s.base_point = complex_from_json(j.at("base_point"));
    if (j.contains("base_labels")) {
        s.base_labels = complex_list_from_json(j.at("base_labels"));
        if (s.base_labels->size() != s.family.dim())
            throw Error(ErrorCode::invalid_input, "base_labels must list dim eigenvalues");
    }
    if (j.contains("order")) {
        if (!j.at("order").is_string()) throw Error(ErrorCode::invalid_input, "order must be a string");
        s.order = TotalOrder::parse(j.at("order").get<std::string>());
    }
    if (j.contains("loops")) {
        if (!j.at("loops").is_object()) throw Error(ErrorCode::invalid_input, "loops must be an object keyed by name");
        for (const auto& [name, l] : j.at("loops").items()) {
            ScenarioLoop sl{loop_from_json(l), std::nullopt};
            if (l.contains("labels")) {
                sl.labels = complex_list_from_json(l.at("labels"));
                if (sl.labels->size() != s.family.dim())
                    throw Error(ErrorCode::invalid_input, "loop '" + name + "' labels must list dim eigenvalues");
            }
            s.loops.emplace(name, std::move(sl));
        }
    }
    if (j.contains("cuts")) {
        if (!j.at("cuts").is_object()) throw Error(ErrorCode::invalid_input, "cuts must be an object keyed by name");
        for (const auto& [name, c] : j.at("cuts").items()) s.cuts.emplace(name, cut_from_json(c));
    }
    if (j.contains("options")) s.options = options_from_json(j.at("options"));
    if (j.contains("sheets")) s.sheets = grid_from_json(j.at("sheets"));
    return s;
}

inline Scenario load_scenario(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::invalid_input, "cannot open scenario file '" + file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(parse_strict(buf.str()));
}

} // namespace io
} // namespace epmono
