#pragma once

// Command-line front end. Exit codes: 0 success (methods agree), 1 bad input or usage,
// 2 computation error, 3 the two methods disagree.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bc_method.hpp"
#include "error.hpp"
#include "io.hpp"
#include "monodromy.hpp"
#include "scenario.hpp"
#include "sheets.hpp"
#include "tracking.hpp"

namespace epmono::cli {

enum ExitCode : int { ok = 0, bad_input = 1, computation_error = 2, mismatch = 3 };

inline int exit_code_for(ErrorCode c) {
    switch (c) {
    case ErrorCode::invalid_input:
    case ErrorCode::size_mismatch:
    case ErrorCode::base_point_mismatch: return bad_input;
    default: return computation_error;
    }
}

struct Args {
    std::string command;
    std::string scenario;
    std::optional<std::string> loop;
    std::optional<std::string> word;
    std::optional<std::size_t> kernel;
    std::optional<std::string> out;
};

namespace detail {

inline std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream f(std::filesystem::path(dir) / name);
    if (!f) throw Error(ErrorCode::invalid_input, "cannot write to output directory '" + dir + "'");
    return f;
}

inline void emit(const io::json& j, const Args& a, const std::string& file, std::ostream& out) {
    out << j.dump(2) << '\n';
    if (a.out) open_out(*a.out, file) << j.dump(2) << '\n';
}

inline std::string loop_name(const Scenario& s, const Args& a) {
    if (a.loop) return *a.loop;
    if (s.loops.size() == 1) return s.loops.begin()->first;
    throw Error(ErrorCode::invalid_input, "--loop is required when the scenario defines " +
                                              std::to_string(s.loops.size()) + " loops");
}

inline int cmd_eps(const Scenario& s, const Args& a, std::ostream& out) {
    io::json pts = io::json::array();
    for (const auto& d : degeneracy_census(s)) pts.push_back(io::to_json(d));
    emit({{"degeneracies", pts}}, a, "eps.json", out);
    return ok;
}

inline int cmd_track(const Scenario& s, const Args& a, std::ostream& out) {
    const std::string name = loop_name(s, a);
    const auto& l = s.loop(name);
    const auto labels = s.labels_for(l);
    const auto r = track(s.family, l.loop.path(), labels, s.options.track());
    emit({{"loop", name},
          {"base_labels", io::to_json(labels.ordered)},
          {"permutation", io::to_json(r.permutation)},
          {"samples", r.samples.size()},
          {"refinements", r.refinements},
          {"min_gap", r.min_gap}},
         a, name + ".json", out);
    if (a.out) {
        auto f = open_out(*a.out, name + "_track.csv");
        io::write_track_csv(f, r, s.family.dim());
    }
    return ok;
}

inline int cmd_fl(const Scenario& s, const Args& a, std::ostream& out) {
    const auto sys = scenario_loop_system(s);
    io::json j = io::to_json(sys);
    if (a.word) {
        const Word w = Word::parse(*a.word);
        j["word"] = {{"word", w.to_string()}, {"permutation", io::to_json(word_permutation(w, sys))}};
    }
    const auto kernel = a.kernel ? a.kernel : s.options.kernel;
    if (kernel) {
        io::json words = io::json::array();
        for (const auto& w : accidental_equivalence_search(sys, *kernel)) words.push_back(w.to_string());
        j["kernel"] = {{"max_len", *kernel}, {"words", words}};
    }
    emit(j, a, "fl.json", out);
    return ok;
}

inline int cmd_compare(const Scenario& s, const Args& a, std::ostream& out) {
    const std::string name = loop_name(s, a);
    const auto r = compare_methods(s.family, s.loop(name).loop, s.cut_list(), s.order, s.options.bc());
    io::json j = io::to_json(r);
    j["loop"] = name;
    j["order"] = std::string(s.order.name());
    emit(j, a, "compare_" + name + ".json", out);
    return r.agree ? ok : mismatch;
}

inline int cmd_sheets(const Scenario& s, const Args& a, std::ostream& out) {
    if (!s.sheets) throw Error(ErrorCode::invalid_input, "scenario has no 'sheets' grid");
    const auto g = compute_sheets(s.family, *s.sheets, s.order, s.options.track());
    if (a.out) {
        auto f = open_out(*a.out, "sheets.csv");
        io::write_sheets_csv(f, g);
    } else {
        io::write_sheets_csv(out, g);
    }
    return ok;
}

} // namespace detail

inline int execute(const Args& a, std::ostream& out, std::ostream& err) {
    try {
        const Scenario s = io::load_scenario(a.scenario);
        if (a.command == "eps") return detail::cmd_eps(s, a, out);
        if (a.command == "track") return detail::cmd_track(s, a, out);
        if (a.command == "fl") return detail::cmd_fl(s, a, out);
        if (a.command == "compare") return detail::cmd_compare(s, a, out);
        if (a.command == "sheets") return detail::cmd_sheets(s, a, out);
        err << "unknown command '" << a.command << "'\n";
        return bad_input;
    } catch (const Error& e) {
        err << "epmono: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "epmono: " << e.what() << '\n';
        return bad_input;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Eigenvalue monodromy around exceptional points"};
    app.require_subcommand(1);
    Args a;
    for (const char* name : {"eps", "track", "fl", "compare", "sheets"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--scenario", a.scenario, "scenario JSON file")->required();
        sub->add_option("--out", a.out, "directory for JSON and CSV output");
        if (std::string(name) == "track" || std::string(name) == "compare")
            sub->add_option("--loop", a.loop, "loop name in the scenario");
        if (std::string(name) == "fl") {
            sub->add_option("--word", a.word, "word in the generators, e.g. \"g1 g2^-1\"");
            sub->add_option("--kernel", a.kernel, "search identity words up to this length")
                ->check(CLI::PositiveNumber);
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "epmono: " << e.what() << '\n';
        return bad_input;
    }
    a.command = app.get_subcommands().front()->get_name();
    return execute(a, out, err);
}

} // namespace epmono::cli
