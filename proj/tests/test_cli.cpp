#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <epmono/cli.hpp>

#include "support/fixtures.hpp"

using namespace epmono;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "epmono");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir(const std::string& name) {
    const auto d = fs::temp_directory_path() / ("epmono_test_" + name);
    fs::remove_all(d);
    return d;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto p = fs::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p.string();
}

} // namespace

TEST_CASE("eps lists the census") {
    const auto r = run({"eps", "--scenario", fixtures::scenario("two_sheet.json")});
    REQUIRE(r.code == 0);
    const auto j = io::json::parse(r.out);
    CHECK(j.at("degeneracies").size() == 4);
    std::size_t branch = 0;
    for (const auto& d : j.at("degeneracies")) branch += d.at("kind") == "branch_point";
    CHECK(branch == 2);
}

TEST_CASE("track reports the loop permutation") {
    const auto r = run({"track", "--scenario", fixtures::scenario("sqrt.json")});
    REQUIRE(r.code == 0);
    CHECK(io::json::parse(r.out).at("permutation").at("cycles") == "(1 2)");
    // The loop's label hint orders the base spectrum as (+sqrt, -sqrt, 2z).
    for (const char* loop : {"upper_circle", "upper_circle_reversed"}) {
        const auto u = run({"track", "--scenario", fixtures::scenario("two_sheet.json"), "--loop", loop});
        REQUIRE(u.code == 0);
        CHECK(io::json::parse(u.out).at("permutation").at("cycles") == "(1 2)");
    }
    const auto c = run({"track", "--scenario", fixtures::scenario("two_sheet.json"), "--loop", "constant"});
    REQUIRE(c.code == 0);
    CHECK(io::json::parse(c.out).at("permutation").at("cycles") == "()");
}

TEST_CASE("fl builds generators, evaluates words and searches the kernel") {
    const auto r = run({"fl", "--scenario", fixtures::scenario("two_sheet.json"), "--word", "g1 g2^-1", "--kernel", "2"});
    REQUIRE(r.code == 0);
    const auto j = io::json::parse(r.out);
    CHECK(j.at("generators").size() == 2);
    CHECK(j.at("word").at("permutation").at("cycles") == "()");
    const auto& words = j.at("kernel").at("words");
    CHECK(std::find(words.begin(), words.end(), "g1 g2^-1") != words.end());
}

TEST_CASE("compare exit codes") {
    CHECK(run({"compare", "--scenario", fixtures::scenario("two_sheet.json"), "--loop", "upper_circle"}).code == 3);
    CHECK(run({"compare", "--scenario", fixtures::scenario("two_sheet.json"), "--loop", "around_both"}).code == 0);
    const auto s = run({"compare", "--scenario", fixtures::scenario("sqrt.json")});
    CHECK(s.code == 0);
    CHECK(io::json::parse(s.out).at("agree") == true);
}

TEST_CASE("sheets writes csv") {
    const auto r = run({"sheets", "--scenario", fixtures::scenario("linear_pair.json")});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("re_z,im_z,re_lambda_1", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 21 * 21);
}

TEST_CASE("out directory receives json and csv") {
    const auto d = temp_dir("out");
    REQUIRE(run({"track", "--scenario", fixtures::scenario("sqrt.json"), "--out", d.string()}).code == 0);
    CHECK(fs::exists(d / "unit_circle.json"));
    CHECK(fs::exists(d / "unit_circle_track.csv"));
    REQUIRE(run({"eps", "--scenario", fixtures::scenario("sqrt.json"), "--out", d.string()}).code == 0);
    CHECK(fs::exists(d / "eps.json"));
    REQUIRE(run({"sheets", "--scenario", fixtures::scenario("linear_pair.json"), "--out", d.string()}).code == 0);
    CHECK(fs::exists(d / "sheets.csv"));
    fs::remove_all(d);
}

TEST_CASE("bad input exits with 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"eps"}).code == 1);
    CHECK(run({"bogus", "--scenario", "x"}).code == 1);
    CHECK(run({"eps", "--scenario", "/nonexistent.json"}).code == 1);
    CHECK(run({"track", "--scenario", fixtures::scenario("two_sheet.json")}).code == 1);
    CHECK(run({"track", "--scenario", fixtures::scenario("two_sheet.json"), "--loop", "nope"}).code == 1);
    CHECK(run({"fl", "--scenario", fixtures::scenario("two_sheet.json"), "--word", "g1 h2"}).code == 1);
    CHECK(run({"fl", "--scenario", fixtures::scenario("two_sheet.json"), "--word", "g7"}).code == 1);
    CHECK(run({"fl", "--scenario", fixtures::scenario("two_sheet.json"), "--kernel", "0"}).code == 1);
    CHECK(run({"eps", "--scenario", write_temp("epmono_dup.json", R"({"family": {"dim": 1, "entries": []}, "order": "re_then_im", "order": "im_then_re"})")}).code == 1);
    CHECK(run({"sheets", "--scenario", write_temp("epmono_nogrid.json", R"({"family": {"dim": 1, "entries": []}})")}).code == 1);
    const auto e = run({"eps", "--scenario", "/nonexistent.json"});
    CHECK(e.err.find("epmono:") == 0);
}

TEST_CASE("computation errors exit with 2") {
    // A loop through the branch point cannot be tracked.
    const auto file = write_temp("epmono_through.json", R"({
        "family": {"dim": 2, "entries": [[null, [[1,0]]], [[[0,0],[1,0]]]]},
        "loops": {"through": {"base": [-1,0], "segments": [{"kind":"line","to":[1,0]}, {"kind":"line","to":[1,1]}, {"kind":"line","to":[-1,0]}]}}
    })");
    CHECK(run({"track", "--scenario", file}).code == 2);
    // Identically degenerate family has no isolated exceptional points.
    const auto flat = write_temp("epmono_flat.json", R"({"family": {"dim": 2, "entries": [[[[0,0],[1,0]]], [null, [[0,0],[1,0]]]]}})");
    CHECK(run({"eps", "--scenario", flat}).code == 2);
}

TEST_CASE("installed binary exit codes") {
    const std::string bin = EPMONO_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(s);
    };
    CHECK(status("eps --scenario " + fixtures::scenario("sqrt.json")) == 0);
    CHECK(status("compare --scenario " + fixtures::scenario("two_sheet.json") + " --loop upper_circle") == 3);
    CHECK(status("eps --scenario /nonexistent.json") == 1);
}
