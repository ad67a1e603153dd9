#include <catch_amalgamated.hpp>

#include <algorithm>
#include <limits>
#include <random>

#include "support/fixtures.hpp"

using namespace epmono;

namespace {

double brute_force_min(const std::vector<double>& cost, std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += cost[i * n + p[i]];
        best = std::min(best, c);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

} // namespace

TEST_CASE("Hungarian assignment matches exhaustive search") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        std::vector<double> cost(n * n);
        for (auto& c : cost) c = trial % 3 == 0 ? std::floor(u(rng)) : u(rng);  // integer costs force ties
        const auto a = solve_assignment(cost, n);
        std::vector<bool> used(n, false);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(a.column_of[i] < n);
            CHECK_FALSE(used[a.column_of[i]]);
            used[a.column_of[i]] = true;
            total += cost[i * n + a.column_of[i]];
        }
        CHECK(total == Catch::Approx(brute_force_min(cost, n)).margin(1e-9));
        CHECK(a.cost == Catch::Approx(total).margin(1e-9));
    }
}

TEST_CASE("assignment rejects a malformed cost matrix and accepts n = 0") {
    CHECK_THROWS_AS(solve_assignment({1.0, 2.0, 3.0}, 2), Error);
    CHECK(solve_assignment({}, 0).column_of.empty());
}

TEST_CASE("match_points pairs nearest points globally, not greedily") {
    // Greedy nearest-first would pair 0 -> 0.9 and leave 1 -> -1.
    const std::vector<Complex> from{0.0, 1.0}, to{-1.0, 0.9};
    const auto m = match_points(from, to);
    CHECK(m.column_of == std::vector<std::size_t>{0, 1});
}

TEST_CASE("multiset distance is zero for reorderings and symmetric") {
    std::mt19937_64 rng(4);
    std::vector<Complex> a(5);
    for (auto& x : a) x = fixtures::random_complex(rng);
    auto b = a;
    std::shuffle(b.begin(), b.end(), rng);
    CHECK(multiset_distance(a, b) == 0.0);
    b[2] += Complex(0.0, 1e-3);
    CHECK(multiset_distance(a, b) == Catch::Approx(1e-3).epsilon(1e-9));
    CHECK(multiset_distance(a, b) == multiset_distance(b, a));
}
