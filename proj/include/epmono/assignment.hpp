#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "error.hpp"
#include "polynomial.hpp"

namespace epmono {

/// Result of a square linear assignment: row i is assigned column `column_of[i]`.
struct Assignment {
    std::vector<std::size_t> column_of;
    double cost = 0.0;
};

/// Minimum-cost perfect matching on an n x n cost matrix (row-major), Hungarian
/// method with potentials, O(n^3).
inline Assignment solve_assignment(const std::vector<double>& cost, std::size_t n) {
    if (cost.size() != n * n) throw Error(ErrorCode::size_mismatch, "cost matrix must be n*n");
    const double inf = std::numeric_limits<double>::infinity();
    // 1-based internal indexing; column 0 is the virtual start.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        row_of[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = row_of[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment result;
    result.column_of.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) result.column_of[row_of[j] - 1] = j - 1;
    for (std::size_t i = 0; i < n; ++i) result.cost += cost[i * n + result.column_of[i]];
    return result;
}

/// Optimal matching of `from[i]` to `to[column_of[i]]` under absolute complex distance.
inline Assignment match_points(const std::vector<Complex>& from, const std::vector<Complex>& to) {
    if (from.size() != to.size()) throw Error(ErrorCode::size_mismatch, "point sets differ in size");
    const std::size_t n = from.size();
    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = std::abs(from[i] - to[j]);
    return solve_assignment(cost, n);
}

/// Largest matched distance after optimal assignment; 0 for empty inputs.
inline double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const auto m = match_points(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[m.column_of[i]]));
    return worst;
}

} // namespace epmono
