#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <epmono/epmono.hpp>

namespace fixtures {

using epmono::Complex;
using epmono::Polynomial;
using epmono::PolyMatrixFamily;

inline Polynomial z_times(Complex c) { return Polynomial({0.0, c}); }
inline Polynomial constant(Complex c) { return Polynomial::constant(c); }

/// diag(z, -z).
inline PolyMatrixFamily linear_pair() { return {{z_times(1.0), {}}, {{}, z_times(-1.0)}}; }

/// [[1, z, 0], [z, -1, 0], [0, 0, 2z]]: eigenvalues +-sqrt(1 + z^2) and 2z.
inline PolyMatrixFamily two_sheet() {
    return {{constant(1.0), z_times(1.0), {}}, {z_times(1.0), constant(-1.0), {}}, {{}, {}, z_times(2.0)}};
}

/// Companion of lambda^2 - z.
inline PolyMatrixFamily sqrt_family() { return {{{}, constant(1.0)}, {z_times(1.0), {}}}; }

/// Companion of lambda^3 - z.
inline PolyMatrixFamily cbrt_family() {
    return {{{}, constant(1.0), {}}, {{}, {}, constant(1.0)}, {z_times(1.0), {}, {}}};
}

inline const Complex I{0.0, 1.0};
inline const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

inline epmono::Loop circle_loop(Complex center, double r, double start_angle = 0.0, bool ccw = true) {
    const auto p = epmono::Path::circle(center, r, start_angle, ccw);
    return epmono::Loop(p, p.start());
}

/// Radius 0.3 about +i, based at 0.3 + i.
inline epmono::Loop upper_loop() { return circle_loop(I, 0.3); }

inline std::vector<epmono::BranchCut> axis_cuts() { return {{I, I}, {-I, -I}}; }

/// Keyhole system for the two-sheet family at base 0 with labels (1, -1, 0), clearance 0.3;
/// the trivial crossings +-1/sqrt(3) are detoured around.
inline epmono::FundamentalLoopSystem two_sheet_system() {
    epmono::GeneratorOptions o;
    o.clearance = 0.3;
    o.avoid = {inv_sqrt3, -inv_sqrt3};
    o.base_labels = epmono::LabeledSpectrum{{1.0, -1.0, 0.0}};
    return epmono::build_generators(two_sheet(), 0.0, {I, -I}, o);
}

inline std::string scenario(const std::string& name) { return std::string(EPMONO_SCENARIO_DIR) + "/" + name; }

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    return {n(rng), n(rng)};
}

inline epmono::ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    epmono::ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_complex(rng, scale);
    return m;
}

/// Random family with polynomial entries of degree <= d.
inline PolyMatrixFamily random_family(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    epmono::SquareMatrix<Polynomial> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Complex> c(d + 1);
            for (auto& x : c) x = random_complex(rng);
            m(i, j) = Polynomial(c);
        }
    return PolyMatrixFamily(std::move(m));
}

inline bool sets_match(std::vector<Complex> a, std::vector<Complex> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        std::size_t best = b.size();
        double d = tol;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (std::abs(x - b[j]) <= d) {
                d = std::abs(x - b[j]);
                best = j;
            }
        if (best == b.size()) return false;
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return true;
}

/// Every permutation of {0, ..., n-1}.
inline std::vector<epmono::Permutation> all_permutations(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    std::vector<epmono::Permutation> out;
    do out.emplace_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// Brute-force kernel oracle: enumerates all 2m-letter strings of length <= max_len,
/// keeps the freely reduced ones, and multiplies image arrays by hand.
inline std::vector<std::string> brute_force_kernel(const std::vector<epmono::Permutation>& gens, std::size_t max_len) {
    const std::size_t m = gens.size();
    const std::size_t n = gens.empty() ? 0 : gens[0].size();
    std::vector<std::vector<std::size_t>> table;  // letter 2g = g, 2g+1 = g^-1
    for (const auto& g : gens) {
        table.push_back(g.images());
        std::vector<std::size_t> inv(n);
        for (std::size_t k = 0; k < n; ++k) inv[g.images()[k]] = k;
        table.push_back(inv);
    }
    std::vector<std::string> out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < len; ++i) total *= 2 * m;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<std::size_t> letters;
            std::size_t c = code;
            for (std::size_t i = 0; i < len; ++i) {
                letters.insert(letters.begin(), c % (2 * m));
                c /= 2 * m;
            }
            bool reduced = true;
            for (std::size_t i = 1; i < len; ++i)
                if ((letters[i] ^ 1u) == letters[i - 1]) reduced = false;
            if (!reduced) continue;
            std::vector<std::size_t> pos(n);
            for (std::size_t k = 0; k < n; ++k) pos[k] = k;
            for (auto l : letters)
                for (auto& p : pos) p = table[l][p];
            bool identity = true;
            for (std::size_t k = 0; k < n; ++k) identity = identity && pos[k] == k;
            if (!identity) continue;
            std::string s;
            for (auto l : letters) {
                if (!s.empty()) s += ' ';
                s += "g" + std::to_string(l / 2 + 1);
                if (l % 2) s += "^-1";
            }
            out.push_back(s);
        }
    }
    return out;
}

} // namespace fixtures
