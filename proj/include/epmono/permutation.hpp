#pragma once

#include <cstddef>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace epmono {

/// Element of S_n. `images()[k]` is where label k is sent (0-based).
///
/// Composition follows path order: `compose(a, b)` means "a, then b", so
/// `compose(a, b)[k] == b[a[k]]`. Loop words evaluate left to right with this rule.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (auto v : images_) {
            if (v >= images_.size() || seen[v]) throw Error(ErrorCode::invalid_input, "images are not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> v(n);
        std::iota(v.begin(), v.end(), std::size_t{0});
        return Permutation(std::move(v));
    }

    /// Builds a permutation from 1-based cycles, e.g. {{1, 3, 2}} for (1 3 2).
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles) {
        std::vector<std::size_t> v(n);
        std::iota(v.begin(), v.end(), std::size_t{0});
        for (const auto& cyc : cycles) {
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                const auto from = cyc[i], to = cyc[(i + 1) % cyc.size()];
                if (from < 1 || from > n || to < 1 || to > n)
                    throw Error(ErrorCode::invalid_input, "cycle entry out of range");
                v[from - 1] = to - 1;
            }
        }
        return Permutation(std::move(v));
    }

    std::size_t size() const noexcept { return images_.size(); }
    const std::vector<std::size_t>& images() const noexcept { return images_; }
    std::size_t operator[](std::size_t k) const noexcept { return images_[k]; }

    bool is_identity() const noexcept {
        for (std::size_t k = 0; k < images_.size(); ++k)
            if (images_[k] != k) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<std::size_t> inv(images_.size());
        for (std::size_t k = 0; k < images_.size(); ++k) inv[images_[k]] = k;
        return Permutation(std::move(inv));
    }

    /// Multiplicative order in S_n.
    std::size_t order() const {
        std::size_t result = 1;
        std::vector<bool> seen(size(), false);
        for (std::size_t k = 0; k < size(); ++k) {
            if (seen[k]) continue;
            std::size_t len = 0;
            for (auto j = k; !seen[j]; j = images_[j]) {
                seen[j] = true;
                ++len;
            }
            result = std::lcm(result, len);
        }
        return result;
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest label.
    std::vector<std::vector<std::size_t>> cycles() const {
        std::vector<std::vector<std::size_t>> out;
        std::vector<bool> seen(size(), false);
        for (std::size_t k = 0; k < size(); ++k) {
            if (seen[k] || images_[k] == k) {
                seen[k] = true;
                continue;
            }
            std::vector<std::size_t> cyc;
            for (auto j = k; !seen[j]; j = images_[j]) {
                seen[j] = true;
                cyc.push_back(j + 1);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    /// Cycle notation with 1-based labels; "()" for the identity.
    std::string cycle_string() const {
        const auto cs = cycles();
        if (cs.empty()) return "()";
        std::ostringstream os;
        for (const auto& c : cs) {
            os << '(';
            for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
            os << ')';
        }
        return os.str();
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> images_;
};

inline Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::size_mismatch, "composing permutations of different degree");
    std::vector<std::size_t> v(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) v[k] = b[a[k]];
    return Permutation(std::move(v));
}

/// sigma^-1 * pi * sigma in path order: the image of `pi` after relabelling by `sigma`.
inline Permutation conjugate(const Permutation& pi, const Permutation& sigma) {
    return compose(compose(sigma.inverse(), pi), sigma);
}

inline Permutation power(const Permutation& p, int exponent) {
    Permutation base = exponent < 0 ? p.inverse() : p;
    Permutation acc = Permutation::identity(p.size());
    for (int i = 0; i < std::abs(exponent); ++i) acc = compose(acc, base);
    return acc;
}

} // namespace epmono
