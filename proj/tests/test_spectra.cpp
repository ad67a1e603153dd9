#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "support/fixtures.hpp"

using namespace epmono;
using fixtures::I;
using fixtures::sets_match;

namespace {

std::vector<Complex> eigen_oracle(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) e(Eigen::Index(i), Eigen::Index(j)) = m(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(e, false);
    const auto v = solver.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

bool has_code(const Error& e, ErrorCode c) { return e.code() == c; }

} // namespace

TEST_CASE("poly_roots examples") {
    CHECK(sets_match(poly_roots({-4.0, 0.0, 1.0}), {2.0, -2.0}, 1e-12));

    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    CHECK(sets_match(poly_roots({-1.0, 0.0, 0.0, 1.0}), {1.0, w, w * w}, 1e-12));

    const auto cp = char_poly(fixtures::two_sheet()).at(0.5);
    CHECK(sets_match(poly_roots(cp), {std::sqrt(1.25), -std::sqrt(1.25), 1.0}, 1e-12));
}

TEST_CASE("poly_roots handles zero roots, linear input and a non-monic leading term") {
    CHECK(sets_match(poly_roots({0.0, 0.0, 3.0}), {0.0, 0.0}, 0.0));
    CHECK(sets_match(poly_roots({2.0, 4.0}), {-0.5}, 1e-15));
    CHECK(sets_match(poly_roots({Complex(0, 6), Complex(0, -5), Complex(0, 1)}), {2.0, 3.0}, 1e-12));
    CHECK_THROWS_AS(poly_roots({1.0}), Error);
    CHECK_THROWS_AS(poly_roots({0.0, 0.0}), Error);
}

TEST_CASE("poly_roots recovers random separated roots in the unit disk") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    while (checked < 300) {
        const std::size_t deg = 1 + rng() % 6;
        std::vector<Complex> roots;
        while (roots.size() < deg) {
            const Complex r(u(rng), u(rng));
            if (std::abs(r) > 1.0) continue;
            bool separated = true;
            for (const auto& q : roots) separated = separated && std::abs(q - r) >= 0.1;
            if (separated) roots.push_back(r);
        }
        const auto found = poly_roots(expand_roots(roots), {200, static_cast<std::uint64_t>(checked)});
        CHECK(sets_match(found, roots, 1e-8));
        ++checked;
    }
}

TEST_CASE("poly_roots residual bound holds and the result depends only on the seed") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Complex> c(2 + rng() % 8);
        for (auto& x : c) x = fixtures::random_complex(rng);
        const auto roots = poly_roots(c, {200, 5});
        const Polynomial p(c);
        for (const auto& r : roots)
            CHECK(std::abs(p(r)) <= 1e-10 * p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(r)), p.degree()));
        CHECK(roots == poly_roots(c, {200, 5}));
    }
}

TEST_CASE("poly_roots reports NoConvergence when the iteration budget is exhausted") {
    const auto c = expand_roots({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8});
    CHECK_THROWS_MATCHES(poly_roots(c, {1, 0}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return has_code(e, ErrorCode::no_convergence);
                         }));
}

TEST_CASE("eigenvalue examples") {
    CHECK(sets_match(eigenvalues(ComplexMatrix::identity(2, 1.0)).values, {1.0, 1.0}, 1e-7));
    CHECK(sets_match(eigenvalues(fixtures::linear_pair(), 3.0 * I).values, {3.0 * I, -3.0 * I}, 1e-12));
    CHECK(sets_match(eigenvalues(fixtures::two_sheet(), 0.5).values, {std::sqrt(1.25), -std::sqrt(1.25), 1.0}, 1e-12));
    CHECK(sets_match(eigenvalues(ComplexMatrix(3)).values, {0.0, 0.0, 0.0}, 0.0));
    CHECK_THROWS_AS(eigenvalues(ComplexMatrix(13)), Error);
}

TEST_CASE("eigenvalues agree with an independent eigensolver") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        const auto m = fixtures::random_matrix(rng, n);
        CHECK(sets_match(eigenvalues(m).values, eigen_oracle(m), 1e-8));
    }
}

TEST_CASE("trace and determinant invariants over random matrices") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        const auto m = fixtures::random_matrix(rng, n);
        const auto s = eigenvalues(m);
        Complex sum{}, prod{1.0};
        for (const auto& v : s.values) {
            sum += v;
            prod *= v;
        }
        const Complex tr = m.trace(), det = determinant(m);
        // Relative to the natural magnitude of each invariant.
        const double fro = frobenius_norm(m);
        CHECK(std::abs(sum - tr) <= 1e-9 * std::max(std::abs(tr), fro));
        CHECK(std::abs(prod - det) <= 1e-8 * std::max(std::abs(det), std::pow(fro, double(n))));
    }
}

TEST_CASE("eigenvalues are invariant under permutation and diagonal similarity") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        const auto m = fixtures::random_matrix(rng, n);
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Complex> d(n);
        std::uniform_real_distribution<double> mag(0.5, 2.0), ang(0.0, 2.0 * std::numbers::pi);
        for (auto& x : d) x = std::polar(mag(rng), ang(rng));
        // (P D) M (P D)^-1
        ComplexMatrix s(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s(i, j) = d[perm[i]] * m(perm[i], perm[j]) / d[perm[j]];
        CHECK(sets_match(eigenvalues(s).values, eigenvalues(m).values, 1e-8));
    }
}

TEST_CASE("deduplicate merges clusters into their means") {
    const auto out = deduplicate({1.0, 1.0 + 1e-9, 2.0, Complex(2.0, 2e-9), 3.0}, 1e-7);
    CHECK(sets_match(out, {1.0 + 0.5e-9, Complex(2.0, 1e-9), 3.0}, 1e-15));
}

TEST_CASE("locate_degeneracies examples") {
    const auto two_sheet = locate_degeneracies(fixtures::two_sheet(), Disk{0.0, 2.0});
    CHECK(sets_match(two_sheet, {I, -I, fixtures::inv_sqrt3, -fixtures::inv_sqrt3}, 1e-6));

    CHECK(sets_match(locate_degeneracies(fixtures::sqrt_family(), Disk{0.0, 1.0}), {0.0}, 1e-12));
    CHECK(sets_match(locate_degeneracies(fixtures::linear_pair(), Disk{0.0, 1.0}), {0.0}, 1e-12));
    CHECK(locate_degeneracies(fixtures::two_sheet(), Disk{3.0, 0.5}).empty());
    CHECK(sets_match(locate_degeneracies(fixtures::two_sheet(), Disk{I, 0.5}), {I}, 1e-6));
    CHECK_THROWS_AS(locate_degeneracies(fixtures::two_sheet(), Disk{0.0, std::numeric_limits<double>::infinity()}), Error);
}

TEST_CASE("a family with a permanently repeated eigenvalue is rejected") {
    const PolyMatrixFamily scalar{{fixtures::z_times(1.0), {}}, {{}, fixtures::z_times(1.0)}};
    CHECK_THROWS_MATCHES(all_degeneracies(scalar), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return has_code(e, ErrorCode::discriminant_identically_zero);
                         }));
}

TEST_CASE("classify_degeneracy examples") {
    const auto two_sheet = fixtures::two_sheet();
    const auto bp = classify_degeneracy(two_sheet, I, 0.2);
    CHECK(bp.kind == DegeneracyPoint::Kind::branch_point);
    REQUIRE(bp.local_permutation.cycles().size() == 1);
    CHECK(bp.local_permutation.cycles()[0].size() == 2);
    CHECK(bp.probe_radius == 0.2);

    // The swapped labels are exactly the two sqrt sheets; 2z stays put.
    const auto labels = solver_labels(two_sheet, I + 0.2, {});
    for (std::size_t k = 0; k < 3; ++k)
        if (std::abs(labels.ordered[k] - 2.0 * (I + 0.2)) < 1e-9) CHECK(bp.local_permutation[k] == k);

    const auto tc = classify_degeneracy(two_sheet, fixtures::inv_sqrt3, 0.1);
    CHECK(tc.kind == DegeneracyPoint::Kind::trivial_crossing);
    CHECK(tc.local_permutation.is_identity());

    const auto origin = classify_degeneracy(fixtures::linear_pair(), 0.0, 0.1);
    CHECK(origin.kind == DegeneracyPoint::Kind::trivial_crossing);
    CHECK(origin.local_permutation.is_identity());

    const auto cube = classify_degeneracy(fixtures::cbrt_family(), 0.0);
    CHECK(cube.kind == DegeneracyPoint::Kind::branch_point);
    CHECK(cube.local_permutation.order() == 3);
    CHECK(cube.probe_radius == 0.25);
}

TEST_CASE("classification is stable under probe radius halving") {
    const auto two_sheet = fixtures::two_sheet();
    for (Complex z0 : {I, -I, Complex(fixtures::inv_sqrt3), Complex(-fixtures::inv_sqrt3)}) {
        const auto a = classify_degeneracy(two_sheet, z0, 0.2);
        const auto b = classify_degeneracy(two_sheet, z0, 0.1);
        CHECK(a.kind == b.kind);
        CHECK(a.local_permutation.is_identity() == b.local_permutation.is_identity());
        CHECK(a.local_permutation.cycles().size() == b.local_permutation.cycles().size());
    }
}

TEST_CASE("kind and local permutation are consistent on every census point") {
    for (const auto& f : {fixtures::linear_pair(), fixtures::two_sheet(), fixtures::sqrt_family(), fixtures::cbrt_family()})
        for (const auto& z0 : all_degeneracies(f)) {
            const auto d = classify_degeneracy(f, z0);
            CHECK((d.kind == DegeneracyPoint::Kind::trivial_crossing) == d.local_permutation.is_identity());
        }
}

TEST_CASE("a probe circle reaching another degeneracy is rejected") {
    CHECK_THROWS_MATCHES(classify_degeneracy(fixtures::two_sheet(), I, 0.6), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return has_code(e, ErrorCode::probe_circle_contaminated);
                         }));
}
