#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "gcq/contour.hpp"
#include "gcq/divdiff.hpp"
#include "gcq/mesh.hpp"
#include "gcq/symbol.hpp"

using gcq::build_contour;
using gcq::builtin_symbol;
using gcq::Complex;
using gcq::ComplexFn;
using gcq::divided_difference;
using gcq::gcq_weight;
using gcq::gcq_weight_divdiff;
using gcq::graded_mesh;
using gcq::inversion_check;
using gcq::leibniz_check;
using gcq::mesh_stats;
using gcq::modified_divided_difference;
using gcq::paired_midpoint_rule;
using gcq::parse_symbol;
using gcq::PointSet;
using gcq::StepperKind;
using gcq::TimeMesh;
using gcq::TransferSymbol;
using gcq::uniform_mesh;
using gcq::weight_midpoint_gap;

namespace {

/// Independent oracle: Lagrange form of the classical divided difference,
/// [x_0..x_n]f = sum_i f(x_i) / prod_{j != i} (x_i - x_j).
Complex lagrange_divided_difference(const PointSet& pts, const ComplexFn& f) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Complex denom{1.0, 0.0};
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j != i) denom *= pts[i] - pts[j];
        }
        acc += f(pts[i]) / denom;
    }
    return acc;
}

/// Independent oracle for analytic f: the divided difference as a contour
/// integral (1/2 pi i) oint f(z) / prod (z - x_k) dz over a circle that
/// encloses all points, discretized by the trapezoidal rule.
Complex circle_divided_difference(const PointSet& pts, const ComplexFn& f,
                                  int samples) {
    Complex center{0.0, 0.0};
    for (std::size_t i = 0; i < pts.size(); ++i) center += pts[i];
    center /= static_cast<double>(pts.size());
    double spread = 1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        spread = std::max(spread, std::abs(pts[i] - center));
    }
    const double radius = 1.5 * spread;
    Complex acc{0.0, 0.0};
    for (int l = 0; l < samples; ++l) {
        const double theta = 2.0 * std::numbers::pi * (l + 0.5) / samples;
        const Complex offset = radius * std::polar(1.0, theta);
        const Complex z = center + offset;
        Complex denom{1.0, 0.0};
        for (std::size_t i = 0; i < pts.size(); ++i) denom *= z - pts[i];
        acc += f(z) * offset / denom;
    }
    return acc / static_cast<double>(samples);
}

PointSet random_points(std::mt19937& rng, int n) {
    // ordered positions in [0.5, 6] with a guaranteed separation of 0.5
    // (keeps the divided differences well conditioned), then shuffled
    // because the modified difference is order dependent
    std::uniform_real_distribution<double> gap(0.0, 1.0);
    std::vector<double> gaps(static_cast<std::size_t>(n) + 1);
    double total = 0.0;
    for (auto& g : gaps) {
        g = gap(rng);
        total += g;
    }
    const double free_span = 5.5 - 0.5 * n;
    std::vector<Complex> pts;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        acc += gaps[static_cast<std::size_t>(i)];
        pts.emplace_back(0.5 + 0.5 * i + acc / total * free_span, 0.0);
    }
    std::shuffle(pts.begin(), pts.end(), rng);
    return PointSet(std::move(pts));
}

ComplexFn random_polynomial(std::mt19937& rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const double c0 = coeff(rng), c1 = coeff(rng), c2 = coeff(rng),
                 c3 = coeff(rng);
    return [c0, c1, c2, c3](Complex x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
}

}  // namespace

TEST_CASE("two-point divided difference is the difference quotient") {
    const PointSet pts({Complex{1.0, 0.0}, Complex{3.0, 0.0}});
    const auto f = [](Complex x) { return x * x; };
    // [1,3] x^2 = (9 - 1) / (3 - 1) = 4
    CHECK(std::abs(divided_difference(pts, f) - Complex(4.0, 0.0)) <= 1e-14);
}

TEST_CASE("divided differences annihilate lower-degree polynomials") {
    const PointSet pts({Complex{0.5, 0.0}, Complex{1.0, 0.0}, Complex{2.0, 0.0},
                        Complex{4.0, 0.0}});
    const auto quadratic = [](Complex x) { return 3.0 * x * x - x + 2.0; };
    CHECK(std::abs(divided_difference(pts, quadratic)) <= 1e-13);
    // the n-th divided difference of x^n is the leading coefficient
    const auto cubic = [](Complex x) { return 5.0 * x * x * x; };
    CHECK(std::abs(divided_difference(pts, cubic) - Complex(5.0, 0.0)) <= 1e-12);
}

TEST_CASE("recursive and lagrange forms agree") {
    std::mt19937 rng(7321);
    for (int trial = 0; trial < 50; ++trial) {
        const PointSet pts = random_points(rng, 1 + trial % 7);
        const ComplexFn f = random_polynomial(rng);
        const Complex a = divided_difference(pts, f);
        const Complex b = lagrange_divided_difference(pts, f);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("contour-integral oracle confirms the recursion for exp") {
    std::mt19937 rng(991);
    const ComplexFn f = [](Complex z) { return std::exp(z / 4.0); };
    for (int trial = 0; trial < 10; ++trial) {
        const PointSet pts = random_points(rng, 2 + trial % 5);
        const Complex direct = divided_difference(pts, f);
        const Complex coarse = circle_divided_difference(pts, f, 512);
        const Complex fine = circle_divided_difference(pts, f, 1024);
        // the discretized integral has converged and matches the recursion
        CHECK(std::abs(coarse - fine) <= 1e-11 * std::max(1.0, std::abs(fine)));
        CHECK(std::abs(direct - fine) <= 1e-11 * std::max(1.0, std::abs(fine)));
    }
}

TEST_CASE("modified difference of the constant one is a Kronecker delta") {
    std::mt19937 rng(40);
    const ComplexFn one = [](Complex) { return Complex{1.0, 0.0}; };
    for (int n = 0; n <= 8; ++n) {
        const PointSet pts = random_points(rng, n);
        for (int l = 0; l <= n; ++l) {
            const Complex v = modified_divided_difference(
                pts.slice(static_cast<std::size_t>(l), static_cast<std::size_t>(n)),
                one);
            const double expected = l == n ? 1.0 : 0.0;
            CHECK(std::abs(v - expected) <= 1e-10);
        }
    }
}

TEST_CASE("modified difference reduces to its defining product form") {
    const PointSet pts({Complex{1.0, 0.0}, Complex{2.0, 0.0}, Complex{5.0, 0.0}});
    const ComplexFn f = [](Complex x) { return 1.0 / (x + 1.0); };
    // <x0,x1,x2>f = (x0+x1) [x0,x1,x2]( f(x) * (x2 + x) )
    const ComplexFn augmented = [&](Complex x) { return (5.0 + x) / (x + 1.0); };
    const Complex expected = 3.0 * divided_difference(pts, augmented);
    CHECK(std::abs(modified_divided_difference(pts, f) - expected) <= 1e-13);
    // single point: plain evaluation
    CHECK(std::abs(modified_divided_difference(pts.slice(2, 2), f) -
                   Complex(1.0 / 6.0, 0.0)) <= 1e-15);
}

TEST_CASE("point sets reject coincident points") {
    CHECK_THROWS_AS(PointSet({Complex{1.0, 0.0}, Complex{1.0, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PointSet({}), std::invalid_argument);
}

TEST_CASE("multiplicative rule holds on random data") {
    std::mt19937 rng(20240521);
    std::uniform_int_distribution<int> size(0, 8);
    int trials = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const PointSet pts = random_points(rng, size(rng));
        const ComplexFn f = trial % 3 == 0
                                ? ComplexFn([](Complex x) { return std::exp(x / 10.0); })
                                : random_polynomial(rng);
        const ComplexFn g = trial % 4 == 0
                                ? ComplexFn([](Complex x) { return 1.0 / (x + 10.0); })
                                : random_polynomial(rng);
        CHECK(leibniz_check(pts, f, g) <= 1e-9);
        ++trials;
    }
    CHECK(trials >= 100);
}

TEST_CASE("forward and inverse triangular sums are mutually inverse") {
    std::mt19937 rng(20240522);
    std::uniform_int_distribution<int> size(0, 8);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const TransferSymbol symbol = parse_symbol("1/(s+1)", -1.0, 1.0);
    int trials = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const PointSet pts = random_points(rng, size(rng));
        std::vector<Complex> data(pts.size());
        for (auto& d : data) d = Complex(dist(rng), 0.0);
        CHECK(inversion_check(pts, symbol, data) <= 1e-9);
        ++trials;
    }
    CHECK(trials >= 100);
}

TEST_CASE("contour and divided-difference weight routes agree") {
    const TimeMesh mesh = graded_mesh(8, 2.0, 1.0);
    const auto contour =
        build_contour(mesh_stats(mesh), 8, StepperKind::Trapezoidal, 512);
    const TransferSymbol symbol = builtin_symbol("example1");
    for (int n = 1; n <= 8; ++n) {
        for (int j = 1; j <= n; ++j) {
            const auto dd = gcq_weight_divdiff(symbol, mesh, n, j);
            REQUIRE(dd.has_value());
            const Complex qa = gcq_weight(symbol, mesh, n, j, contour);
            CHECK(std::abs(qa - *dd) <= 1e-10 * std::max(1.0, std::abs(*dd)));
        }
    }
}

TEST_CASE("divided-difference route declines coincident steps") {
    const TimeMesh mesh = uniform_mesh(4, 1.0);
    CHECK_FALSE(gcq_weight_divdiff(builtin_symbol("example1"), mesh, 3, 1)
                    .has_value());
    CHECK(gcq_weight_divdiff(builtin_symbol("example1"), mesh, 3, 3).has_value());
}

TEST_CASE("paired-midpoint rule integrates a vanishing quadratic") {
    const TimeMesh mesh = uniform_mesh(64, 1.0);
    const auto f = [](double t) { return t * (1.0 - t); };
    // the rule is second order; at N = 64 it resolves 1/6 to ~1e-4
    CHECK(std::abs(paired_midpoint_rule(f, mesh) - 1.0 / 6.0) <= 5e-4);
    CHECK_THROWS_AS(paired_midpoint_rule([](double) { return 1.0; }, mesh),
                    std::invalid_argument);
}

TEST_CASE("paired-midpoint rule converges at second order") {
    const auto f = [](double t) { return std::sin(std::numbers::pi * t); };
    const double exact = 2.0 / std::numbers::pi;
    const double e1 =
        std::abs(paired_midpoint_rule(f, uniform_mesh(32, 1.0)) - exact);
    const double e2 =
        std::abs(paired_midpoint_rule(f, uniform_mesh(64, 1.0)) - exact);
    const double slope = std::log2(e1 / e2);
    CHECK(slope >= 1.8);
    CHECK(slope <= 2.2);
}

TEST_CASE("weights approach the midpoint rule applied to the kernel") {
    // (1+s)^-5 is the transform of kappa(t) = t^4 e^{-t} / 24
    const TransferSymbol symbol = builtin_symbol("shifted_power:-5");
    const auto kappa = [](double t) {
        return std::pow(t, 4.0) * std::exp(-t) / 24.0;
    };
    CHECK(std::abs(kappa(1.0) - std::exp(-1.0) / 24.0) <= 1e-15);
    const TimeMesh mesh = graded_mesh(16, 2.0, 1.0);
    const auto contour =
        build_contour(mesh_stats(mesh), 16, StepperKind::Trapezoidal, 1024);
    // mid-range weight: the gap is a discretization error, small but nonzero
    const double gap = weight_midpoint_gap(symbol, kappa, mesh, 16, 8, contour);
    CHECK(gap <= 1e-4);
    CHECK_THROWS_AS(weight_midpoint_gap(symbol, kappa, mesh, 8, 8, contour),
                    std::invalid_argument);
}
