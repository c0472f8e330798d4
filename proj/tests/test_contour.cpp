#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "gcq/contour.hpp"
#include "gcq/mesh.hpp"

using gcq::build_contour;
using gcq::cauchy_validate;
using gcq::Complex;
using gcq::ContourRule;
using gcq::default_node_count;
using gcq::gamma_point_and_derivative;
using gcq::mesh_stats;
using gcq::StepperKind;
using gcq::uniform_mesh;

TEST_CASE("contour parameters for a uniform half-step mesh") {
    const auto stats = mesh_stats(uniform_mesh(2, 1.0));  // Delta = 0.5
    const ContourRule rule = build_contour(stats, 2, StepperKind::BDF1, 64);

    // M = R max(delta_max^-2, delta_min^-1) with R = 1 for the backward
    // Euler stepper, so M = 4 and q = M / delta_min = 8.
    CHECK(rule.params.R == 1.0);
    CHECK(rule.params.M == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(rule.params.q == doctest::Approx(8.0).epsilon(1e-15));
    const double expected_k =
        (8.0 - std::sqrt(15.0)) / (8.0 + std::sqrt(15.0));
    CHECK(rule.params.k == doctest::Approx(expected_k).epsilon(1e-14));
    CHECK(rule.params.m == doctest::Approx(expected_k * expected_k).epsilon(1e-14));
}

TEST_CASE("stepper safety constants") {
    const auto stats = mesh_stats(uniform_mesh(2, 1.0));
    CHECK(build_contour(stats, 2, StepperKind::BDF1, 32).params.R == 1.0);
    CHECK(build_contour(stats, 2, StepperKind::BDF2, 32).params.R == 1.5);
    CHECK(build_contour(stats, 2, StepperKind::Trapezoidal, 32).params.R == 2.0);
}

TEST_CASE("default node count") {
    CHECK(default_node_count(1) == 16);
    CHECK(default_node_count(64) == 2304);  // 64 * log2(64)^2
    CHECK(default_node_count(2) == 2);      // ceil(2 * 1)
}

TEST_CASE("nodes lie on the circle |s - M| = M with positive real part") {
    const auto stats = mesh_stats(gcq::graded_mesh(16, 2.0, 1.0));
    const ContourRule rule = build_contour(stats, 16, StepperKind::Trapezoidal);
    const double M = rule.params.M;
    for (const Complex s : rule.nodes) {
        CHECK(std::abs(std::abs(s - M) - M) <= 1e-12 * M);
        CHECK(s.real() > 0.0);
    }
}

TEST_CASE("parametrization endpoints are the origin and the far point") {
    const auto stats = mesh_stats(uniform_mesh(4, 1.0));
    const ContourRule rule = build_contour(stats, 4, StepperKind::Trapezoidal, 64);
    const double M = rule.params.M;
    const auto [near, dn] = gamma_point_and_derivative(-rule.params.K_m, rule.params);
    const auto [far, df] = gamma_point_and_derivative(rule.params.K_m, rule.params);
    CHECK(std::abs(near) <= 1e-10 * M);
    CHECK(std::abs(far - 2.0 * M) <= 1e-10 * M);
}

TEST_CASE("parametrization derivative matches central differences") {
    const auto stats = mesh_stats(gcq::graded_mesh(8, 2.0, 1.0));
    const ContourRule rule = build_contour(stats, 8, StepperKind::BDF2, 128);
    for (int i = 1; i <= 20; ++i) {
        const double sigma = -rule.params.K_m + i * 0.18 * rule.params.K_m;
        const double h = 1e-6;
        const auto [pp, d1] = gamma_point_and_derivative(sigma + h, rule.params);
        const auto [pm, d2] = gamma_point_and_derivative(sigma - h, rule.params);
        const auto [p0, d0] = gamma_point_and_derivative(sigma, rule.params);
        CHECK(std::abs((pp - pm) / (2.0 * h) - d0) <= 1e-6 * std::abs(d0));
    }
}

TEST_CASE("discrete cauchy integral reproduces +1 inside the circle") {
    const auto stats = mesh_stats(uniform_mesh(8, 1.0));
    const ContourRule rule = build_contour(stats, 8, StepperKind::Trapezoidal, 256);
    const double M = rule.params.M;
    CHECK(std::abs(cauchy_validate(rule, Complex(M, 0.0)) - 1.0) <= 1e-10);
    CHECK(std::abs(cauchy_validate(rule, Complex(0.5 * M, 0.25 * M)) - 1.0) <=
          1e-8);
}

TEST_CASE("cauchy integral stays accurate near the boundary at full depth") {
    const auto stats = mesh_stats(gcq::graded_mesh(64, 2.0, 1.0));
    const ContourRule rule = build_contour(stats, 64, StepperKind::Trapezoidal);
    CHECK(rule.params.node_count == 2304);
    const double M = rule.params.M;
    CHECK(std::abs(cauchy_validate(rule, Complex(1.9 * M, 0.0)) - 1.0) <= 1e-7);
}

TEST_CASE("cauchy check rejects poles on or outside the circle") {
    const auto stats = mesh_stats(uniform_mesh(4, 1.0));
    const ContourRule rule = build_contour(stats, 4, StepperKind::Trapezoidal, 64);
    const double M = rule.params.M;
    CHECK_THROWS_AS(cauchy_validate(rule, Complex(2.5 * M, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(cauchy_validate(rule, Complex(0.0, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("nodes and weights come in exact conjugate pairs") {
    const auto stats = mesh_stats(gcq::graded_mesh(8, 2.0, 1.0));
    const ContourRule rule = build_contour(stats, 8, StepperKind::Trapezoidal, 101);
    const std::size_t nq = rule.nodes.size();
    for (std::size_t l = 0; l < nq / 2; ++l) {
        CHECK(rule.nodes[l] == std::conj(rule.nodes[nq - 1 - l]));
        CHECK(rule.weights[l] == std::conj(rule.weights[nq - 1 - l]));
    }
    if (nq % 2 == 1) CHECK(rule.nodes[nq / 2].imag() == 0.0);
}

TEST_CASE("degenerate geometry is rejected") {
    // unit uniform step with backward Euler gives q = 1: no room between
    // the stepper pole and the circle
    const auto stats = mesh_stats(uniform_mesh(1, 1.0));
    CHECK_THROWS_AS(build_contour(stats, 1, StepperKind::BDF1),
                    std::invalid_argument);
}
