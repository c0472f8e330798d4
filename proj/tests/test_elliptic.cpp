#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gcq/elliptic.hpp"

using gcq::complete_elliptic_k;
using gcq::EllipticParameter;
using gcq::jacobi_sn_cn_dn;

namespace {

/// Independent oracle for K(m): composite Simpson's rule applied to
/// K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta).
double elliptic_k_by_quadrature(double m) {
    const int panels = 4096;
    const double h = std::numbers::pi / 2.0 / panels;
    auto f = [m](double theta) {
        const double s = std::sin(theta);
        return 1.0 / std::sqrt(1.0 - m * s * s);
    };
    double acc = f(0.0) + f(std::numbers::pi / 2.0);
    for (int i = 1; i < panels; ++i) {
        acc += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
    }
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("complete elliptic integral at m = 0 is pi/2") {
    CHECK(std::abs(complete_elliptic_k(EllipticParameter(0.0)) -
                   std::numbers::pi / 2.0) <= 1e-14);
}

TEST_CASE("complete elliptic integral matches direct quadrature") {
    for (const double m : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const double oracle = elliptic_k_by_quadrature(m);
        CHECK(std::abs(complete_elliptic_k(EllipticParameter(m)) - oracle) <=
              1e-12 * oracle);
    }
}

TEST_CASE("parameter domain is [0, 1)") {
    CHECK_THROWS_AS(EllipticParameter(-0.1), std::domain_error);
    CHECK_THROWS_AS(EllipticParameter(1.0), std::domain_error);
    CHECK_THROWS_AS(EllipticParameter(1.5), std::domain_error);
    CHECK_NOTHROW(EllipticParameter(0.0));
    CHECK_NOTHROW(EllipticParameter(0.999999));
}

TEST_CASE("jacobi function identities hold on a dense grid") {
    int points = 0;
    for (int im = 0; im < 25; ++im) {
        const double m = 0.999 * (im + 0.5) / 25.0;
        const double K = complete_elliptic_k(EllipticParameter(m));
        for (int iu = 0; iu < 48; ++iu) {
            const double u = -2.0 * K + 4.0 * K * iu / 47.0;
            const auto [sn, cn, dn] = jacobi_sn_cn_dn(u, EllipticParameter(m));
            CHECK(std::abs(sn * sn + cn * cn - 1.0) <= 1e-12);
            CHECK(std::abs(dn * dn + m * sn * sn - 1.0) <= 1e-12);
            ++points;
        }
    }
    CHECK(points >= 1000);
}

TEST_CASE("jacobi functions at the quarter period") {
    for (const double m : {0.1, 0.5, 0.9}) {
        const double K = complete_elliptic_k(EllipticParameter(m));
        const auto [sn, cn, dn] = jacobi_sn_cn_dn(K, EllipticParameter(m));
        CHECK(std::abs(sn - 1.0) <= 1e-13);
        CHECK(std::abs(cn) <= 1e-13);
        CHECK(std::abs(dn - std::sqrt(1.0 - m)) <= 1e-13);
    }
}

TEST_CASE("jacobi functions are 4K-periodic") {
    const double m = 0.6;
    const double K = complete_elliptic_k(EllipticParameter(m));
    for (const double u : {-1.3, 0.2, 0.9, 2.4}) {
        const auto base = jacobi_sn_cn_dn(u, EllipticParameter(m));
        const auto shifted = jacobi_sn_cn_dn(u + 4.0 * K, EllipticParameter(m));
        CHECK(std::abs(base.sn - shifted.sn) <= 1e-12);
        CHECK(std::abs(base.cn - shifted.cn) <= 1e-12);
        CHECK(std::abs(base.dn - shifted.dn) <= 1e-12);
    }
}

TEST_CASE("small-parameter limit reduces to circular functions") {
    const auto [sn, cn, dn] = jacobi_sn_cn_dn(0.7, EllipticParameter(0.0));
    CHECK(sn == doctest::Approx(std::sin(0.7)).epsilon(1e-14));
    CHECK(cn == doctest::Approx(std::cos(0.7)).epsilon(1e-14));
    CHECK(dn == 1.0);
}
