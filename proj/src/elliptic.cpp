#include "gcq/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gcq {

EllipticParameter::EllipticParameter(double value) : m(value) {
    if (!(value >= 0.0 && value < 1.0)) {
        throw std::domain_error("elliptic parameter m must lie in [0, 1)");
    }
}

double complete_elliptic_k(EllipticParameter p) {
    double a = 1.0;
    double b = std::sqrt(1.0 - p.m);
    while (a - b > 0.5e-15 * a) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (a + b);
}

JacobiTriple jacobi_sn_cn_dn(double u, EllipticParameter p) {
    const double m = p.m;
    if (m == 0.0) {
        return {std::sin(u), std::cos(u), 1.0};
    }

    // Descending Landen / AGM scale: a_i, c_i until c_N is negligible,
    // then the amplitude is recovered backwards through
    // sin(2*phi_{i-1} - phi_i) = (c_i / a_i) sin(phi_i).
    constexpr int kMaxLevels = 32;
    std::array<double, kMaxLevels + 1> a{};
    std::array<double, kMaxLevels + 1> c{};
    a[0] = 1.0;
    c[0] = std::sqrt(m);
    double b = std::sqrt(1.0 - m);
    int levels = 0;
    while (levels < kMaxLevels && std::abs(c[levels]) > 1.0e-16 * a[levels]) {
        const double an = 0.5 * (a[levels] + b);
        const double cn = 0.5 * (a[levels] - b);
        b = std::sqrt(a[levels] * b);
        ++levels;
        a[levels] = an;
        c[levels] = cn;
    }

    double phi = std::ldexp(a[levels] * u, levels);
    for (int i = levels; i >= 1; --i) {
        const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(s));
    }

    JacobiTriple out{};
    out.sn = std::sin(phi);
    out.cn = std::cos(phi);
    // dn stays in [sqrt(1-m), 1] for real u and m < 1, so the principal
    // square root is the right branch everywhere (the classical
    // cn/cos(phi_1 - phi) recovery degenerates to 0/0 at the quarter period)
    out.dn = std::sqrt(1.0 - m * out.sn * out.sn);
    return out;
}

}  // namespace gcq
