#pragma once

namespace gcq {

/// Elliptic parameter m = k^2, restricted to [0, 1).
/// The quarter period is K(m); the complementary one is K(1 - m).
struct EllipticParameter {
    double m;
    explicit EllipticParameter(double value);
};

/// Complete elliptic integral of the first kind,
/// K(m) = \int_0^1 dx / sqrt((1 - x^2)(1 - m x^2)),
/// computed by the arithmetic-geometric mean.
double complete_elliptic_k(EllipticParameter m);

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

/// Jacobi elliptic functions sn, cn, dn at real argument u.
JacobiTriple jacobi_sn_cn_dn(double u, EllipticParameter m);

}  // namespace gcq
