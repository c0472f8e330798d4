#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gcq/mesh.hpp"
#include "gcq/stepper.hpp"

namespace gcq {

using Complex = std::complex<double>;

/// Parameters of the elliptic contour: a circle of center M and radius M
/// in the right half-plane, parametrized through Jacobi elliptic functions.
struct ContourParams {
    double R;        ///< stepper safety constant
    double M;        ///< circle center and radius
    double q;        ///< M / Delta_min
    double k;        ///< elliptic modulus
    double m;        ///< parameter k^2
    double K_m;      ///< complete elliptic integral K(k^2)
    double Kp_m;     ///< complementary integral K(1 - k^2)
    int node_count;  ///< N_Q
};

/// Quadrature nodes s_l and weights w_l on the contour circle.
///
/// The weights are normalized once so that sum_l w_l / (s_l - p) tends to
/// +1 for any pole p inside the circle; every consumer relies on that
/// convention. Nodes come in conjugate pairs: nodes[l] and
/// nodes[N_Q - 1 - l] are complex conjugates (with conjugate weights).
struct ContourRule {
    ContourParams params;
    std::vector<Complex> nodes;
    std::vector<Complex> weights;
};

/// Default node-count rule N_Q = ceil(N * log2(N)^2), with N_Q = 16 for N = 1.
int default_node_count(int N);

/// Point gamma(sigma) and derivative gamma'(sigma) of the circle
/// parametrization. The Jacobi functions are evaluated on the line
/// Im = K(1-m)/2, where the parametrization traces the circle
/// |gamma - M| = M exactly once per period 4 K(m).
std::pair<Complex, Complex> gamma_point_and_derivative(double sigma,
                                                       const ContourParams& params);

/// Builds the contour rule for a mesh with the given step statistics and
/// stepper. Throws std::invalid_argument when the mesh degenerates
/// (q <= 1) or the stepper poles would not fit strictly inside the circle.
ContourRule build_contour(const MeshStats& stats, int N, StepperKind method,
                          std::optional<int> node_count_override = std::nullopt);

/// Discrete Cauchy check: sum_l w_l / (s_l - pole), which approximates +1
/// for any pole strictly inside the circle. Throws if the pole is on or
/// outside the circle.
Complex cauchy_validate(const ContourRule& rule, Complex pole);

}  // namespace gcq
