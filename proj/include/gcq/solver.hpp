#pragma once

#include <complex>
#include <vector>

#include "gcq/contour.hpp"
#include "gcq/mesh.hpp"
#include "gcq/stepper.hpp"
#include "gcq/symbol.hpp"

namespace gcq {

/// Variable-step BDF2 coefficients
///   A_n = Delta_n (Delta_{n-1}+Delta_n) / (Delta_{n-1}+2 Delta_n)
///   B_n = (Delta_{n-1}+Delta_n)^2 / (Delta_{n-1}(Delta_{n-1}+2 Delta_n))
///   C_n = Delta_n^2 / (Delta_{n-1}(Delta_{n-1}+2 Delta_n))
/// with the startup convention Delta_0 := Delta_1. Uniform steps give
/// (2 Delta/3, 4/3, 1/3).
struct Bdf2Coefficients {
    double A;
    double B;
    double C;
};

/// Coefficients for steps n = 1..N; entry [n-1] belongs to step n.
std::vector<Bdf2Coefficients> bdf2_coefficients(const TimeMesh& mesh);

/// One trapezoidal step of u' = s u + g at all nodes:
///   u_n = u_prev (2 + Delta s) / (2 - Delta s)
///         + (g_prev + g_curr) Delta / (2 - Delta s).
/// Throws when a node is within 1e-14 (relative) of the real pole 2/Delta.
std::vector<Complex> step_trapezoidal(const std::vector<Complex>& u_prev,
                                      const std::vector<Complex>& nodes,
                                      double delta_n, Complex g_prev,
                                      Complex g_curr);

/// One variable-step BDF2 step:
///   u_n = (u_prev B_n - u_prev2 C_n + g_curr A_n) / (1 - A_n s).
std::vector<Complex> step_bdf2(const std::vector<Complex>& u_prev,
                               const std::vector<Complex>& u_prev2,
                               const std::vector<Complex>& nodes,
                               const Bdf2Coefficients& coeffs, Complex g_curr);

struct SolveOptions {
    /// Evaluate only nodes with nonnegative imaginary part and double the
    /// conjugate contributions when symbol and data are real.
    bool exploit_conjugate_symmetry = true;
    /// The backward driver's g_{n-1} closure term uses the previous step's
    /// pole 2/Delta_{n-1} by default; switching to the current step's
    /// 2/Delta_n makes the backward solve invert the forward solve exactly.
    /// Both converge at second order on graded meshes; diagnostic switch,
    /// trapezoidal stepper only.
    bool backward_pole_uses_current_step = false;
};

/// Evaluates the discrete convolution K(d_t)g at t_1..t_N (length-N result)
/// by the contour-quadrature recursion. g_samples holds g^(rho) at t_0..t_N;
/// a warning is emitted when g_samples[0] != 0 (causality). The contour
/// must have been built for the same mesh and stepper.
std::vector<Complex> forward_solve(const TransferSymbol& symbol, int rho,
                                   const std::vector<Complex>& g_samples,
                                   const TimeMesh& mesh, StepperKind stepper,
                                   const ContourRule& contour,
                                   const SolveOptions& options = {});

/// Solves K(d_t)g = phi for g at t_1..t_N. phi_samples holds phi^(rho) at
/// t_0..t_N. Throws SingularSolveError when the scalar pivot K(pole)
/// vanishes at some step.
std::vector<Complex> backward_solve(const TransferSymbol& symbol, int rho,
                                    const std::vector<Complex>& phi_samples,
                                    const TimeMesh& mesh, StepperKind stepper,
                                    const ContourRule& contour,
                                    const SolveOptions& options = {});

/// Classical uniform-step CQ weights omega_0..omega_L of the trapezoidal
/// rule (generating function delta(zeta) = 2(1-zeta)/(1+zeta)) by the
/// compound trapezoidal rule on the circle |zeta| = lambda:
///   omega_j ~ lambda^{-j}/(L+1) sum_l K(delta(lambda e^{-2 pi i l/(L+1)})/Delta)
///             e^{2 pi i l j/(L+1)}.
std::vector<Complex> uniform_cq_weights(const TransferSymbol& symbol,
                                        double delta, int L, double lambda);

}  // namespace gcq
