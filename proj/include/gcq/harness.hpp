#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gcq/solver.hpp"

namespace gcq {

/// Values of the built-in benchmark problem at time t:
///   phi(t)  = t^{5/2} e^{-t}
///   phi'(t) = e^{-t} t^{3/2} (5/2 - t)
///   g(t)    = 2 sum_{k=0}^{floor(t/2)} phi'(t - 2k)   (= 2 phi'(t) on [0,2))
/// which solve K(d_t) g = phi for the kernel (1 - e^{-2s})/(2s).
struct ExactExample {
    double phi;
    double phi_prime;
    double g;
};

/// Throws std::domain_error for t < 0.
ExactExample exact_example(double t);

enum class SolveMode { Forward, Backward };

struct ExperimentConfig {
    std::string kernel = "example1";  ///< registry name or expression text
    double mu = 0.0;
    double sigma0 = 1.0;
    SolveMode mode = SolveMode::Backward;
    StepperKind stepper = StepperKind::Trapezoidal;
    std::string mesh_spec = "graded:2:64";  ///< uniform:N | graded:alpha:N
    double T = 1.0;
    int rho = 0;
    std::optional<int> nq_override;
    std::vector<int> study_N;  ///< strictly increasing N list for studies
};

struct ConvergenceRow {
    int N = 0;
    double delta_max = 0.0;
    double max_error = 0.0;
    double final_error = 0.0;
    std::optional<double> eoc;  ///< defined from the second row on
    double seconds = 0.0;
    std::string failure;  ///< nonempty when the row's solve failed
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double fitted_slope = 0.0;    ///< least-squares slope of log e vs log N
    double fit_residual = 0.0;    ///< rms deviation of the fit
};

/// Result of a single solve on one mesh, with pointwise errors.
struct PointwiseRow {
    double t = 0.0;
    Complex value;
    double exact = 0.0;
    double abs_error = 0.0;
};

/// Solves the configured problem on the configured mesh. The kernel must
/// be one of the registry problems with known data and exact solution
/// ("example1" or "power:-1"); throws std::invalid_argument otherwise.
std::vector<PointwiseRow> run_single_solve(const ExperimentConfig& config);

/// Runs the configured problem for every N in config.study_N, computing
/// max-over-grid and final-time errors against the exact solution and
/// EOC_i = log(e_{i-1}/e_i) / log(N_i/N_{i-1}). A failed row carries its
/// diagnostic; remaining rows still run.
ConvergenceReport run_convergence_study(const ExperimentConfig& config);

/// CSV schema: N,delta_max,max_error,final_error,eoc,seconds
/// (eoc blank on the first data row).
void emit_convergence_csv(const ConvergenceReport& report, std::ostream& out);

/// CSV schema: t,value_re,value_im,exact,abs_error
void emit_pointwise_csv(const std::vector<PointwiseRow>& rows, std::ostream& out);

/// Identity suites (elliptic, contour Cauchy, Leibniz rule, inversion
/// formula); prints one pass/fail line per suite, returns true when all
/// pass.
bool run_check_suites(std::ostream& out);

}  // namespace gcq
