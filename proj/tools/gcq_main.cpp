#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcq/errors.hpp"
#include "gcq/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

int write_or_print(const std::string& out_path,
                   const std::function<void(std::ostream&)>& emit) {
    if (out_path.empty()) {
        emit(std::cout);
        return kExitOk;
    }
    std::ofstream file(out_path);
    if (!file) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return kExitIo;
    }
    emit(file);
    if (!file.good()) {
        std::cerr << "error: writing '" << out_path << "' failed\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized convolution quadrature with variable time steps"};
    app.require_subcommand(1);

    gcq::ExperimentConfig config;
    std::string mode = "backward";
    std::string stepper = "trap";
    std::string out_path;
    std::vector<int> study_n = {16, 32, 64, 128, 256};

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--kernel", config.kernel,
                        "built-in problem name (example1, power:-1)");
        cmd->add_option("--mu", config.mu, "growth exponent of the kernel");
        cmd->add_option("--sigma0", config.sigma0, "abscissa of the kernel");
        cmd->add_option("--mode", mode, "forward | backward")
            ->check(CLI::IsMember({"forward", "backward"}));
        cmd->add_option("--stepper", stepper, "trap | bdf2 | bdf1")
            ->check(CLI::IsMember({"trap", "bdf2", "bdf1"}));
        cmd->add_option("--mesh", config.mesh_spec, "uniform:N | graded:alpha:N");
        cmd->add_option("--T", config.T, "time horizon");
        cmd->add_option("--rho", config.rho, "regularization order");
        cmd->add_option("--nq", config.nq_override, "contour node count override");
        cmd->add_option("--out", out_path, "output CSV path (default stdout)");
    };

    CLI::App* solve = app.add_subcommand("solve", "single solve with pointwise errors");
    add_common(solve);
    CLI::App* study = app.add_subcommand("study", "convergence study over an N list");
    add_common(study);
    study->add_option("--N", study_n, "comma-separated step counts")
        ->delimiter(',');
    CLI::App* check = app.add_subcommand("check", "run the identity suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    config.mode = mode == "forward" ? gcq::SolveMode::Forward
                                    : gcq::SolveMode::Backward;
    config.stepper = stepper == "trap"   ? gcq::StepperKind::Trapezoidal
                     : stepper == "bdf2" ? gcq::StepperKind::BDF2
                                         : gcq::StepperKind::BDF1;
    config.study_N = study_n;

    try {
        if (check->parsed()) {
            return gcq::run_check_suites(std::cout) ? kExitOk : kExitNumerical;
        }
        if (solve->parsed()) {
            const auto rows = gcq::run_single_solve(config);
            return write_or_print(out_path, [&](std::ostream& os) {
                gcq::emit_pointwise_csv(rows, os);
            });
        }
        const auto report = gcq::run_convergence_study(config);
        const int rc = write_or_print(out_path, [&](std::ostream& os) {
            gcq::emit_convergence_csv(report, os);
        });
        if (rc != kExitOk) return rc;
        for (const auto& row : report.rows) {
            if (!row.failure.empty()) {
                std::cerr << "error: N = " << row.N << " failed: " << row.failure
                          << '\n';
                return kExitNumerical;
            }
        }
        return kExitOk;
    } catch (const gcq::EvaluationError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const gcq::SingularSolveError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
