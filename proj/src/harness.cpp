#include "gcq/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "gcq/divdiff.hpp"
#include "gcq/elliptic.hpp"

namespace gcq {

ExactExample exact_example(double t) {
    if (t < 0.0) throw std::domain_error("benchmark data is defined for t >= 0");
    auto phi_prime = [](double x) {
        return std::exp(-x) * std::pow(x, 1.5) * (2.5 - x);
    };
    ExactExample out{};
    out.phi = std::pow(t, 2.5) * std::exp(-t);
    out.phi_prime = phi_prime(t);
    out.g = 0.0;
    for (int k = 0; k <= static_cast<int>(std::floor(t / 2.0)); ++k) {
        out.g += 2.0 * phi_prime(t - 2.0 * k);
    }
    return out;
}

namespace {

struct Problem {
    TransferSymbol symbol;
    std::function<double(double)> data;   ///< input samples over the mesh
    std::function<double(double)> exact;  ///< solution to compare against
};

Problem lookup_problem(const ExperimentConfig& config) {
    Problem p;
    if (config.kernel == "example1") {
        p.symbol = builtin_symbol("example1");
        if (config.mode == SolveMode::Backward) {
            p.data = [](double t) { return exact_example(t).phi; };
            p.exact = [](double t) { return exact_example(t).g; };
        } else {
            p.data = [](double t) { return exact_example(t).g; };
            p.exact = [](double t) { return exact_example(t).phi; };
        }
        return p;
    }
    if (config.kernel == "power:-1") {
        // integration/differentiation pair: g(t) = t, phi(t) = t^2/2; the
        // trapezoidal rule is exact on it, so errors sit at rounding level
        p.symbol = builtin_symbol("power:-1");
        if (config.mode == SolveMode::Backward) {
            p.data = [](double t) { return t * t / 2.0; };
            p.exact = [](double t) { return t; };
        } else {
            p.data = [](double t) { return t; };
            p.exact = [](double t) { return t * t / 2.0; };
        }
        return p;
    }
    throw std::invalid_argument(
        "kernel '" + config.kernel +
        "' has no built-in data/exact solution; available: example1, power:-1");
}

std::vector<PointwiseRow> solve_on_mesh(const Problem& problem,
                                        const ExperimentConfig& config,
                                        const TimeMesh& mesh) {
    const int N = mesh.step_count();
    const ContourRule contour =
        build_contour(mesh_stats(mesh), N, config.stepper, config.nq_override);
    std::vector<Complex> samples(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) {
        samples[static_cast<std::size_t>(j)] = problem.data(mesh.point(j));
    }
    const std::vector<Complex> values =
        config.mode == SolveMode::Forward
            ? forward_solve(problem.symbol, config.rho, samples, mesh,
                            config.stepper, contour)
            : backward_solve(problem.symbol, config.rho, samples, mesh,
                             config.stepper, contour);
    std::vector<PointwiseRow> rows(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        auto& row = rows[static_cast<std::size_t>(n - 1)];
        row.t = mesh.point(n);
        row.value = values[static_cast<std::size_t>(n - 1)];
        row.exact = problem.exact(row.t);
        row.abs_error = std::abs(row.value - row.exact);
    }
    return rows;
}

/// "uniform:N" or "graded:alpha:N" with the step count replaced.
std::string mesh_spec_with_n(const std::string& spec, int N) {
    const auto last = spec.rfind(':');
    if (last == std::string::npos) {
        throw std::invalid_argument("mesh spec must be uniform:N or graded:alpha:N");
    }
    return spec.substr(0, last + 1) + std::to_string(N);
}

}  // namespace

std::vector<PointwiseRow> run_single_solve(const ExperimentConfig& config) {
    const Problem problem = lookup_problem(config);
    const TimeMesh mesh = parse_mesh_spec(config.mesh_spec, config.T);
    return solve_on_mesh(problem, config, mesh);
}

ConvergenceReport run_convergence_study(const ExperimentConfig& config) {
    if (config.study_N.empty()) {
        throw std::invalid_argument("study needs a nonempty N list");
    }
    if (!std::is_sorted(config.study_N.begin(), config.study_N.end()) ||
        std::adjacent_find(config.study_N.begin(), config.study_N.end()) !=
            config.study_N.end()) {
        throw std::invalid_argument("study N list must be strictly increasing");
    }
    const Problem problem = lookup_problem(config);

    ConvergenceReport report;
    for (const int N : config.study_N) {
        ConvergenceRow row;
        row.N = N;
        const auto start = std::chrono::steady_clock::now();
        try {
            const TimeMesh mesh =
                parse_mesh_spec(mesh_spec_with_n(config.mesh_spec, N), config.T);
            row.delta_max = mesh_stats(mesh).delta_max;
            const auto rows = solve_on_mesh(problem, config, mesh);
            for (const auto& r : rows) {
                row.max_error = std::max(row.max_error, r.abs_error);
            }
            row.final_error = rows.back().abs_error;
        } catch (const std::exception& e) {
            row.failure = e.what();
        }
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        report.rows.push_back(std::move(row));
    }

    // EOC between consecutive successful rows
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const auto& prev = report.rows[i - 1];
        auto& curr = report.rows[i];
        if (prev.failure.empty() && curr.failure.empty() && prev.max_error > 0.0 &&
            curr.max_error > 0.0) {
            curr.eoc = std::log(prev.max_error / curr.max_error) /
                       std::log(static_cast<double>(curr.N) / prev.N);
        }
    }

    // least-squares slope of log(error) against log(N)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (const auto& row : report.rows) {
        if (!row.failure.empty() || !(row.max_error > 0.0)) continue;
        const double x = std::log(static_cast<double>(row.N));
        const double y = std::log(row.max_error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        const double denom = count * sxx - sx * sx;
        const double slope = (count * sxy - sx * sy) / denom;
        const double intercept = (sy - slope * sx) / count;
        report.fitted_slope = -slope;  // errors decay like N^{-p}
        double ss = 0.0;
        for (const auto& row : report.rows) {
            if (!row.failure.empty() || !(row.max_error > 0.0)) continue;
            const double x = std::log(static_cast<double>(row.N));
            const double r = std::log(row.max_error) - (slope * x + intercept);
            ss += r * r;
        }
        report.fit_residual = std::sqrt(ss / count);
    }
    return report;
}

void emit_convergence_csv(const ConvergenceReport& report, std::ostream& out) {
    out << "N,delta_max,max_error,final_error,eoc,seconds\n";
    char buf[256];
    for (const auto& row : report.rows) {
        if (!row.failure.empty()) {
            out << row.N << ",,,,," << '\n';
            continue;
        }
        std::snprintf(buf, sizeof buf, "%d,%.12e,%.12e,%.12e,", row.N,
                      row.delta_max, row.max_error, row.final_error);
        out << buf;
        if (row.eoc) {
            std::snprintf(buf, sizeof buf, "%.6f", *row.eoc);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.3f", row.seconds);
        out << buf << '\n';
    }
}

void emit_pointwise_csv(const std::vector<PointwiseRow>& rows, std::ostream& out) {
    out << "t,value_re,value_im,exact,abs_error\n";
    char buf[256];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e,%.12e", row.t,
                      row.value.real(), row.value.imag(), row.exact,
                      row.abs_error);
        out << buf << '\n';
    }
}

namespace {

bool check_elliptic() {
    if (std::abs(complete_elliptic_k(EllipticParameter(0.0)) -
                 std::numbers::pi / 2.0) > 1e-14) {
        return false;
    }
    for (int i = 0; i < 40; ++i) {
        const double m = 0.999 * (i + 0.5) / 40.0;
        const double K = complete_elliptic_k(EllipticParameter(m));
        for (int l = 0; l < 30; ++l) {
            const double u = -2.0 * K + 4.0 * K * l / 29.0;
            const auto [sn, cn, dn] = jacobi_sn_cn_dn(u, EllipticParameter(m));
            if (std::abs(sn * sn + cn * cn - 1.0) > 1e-12) return false;
            if (std::abs(dn * dn + m * sn * sn - 1.0) > 1e-12) return false;
        }
    }
    return true;
}

bool check_contour() {
    const TimeMesh mesh = uniform_mesh(8, 1.0);
    const ContourRule rule =
        build_contour(mesh_stats(mesh), 8, StepperKind::Trapezoidal, 256);
    const double M = rule.params.M;
    if (std::abs(cauchy_validate(rule, Complex(M, 0.0)) - 1.0) > 1e-10) {
        return false;
    }
    for (int i = 1; i <= 20; ++i) {
        const double sigma = -rule.params.K_m + i * 0.18 * rule.params.K_m;
        const double h = 1e-6;
        const auto [pp, dp] = gamma_point_and_derivative(sigma + h, rule.params);
        const auto [pm, dm] = gamma_point_and_derivative(sigma - h, rule.params);
        const auto [p0, d0] = gamma_point_and_derivative(sigma, rule.params);
        if (std::abs((pp - pm) / (2.0 * h) - d0) > 1e-6 * std::abs(d0)) {
            return false;
        }
    }
    return true;
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

bool check_leibniz() {
    std::mt19937 rng(20240521);
    std::uniform_int_distribution<int> size(0, 8);
    for (int trial = 0; trial < 120; ++trial) {
        const PointSet pts = random_points(rng, size(rng));
        const ComplexFn f = trial % 3 == 0
                                ? ComplexFn([](Complex x) { return std::exp(x / 10.0); })
                                : random_polynomial(rng);
        const ComplexFn g = trial % 4 == 0
                                ? ComplexFn([](Complex x) { return 1.0 / (x + 10.0); })
                                : random_polynomial(rng);
        if (leibniz_check(pts, f, g) > 1e-9) return false;
    }
    return true;
}

bool check_inversion() {
    std::mt19937 rng(20240522);
    std::uniform_int_distribution<int> size(0, 8);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const TransferSymbol symbol = parse_symbol("1/(s+1)", -1.0, 1.0);
    for (int trial = 0; trial < 120; ++trial) {
        const PointSet pts = random_points(rng, size(rng));
        std::vector<Complex> data(pts.size());
        for (auto& d : data) d = Complex(dist(rng), 0.0);
        if (inversion_check(pts, symbol, data) > 1e-9) return false;
    }
    return true;
}

}  // namespace

bool run_check_suites(std::ostream& out) {
    bool all = true;
    const struct {
        const char* name;
        bool (*run)();
    } suites[] = {
        {"elliptic identities", check_elliptic},
        {"contour cauchy + derivative", check_contour},
        {"leibniz rule", check_leibniz},
        {"inversion formula", check_inversion},
    };
    for (const auto& suite : suites) {
        const bool ok = suite.run();
        out << (ok ? "pass" : "FAIL") << "  " << suite.name << '\n';
        all = all && ok;
    }
    return all;
}

}  // namespace gcq
