#include "gcq/solver.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <stdexcept>

#include "gcq/errors.hpp"
#include "gcq/summation.hpp"

namespace gcq {

std::vector<Bdf2Coefficients> bdf2_coefficients(const TimeMesh& mesh) {
    const int N = mesh.step_count();
    std::vector<Bdf2Coefficients> out(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        const double dn = mesh.step(n);
        const double dp = n == 1 ? dn : mesh.step(n - 1);  // Delta_0 := Delta_1
        const double denom = dp + 2.0 * dn;
        out[static_cast<std::size_t>(n - 1)] = {dn * (dp + dn) / denom,
                                                (dp + dn) * (dp + dn) / (dp * denom),
                                                dn * dn / (dp * denom)};
    }
    return out;
}

namespace {

void check_away_from_pole(Complex denom, Complex scale) {
    if (std::abs(denom) < 1e-14 * std::abs(scale)) {
        throw std::runtime_error("contour node too close to a stepper pole");
    }
}

}  // namespace

std::vector<Complex> step_trapezoidal(const std::vector<Complex>& u_prev,
                                      const std::vector<Complex>& nodes,
                                      double delta_n, Complex g_prev,
                                      Complex g_curr) {
    if (u_prev.size() != nodes.size()) {
        throw std::invalid_argument("history and node counts differ");
    }
    if (!(delta_n > 0.0)) throw std::invalid_argument("step must be positive");
    std::vector<Complex> u(nodes.size());
    for (std::size_t l = 0; l < nodes.size(); ++l) {
        const Complex num = 2.0 + delta_n * nodes[l];
        const Complex den = 2.0 - delta_n * nodes[l];
        check_away_from_pole(den, num);
        u[l] = u_prev[l] * num / den + (g_prev + g_curr) * delta_n / den;
    }
    return u;
}

std::vector<Complex> step_bdf2(const std::vector<Complex>& u_prev,
                               const std::vector<Complex>& u_prev2,
                               const std::vector<Complex>& nodes,
                               const Bdf2Coefficients& coeffs, Complex g_curr) {
    if (u_prev.size() != nodes.size() || u_prev2.size() != nodes.size()) {
        throw std::invalid_argument("history and node counts differ");
    }
    std::vector<Complex> u(nodes.size());
    for (std::size_t l = 0; l < nodes.size(); ++l) {
        const Complex den = 1.0 - coeffs.A * nodes[l];
        check_away_from_pole(den, std::max(1.0, std::abs(coeffs.A * nodes[l])));
        u[l] = (u_prev[l] * coeffs.B - u_prev2[l] * coeffs.C + g_curr * coeffs.A) /
               den;
    }
    return u;
}

namespace {

bool all_real(const std::vector<Complex>& values) {
    for (const auto& v : values) {
        if (v.imag() != 0.0) return false;
    }
    return true;
}

/// Which contour nodes to evaluate and with what multiplicity. With
/// conjugate symmetry only one node of each pair is used and its
/// contribution doubled (real part taken at assembly).
struct NodePlan {
    std::vector<std::size_t> index;
    std::vector<double> multiplicity;
    bool symmetric;
};

NodePlan make_plan(std::size_t node_count, bool symmetric) {
    NodePlan plan;
    plan.symmetric = symmetric;
    if (!symmetric) {
        plan.index.resize(node_count);
        plan.multiplicity.assign(node_count, 1.0);
        for (std::size_t l = 0; l < node_count; ++l) plan.index[l] = l;
        return plan;
    }
    for (std::size_t l = 0; l < node_count / 2; ++l) {
        plan.index.push_back(l);
        plan.multiplicity.push_back(2.0);
    }
    if (node_count % 2 == 1) {
        plan.index.push_back(node_count / 2);
        plan.multiplicity.push_back(1.0);
    }
    return plan;
}

/// Shared forward/backward time loop. The contour rule is normalized for
/// the positive orientation while the inversion integral runs negatively
/// oriented, so assembled sums enter with a minus sign; the residue at the
/// stepper's real pole appears as the explicit K(pole) closure term.
std::vector<Complex> run_solve(const TransferSymbol& symbol, int rho,
                               const std::vector<Complex>& data,
                               const TimeMesh& mesh, StepperKind stepper,
                               const ContourRule& contour,
                               const SolveOptions& options, bool forward) {
    const int N = mesh.step_count();
    if (data.size() != static_cast<std::size_t>(N) + 1) {
        throw std::invalid_argument("need one data sample per mesh point (t_0..t_N)");
    }
    if (forward && std::abs(data[0]) != 0.0) {
        std::cerr << "warning: g(t_0) != 0 breaks causality; the startup step "
                     "ignores it\n";
    }
    // forward applies K_rho = s^{-rho} K, backward K_{-rho} = s^{rho} K
    const TransferSymbol k_eff = scale_power(symbol, forward ? -rho : rho);
    const bool symmetric = options.exploit_conjugate_symmetry &&
                           k_eff.real_coefficients && all_real(data);
    const NodePlan plan = make_plan(contour.nodes.size(), symmetric);
    const std::size_t active = plan.index.size();

    std::vector<Complex> s(active);       // active contour nodes
    std::vector<Complex> kw(active);      // multiplicity * w_l * K(s_l)
    for (std::size_t a = 0; a < active; ++a) {
        s[a] = contour.nodes[plan.index[a]];
        kw[a] = plan.multiplicity[a] * contour.weights[plan.index[a]] *
                evaluate_symbol(k_eff, s[a]);
    }

    std::vector<Bdf2Coefficients> coeffs;
    if (stepper == StepperKind::BDF2) coeffs = bdf2_coefficients(mesh);

    std::map<double, Complex> pole_cache;
    auto k_at_pole = [&](double pole) {
        const auto found = pole_cache.find(pole);
        if (found != pole_cache.end()) return found->second;
        const Complex v = evaluate_symbol(k_eff, Complex(pole, 0.0));
        pole_cache.emplace(pole, v);
        return v;
    };

    // The circle passes through the origin; when K_eff has a simple pole
    // there the rule picks up exactly half its residue, which the defining
    // line integral does not contain. Track the recursion at s = 0 and
    // subtract that half.
    const Complex c0 = residue_at_origin(k_eff);

    std::vector<Complex> u_prev(active, Complex{});
    std::vector<Complex> u_prev2(active, Complex{});
    Complex u0_prev{};
    Complex u0_prev2{};
    std::vector<Complex> history(active);
    std::vector<Complex> terms(active);
    std::vector<Complex> g(static_cast<std::size_t>(N) + 1, Complex{});
    if (forward) g = data;
    std::vector<Complex> out(static_cast<std::size_t>(N));

    for (int n = 1; n <= N; ++n) {
        const double delta = mesh.step(n);
        double pole = 0.0;
        switch (stepper) {
            case StepperKind::Trapezoidal: pole = 2.0 / delta; break;
            case StepperKind::BDF2:
                pole = 1.0 / coeffs[static_cast<std::size_t>(n - 1)].A;
                break;
            case StepperKind::BDF1: pole = 1.0 / delta; break;
        }

        // transfer of the history through the current step, without the
        // new data term (that term is the K(pole) closure)
        for (std::size_t a = 0; a < active; ++a) {
            switch (stepper) {
                case StepperKind::Trapezoidal: {
                    const Complex num = 2.0 + delta * s[a];
                    const Complex den = 2.0 - delta * s[a];
                    check_away_from_pole(den, num);
                    history[a] = u_prev[a] * num / den;
                    break;
                }
                case StepperKind::BDF2: {
                    const auto& c = coeffs[static_cast<std::size_t>(n - 1)];
                    const Complex den = 1.0 - c.A * s[a];
                    check_away_from_pole(den, std::max(1.0, std::abs(c.A * s[a])));
                    history[a] = (u_prev[a] * c.B - u_prev2[a] * c.C) / den;
                    break;
                }
                case StepperKind::BDF1: {
                    const Complex den = 1.0 - delta * s[a];
                    check_away_from_pole(den, std::max(1.0, std::abs(delta * s[a])));
                    history[a] = u_prev[a] / den;
                    break;
                }
            }
            terms[a] = kw[a] * history[a];
        }
        Complex history0{};
        switch (stepper) {
            case StepperKind::Trapezoidal:
            case StepperKind::BDF1: history0 = u0_prev; break;
            case StepperKind::BDF2: {
                const auto& c = coeffs[static_cast<std::size_t>(n - 1)];
                history0 = u0_prev * c.B - u0_prev2 * c.C;
                break;
            }
        }
        Complex sum = pairwise_sum(terms);
        if (symmetric) sum = Complex(sum.real(), 0.0);
        sum -= 0.5 * c0 * history0;
        const Complex k_pole = k_at_pole(pole);

        if (forward) {
            Complex closure;
            if (stepper == StepperKind::Trapezoidal) {
                // startup omits g(t_0) (Algorithm initialization)
                closure = n == 1 ? g[1] : g[static_cast<std::size_t>(n - 1)] +
                                              g[static_cast<std::size_t>(n)];
            } else {
                closure = g[static_cast<std::size_t>(n)];
            }
            out[static_cast<std::size_t>(n - 1)] = -sum + k_pole * closure;
        } else {
            Complex r = data[static_cast<std::size_t>(n)] + sum;
            if (stepper == StepperKind::Trapezoidal && n >= 2) {
                const double closure_pole = options.backward_pole_uses_current_step
                                                ? pole
                                                : 2.0 / mesh.step(n - 1);
                r -= k_at_pole(closure_pole) * g[static_cast<std::size_t>(n - 1)];
            }
            if (!(std::abs(k_pole) > 1e-300)) {
                throw SingularSolveError(
                    "symbol '" + k_eff.label + "' vanishes at the stepper pole", n);
            }
            g[static_cast<std::size_t>(n)] = r / k_pole;
            out[static_cast<std::size_t>(n - 1)] = g[static_cast<std::size_t>(n)];
        }

        if (n == N) break;
        // advance the history u_{n-1} -> u_n
        for (std::size_t a = 0; a < active; ++a) {
            Complex u_next;
            switch (stepper) {
                case StepperKind::Trapezoidal: {
                    const Complex den = 2.0 - delta * s[a];
                    u_next = history[a] + (g[static_cast<std::size_t>(n - 1)] +
                                           g[static_cast<std::size_t>(n)]) *
                                              delta / den;
                    break;
                }
                case StepperKind::BDF2: {
                    const auto& c = coeffs[static_cast<std::size_t>(n - 1)];
                    const Complex den = 1.0 - c.A * s[a];
                    u_next = history[a] +
                             g[static_cast<std::size_t>(n)] * c.A / den;
                    break;
                }
                case StepperKind::BDF1: {
                    const Complex den = 1.0 - delta * s[a];
                    u_next = history[a] +
                             g[static_cast<std::size_t>(n)] * delta / den;
                    break;
                }
            }
            u_prev2[a] = u_prev[a];
            u_prev[a] = u_next;
        }
        u0_prev2 = u0_prev;
        switch (stepper) {
            case StepperKind::Trapezoidal:
                u0_prev = history0 + (g[static_cast<std::size_t>(n - 1)] +
                                      g[static_cast<std::size_t>(n)]) *
                                         delta / 2.0;
                break;
            case StepperKind::BDF2:
                u0_prev = history0 + g[static_cast<std::size_t>(n)] *
                                         coeffs[static_cast<std::size_t>(n - 1)].A;
                break;
            case StepperKind::BDF1:
                u0_prev = history0 + g[static_cast<std::size_t>(n)] * delta;
                break;
        }
    }
    return out;
}

}  // namespace

std::vector<Complex> forward_solve(const TransferSymbol& symbol, int rho,
                                   const std::vector<Complex>& g_samples,
                                   const TimeMesh& mesh, StepperKind stepper,
                                   const ContourRule& contour,
                                   const SolveOptions& options) {
    return run_solve(symbol, rho, g_samples, mesh, stepper, contour, options, true);
}

std::vector<Complex> backward_solve(const TransferSymbol& symbol, int rho,
                                    const std::vector<Complex>& phi_samples,
                                    const TimeMesh& mesh, StepperKind stepper,
                                    const ContourRule& contour,
                                    const SolveOptions& options) {
    return run_solve(symbol, rho, phi_samples, mesh, stepper, contour, options,
                     false);
}

std::vector<Complex> uniform_cq_weights(const TransferSymbol& symbol,
                                        double delta, int L, double lambda) {
    if (!(lambda > 0.0) || !(lambda < 1.0)) {
        throw std::invalid_argument("radius must satisfy 0 < lambda < 1");
    }
    if (L < 0) throw std::invalid_argument("weight count must be nonnegative");
    if (!(delta > 0.0)) throw std::invalid_argument("step must be positive");
    const int count = L + 1;
    // K at the generating-function images of the circle samples
    std::vector<Complex> samples(static_cast<std::size_t>(count));
    for (int l = 0; l < count; ++l) {
        const double theta = 2.0 * std::numbers::pi * l / count;
        const Complex zeta = lambda * Complex(std::cos(theta), -std::sin(theta));
        const Complex s = 2.0 * (1.0 - zeta) / ((1.0 + zeta) * delta);
        samples[static_cast<std::size_t>(l)] = evaluate_symbol(symbol, s);
    }
    std::vector<Complex> weights(static_cast<std::size_t>(count));
    std::vector<Complex> terms(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        for (int l = 0; l < count; ++l) {
            const double theta = 2.0 * std::numbers::pi * l * j / count;
            terms[static_cast<std::size_t>(l)] =
                samples[static_cast<std::size_t>(l)] *
                Complex(std::cos(theta), std::sin(theta));
        }
        weights[static_cast<std::size_t>(j)] =
            std::pow(lambda, -j) / count * pairwise_sum(terms);
    }
    return weights;
}

}  // namespace gcq
