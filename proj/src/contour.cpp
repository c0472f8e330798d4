#include "gcq/contour.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gcq/elliptic.hpp"
#include "gcq/summation.hpp"

namespace gcq {

namespace {

struct ShiftedJacobi {
    Complex sn, cn, dn;
};

// Jacobi functions at sigma + i K'/2, reduced to real-argument values via
// the addition theorem with sn(iK'/2) = i/sqrt(k), cn(iK'/2) = sqrt((1+k)/k),
// dn(iK'/2) = sqrt(1+k).
ShiftedJacobi shifted_jacobi(double sigma, double k, EllipticParameter m) {
    const auto [sn, cn, dn] = jacobi_sn_cn_dn(sigma, m);
    const double denom = 1.0 + k * sn * sn;
    const double sk = std::sqrt(k);
    ShiftedJacobi out;
    out.sn = Complex((1.0 + k) * sn, cn * dn) / (sk * denom);
    out.cn = std::sqrt((1.0 + k) / k) * Complex(cn, -sn * dn) / denom;
    out.dn = std::sqrt(1.0 + k) * Complex(dn, -k * sn * cn) / denom;
    return out;
}

struct PoleRange {
    double lo;
    double hi;
};

// Real poles the stepper can produce, bounded through the step extremes.
PoleRange stepper_pole_range(StepperKind kind, const MeshStats& stats) {
    switch (kind) {
        case StepperKind::Trapezoidal:
            return {2.0 / stats.delta_max, 2.0 / stats.delta_min};
        case StepperKind::BDF2:
            // A_n in (Delta_n / 2, Delta_n), so 1/A_n in (1/Delta_n, 2/Delta_n).
            return {1.0 / stats.delta_max, 2.0 / stats.delta_min};
        case StepperKind::BDF1:
            return {1.0 / stats.delta_max, 1.0 / stats.delta_min};
    }
    throw std::logic_error("unknown stepper kind");
}

}  // namespace

int default_node_count(int N) {
    if (N < 1) throw std::invalid_argument("node-count rule needs N >= 1");
    if (N == 1) return 16;
    const double l = std::log2(static_cast<double>(N));
    return static_cast<int>(std::ceil(N * l * l));
}

std::pair<Complex, Complex> gamma_point_and_derivative(double sigma,
                                                       const ContourParams& params) {
    const double k = params.k;
    const auto j = shifted_jacobi(sigma, k, EllipticParameter(params.m));
    const double root = std::sqrt(2.0 * params.q - 1.0);
    const double scale = params.M / (params.q - 1.0);
    const Complex kd = 1.0 / k - j.sn;
    const Complex point = scale * (root * (1.0 / k + j.sn) / kd - 1.0);
    const Complex derivative = scale * root * 2.0 * j.cn * j.dn / (k * kd * kd);
    return {point, derivative};
}

ContourRule build_contour(const MeshStats& stats, int N, StepperKind method,
                          std::optional<int> node_count_override) {
    if (!(stats.delta_min > 0.0) || stats.delta_max < stats.delta_min) {
        throw std::invalid_argument("invalid mesh statistics");
    }
    ContourParams p{};
    p.R = stepper_radius_constant(method);
    p.M = p.R * std::max(1.0 / (stats.delta_max * stats.delta_max),
                         1.0 / stats.delta_min);
    p.q = p.M / stats.delta_min;
    if (!(p.q > 1.0)) {
        throw std::invalid_argument("degenerate mesh: contour ratio q must exceed 1");
    }
    const double root = std::sqrt(2.0 * p.q - 1.0);
    p.k = (p.q - root) / (p.q + root);
    p.m = p.k * p.k;
    p.K_m = complete_elliptic_k(EllipticParameter(p.m));
    p.Kp_m = complete_elliptic_k(EllipticParameter(1.0 - p.m));
    p.node_count = node_count_override ? *node_count_override : default_node_count(N);
    if (p.node_count < 1) throw std::invalid_argument("node count must be positive");

    const auto poles = stepper_pole_range(method, stats);
    if (!(poles.lo > 0.0) || !(poles.hi < 2.0 * p.M)) {
        throw std::invalid_argument("stepper poles do not fit inside the contour");
    }

    ContourRule rule;
    rule.params = p;
    rule.nodes.resize(static_cast<std::size_t>(p.node_count));
    rule.weights.resize(static_cast<std::size_t>(p.node_count));
    // prefactor 4K/(2*pi*i*N_Q)
    const Complex prefactor =
        4.0 * p.K_m / (2.0 * std::numbers::pi * p.node_count) * Complex(0.0, -1.0);
    for (int l = 1; l <= p.node_count; ++l) {
        const double sigma = -p.K_m + (l - 0.5) * 4.0 * p.K_m / p.node_count;
        const auto [point, derivative] = gamma_point_and_derivative(sigma, p);
        // Project onto the circle through the half-angle form
        // M (1 + e^{i theta}) = 2 M cos(theta/2) e^{i theta/2}: keeps the
        // membership exact and the real part strictly positive even for
        // the nodes crowding the origin at large q.
        const Complex z = point - p.M;
        const double half = std::atan2(z.imag(), z.real()) / 2.0;
        const double c = std::cos(half);
        rule.nodes[static_cast<std::size_t>(l - 1)] =
            2.0 * p.M * c * Complex(c, std::sin(half));
        rule.weights[static_cast<std::size_t>(l - 1)] = prefactor * derivative;
    }

    // Enforce exact conjugate pairing (l <-> N_Q+1-l); the parametrization
    // gives it up to elliptic-evaluation noise, consumers rely on it exactly.
    for (int l = 0; l < p.node_count / 2; ++l) {
        const auto lo = static_cast<std::size_t>(l);
        const auto hi = static_cast<std::size_t>(p.node_count - 1 - l);
        rule.nodes[lo] = (rule.nodes[lo] + std::conj(rule.nodes[hi])) / 2.0;
        rule.nodes[hi] = std::conj(rule.nodes[lo]);
        rule.weights[lo] = (rule.weights[lo] + std::conj(rule.weights[hi])) / 2.0;
        rule.weights[hi] = std::conj(rule.weights[lo]);
    }
    if (p.node_count % 2 == 1) {
        const auto mid = static_cast<std::size_t>(p.node_count / 2);
        rule.nodes[mid] = Complex(rule.nodes[mid].real(), 0.0);
        rule.weights[mid] = Complex(rule.weights[mid].real(), 0.0);
    }

    // Fix the orientation once: the discrete Cauchy sum at the center must
    // approximate +1.
    std::vector<Complex> probe(rule.nodes.size());
    for (std::size_t l = 0; l < rule.nodes.size(); ++l) {
        probe[l] = rule.weights[l] / (rule.nodes[l] - p.M);
    }
    if (pairwise_sum(probe).real() < 0.0) {
        for (auto& w : rule.weights) w = -w;
    }

    for (const auto& s : rule.nodes) {
        if (!(s.real() > 0.0) || std::abs(std::abs(s - p.M) - p.M) > 1e-9 * p.M) {
            throw std::logic_error("contour node off the circle");
        }
    }
    return rule;
}

Complex cauchy_validate(const ContourRule& rule, Complex pole) {
    const double M = rule.params.M;
    if (!(std::abs(pole - M) < M)) {
        throw std::invalid_argument("cauchy_validate: pole not strictly inside the circle");
    }
    std::vector<Complex> terms(rule.nodes.size());
    for (std::size_t l = 0; l < rule.nodes.size(); ++l) {
        terms[l] = rule.weights[l] / (rule.nodes[l] - pole);
    }
    return pairwise_sum(terms);
}

}  // namespace gcq
