#include "gcq/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gcq/errors.hpp"
#include "gcq/summation.hpp"

namespace gcq {

namespace {

constexpr double kDistinctTol = 1e-12;

bool coincident(Complex a, Complex b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) <= kDistinctTol * scale;
}

Complex finite_or_throw(Complex v, Complex at, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw EvaluationError(what, at);
    }
    return v;
}

}  // namespace

PointSet::PointSet(std::vector<Complex> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("point set must be nonempty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (std::size_t l = i + 1; l < points_.size(); ++l) {
            if (coincident(points_[i], points_[l])) {
                throw std::invalid_argument(
                    "point set has coincident points (confluent case unsupported)");
            }
        }
    }
}

PointSet PointSet::slice(std::size_t first, std::size_t last) const {
    if (first > last || last >= points_.size()) {
        throw std::invalid_argument("bad point-set slice");
    }
    return PointSet(std::vector<Complex>(points_.begin() + static_cast<long>(first),
                                         points_.begin() + static_cast<long>(last) + 1));
}

Complex divided_difference(const PointSet& points, const ComplexFn& f) {
    std::vector<Complex> x = points.points();
    std::sort(x.begin(), x.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<Complex> table(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        table[i] = finite_or_throw(f(x[i]), x[i], "divided difference operand");
    }
    // table[i] holds [x_i..x_{i+level}]f after pass `level`
    for (std::size_t level = 1; level < x.size(); ++level) {
        for (std::size_t i = 0; i + level < x.size(); ++i) {
            table[i] = (table[i] - table[i + 1]) / (x[i] - x[i + level]);
        }
    }
    return table[0];
}

Complex modified_divided_difference(const PointSet& points, const ComplexFn& f) {
    const std::size_t n = points.size() - 1;
    if (n == 0) {
        return finite_or_throw(f(points[0]), points[0], "divided difference operand");
    }
    const auto& pts = points.points();
    auto augmented = [&](Complex x) {
        Complex v = f(x);
        for (std::size_t k = 2; k <= n; ++k) v *= pts[k] + x;
        return v;
    };
    return (pts[0] + pts[1]) * divided_difference(points, augmented);
}

WeightTable::WeightTable(int N, std::string symbol_label)
    : N_(N), label_(std::move(symbol_label)) {
    if (N < 1) throw std::invalid_argument("weight table needs N >= 1");
    entries_.resize(static_cast<std::size_t>(N) * (static_cast<std::size_t>(N) + 1) / 2);
}

std::size_t WeightTable::index(int n, int j) const {
    if (n < 1 || n > N_ || j < 1 || j > n) {
        throw std::out_of_range("weight table index requires 1 <= j <= n <= N");
    }
    return static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n) / 2 +
           static_cast<std::size_t>(j - 1);
}

Complex WeightTable::at(int n, int j) const { return entries_[index(n, j)]; }

void WeightTable::set(int n, int j, Complex w) { entries_[index(n, j)] = w; }

namespace {

/// G_j^n(s) = prod_{k=j+2}^n (2/Delta_k + s) / prod_{k=j}^n (2/Delta_k - s)
Complex rational_kernel(const TimeMesh& mesh, int n, int j, Complex s) {
    Complex value{1.0, 0.0};
    for (int k = j + 2; k <= n; ++k) value *= 2.0 / mesh.step(k) + s;
    for (int k = j; k <= n; ++k) value /= 2.0 / mesh.step(k) - s;
    return value;
}

double coefficient_djn(const TimeMesh& mesh, int n, int j) {
    return j < n ? 2.0 * (1.0 / mesh.step(j) + 1.0 / mesh.step(j + 1)) : 1.0;
}

/// The defining integral runs over the negatively oriented contour; the
/// rule's weights are normalized for the positive orientation, hence the
/// leading minus. The contour touches the origin, where a simple pole of
/// the symbol contributes exactly half its residue to the rule; that half
/// is subtracted (the weight integral encloses the stepper poles only).
Complex weight_from_samples(const TimeMesh& mesh, int n, int j,
                            const ContourRule& contour,
                            const std::vector<Complex>& symbol_times_weight,
                            Complex origin_residue) {
    std::vector<Complex> terms(contour.nodes.size());
    for (std::size_t l = 0; l < contour.nodes.size(); ++l) {
        terms[l] = symbol_times_weight[l] * rational_kernel(mesh, n, j, contour.nodes[l]);
    }
    const Complex sum = pairwise_sum(terms) -
                        0.5 * origin_residue * rational_kernel(mesh, n, j, Complex{});
    return -coefficient_djn(mesh, n, j) * sum;
}

std::vector<Complex> sample_symbol(const TransferSymbol& symbol,
                                   const ContourRule& contour) {
    std::vector<Complex> out(contour.nodes.size());
    for (std::size_t l = 0; l < contour.nodes.size(); ++l) {
        out[l] = contour.weights[l] * evaluate_symbol(symbol, contour.nodes[l]);
    }
    return out;
}

}  // namespace

Complex gcq_weight(const TransferSymbol& symbol, const TimeMesh& mesh, int n,
                   int j, const ContourRule& contour) {
    if (j < 1 || n > mesh.step_count() || j > n) {
        throw std::invalid_argument("weight indices require 1 <= j <= n <= N");
    }
    return weight_from_samples(mesh, n, j, contour, sample_symbol(symbol, contour),
                               residue_at_origin(symbol));
}

std::optional<Complex> gcq_weight_divdiff(const TransferSymbol& symbol,
                                          const TimeMesh& mesh, int n, int j) {
    if (j < 1 || n > mesh.step_count() || j > n) {
        throw std::invalid_argument("weight indices require 1 <= j <= n <= N");
    }
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n - j) + 1);
    for (int k = j; k <= n; ++k) pts.emplace_back(2.0 / mesh.step(k), 0.0);
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (coincident(pts[a], pts[b])) return std::nullopt;
        }
    }
    const Complex dd = modified_divided_difference(
        PointSet(std::move(pts)), [&](Complex s) { return symbol.evaluator(s); });
    const double sign = (n - j) % 2 == 0 ? 1.0 : -1.0;
    return sign * dd;
}

WeightTable build_weight_table(const TransferSymbol& symbol, const TimeMesh& mesh,
                               const ContourRule& contour) {
    const int N = mesh.step_count();
    WeightTable table(N, symbol.label);
    const auto samples = sample_symbol(symbol, contour);
    const Complex c0 = residue_at_origin(symbol);
    for (int n = 1; n <= N; ++n) {
        for (int j = 1; j <= n; ++j) {
            table.set(n, j, weight_from_samples(mesh, n, j, contour, samples, c0));
        }
    }
    return table;
}

double leibniz_check(const PointSet& points, const ComplexFn& f,
                     const ComplexFn& g) {
    const std::size_t n = points.size() - 1;
    const Complex lhs = modified_divided_difference(
        points, [&](Complex x) { return f(x) * g(x); });
    Complex rhs{0.0, 0.0};
    for (std::size_t k = 0; k <= n; ++k) {
        rhs += modified_divided_difference(points.slice(0, k), f) *
               modified_divided_difference(points.slice(k, n), g);
    }
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

double inversion_check(const PointSet& points, const TransferSymbol& symbol,
                       const std::vector<Complex>& g) {
    const std::size_t n = points.size() - 1;
    if (g.size() != points.size()) {
        throw std::invalid_argument("data length must match the point count");
    }
    const ComplexFn forward = [&](Complex s) {
        return finite_or_throw(symbol.evaluator(s), s, "symbol");
    };
    const ComplexFn inverse = [&](Complex s) {
        return finite_or_throw(1.0 / symbol.evaluator(s), s, "reciprocal symbol");
    };
    // forward sum: phi_m = sum_{j<=m} (-1)^{m-j+1} g_j <x_j..x_m>K
    std::vector<Complex> phi(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j <= m; ++j) {
            const double sign = (m - j) % 2 == 0 ? -1.0 : 1.0;
            acc += sign * g[j] *
                   modified_divided_difference(points.slice(j, m), forward);
        }
        phi[m] = acc;
    }
    // inverse sum with 1/K must reproduce g
    double scale = 1.0;
    for (const auto& v : g) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t m = 0; m <= n; ++m) {
        Complex acc{0.0, 0.0};
        for (std::size_t l = 0; l <= m; ++l) {
            const double sign = (m - l) % 2 == 0 ? -1.0 : 1.0;
            acc += sign * phi[l] *
                   modified_divided_difference(points.slice(l, m), inverse);
        }
        worst = std::max(worst, std::abs(acc - g[m]));
    }
    return worst / scale;
}

double paired_midpoint_rule(const std::function<double(double)>& f,
                            const TimeMesh& mesh) {
    const auto& t = mesh.points();
    const int n = mesh.step_count();
    if (std::abs(f(t.front())) > 1e-12 || std::abs(f(t.back())) > 1e-12) {
        throw std::invalid_argument(
            "paired-midpoint rule requires f to vanish at both endpoints");
    }
    double acc = 0.0;
    for (int j = 1; j <= n - 1; ++j) {
        const double span = t[static_cast<std::size_t>(j + 1)] -
                            t[static_cast<std::size_t>(j - 1)];
        const double mid = (t[static_cast<std::size_t>(j + 1)] +
                            t[static_cast<std::size_t>(j - 1)]) /
                           2.0;
        acc += span / 2.0 * f(mid);
    }
    return acc;
}

double weight_midpoint_gap(const TransferSymbol& symbol,
                           const std::function<double(double)>& kappa,
                           const TimeMesh& mesh, int n, int j,
                           const ContourRule& contour) {
    if (j >= n) {
        throw std::invalid_argument("midpoint comparison needs j <= n-1");
    }
    const auto& t = mesh.points();
    const Complex w = gcq_weight(symbol, mesh, n, j, contour);
    const double span = t[static_cast<std::size_t>(j + 1)] -
                        t[static_cast<std::size_t>(j - 1)];
    const double mid = (t[static_cast<std::size_t>(j - 1)] +
                        t[static_cast<std::size_t>(j + 1)]) /
                       2.0;
    const double term = span / 2.0 *
                        kappa(t[static_cast<std::size_t>(n)] - mid);
    return std::abs(w - term);
}

}  // namespace gcq
