#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcq/contour.hpp"
#include "gcq/mesh.hpp"
#include "gcq/symbol.hpp"

namespace gcq {

using ComplexFn = std::function<Complex(Complex)>;

/// Ordered set of pairwise-distinct points x_0..x_n. Order matters for the
/// modified divided difference (the prefactor and product pick specific
/// points); classical divided differences are symmetric in the points.
class PointSet {
  public:
    /// Throws std::invalid_argument when two points coincide within a
    /// relative tolerance of 1e-12 (the confluent case is out of scope).
    explicit PointSet(std::vector<Complex> points);

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] Complex operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] const std::vector<Complex>& points() const noexcept {
        return points_;
    }
    /// Sub-range x_first..x_last (inclusive).
    [[nodiscard]] PointSet slice(std::size_t first, std::size_t last) const;

  private:
    std::vector<Complex> points_;
};

/// Classical divided difference [x_0,...,x_n]f by the recursive definition
/// (points sorted internally by real then imaginary part for determinism).
Complex divided_difference(const PointSet& points, const ComplexFn& f);

/// Modified divided difference
///   <x_m,...,x_j>f = (x_m + x_{m+1}) [x_m,...,x_j](f * prod_{k>=m+2}(x_k + .))
/// with <x_j>f = f(x_j) for a single point. Satisfies <x_l..x_n>1 = delta_{ln}.
Complex modified_divided_difference(const PointSet& points, const ComplexFn& f);

/// Lower-triangular table of convolution weights w_{n,j}, 1 <= j <= n <= N.
class WeightTable {
  public:
    WeightTable(int N, std::string symbol_label);

    [[nodiscard]] int size() const noexcept { return N_; }
    [[nodiscard]] Complex at(int n, int j) const;
    void set(int n, int j, Complex w);
    [[nodiscard]] const std::string& symbol_label() const noexcept {
        return label_;
    }

  private:
    [[nodiscard]] std::size_t index(int n, int j) const;
    int N_;
    std::string label_;
    std::vector<Complex> entries_;
};

/// Convolution weight w_{n,j} by contour quadrature of
/// D_j^n K(s) G_j^n(s), with G_j^n the rational kernel of the trapezoidal
/// recursion (poles at 2/Delta_k).
Complex gcq_weight(const TransferSymbol& symbol, const TimeMesh& mesh, int n,
                   int j, const ContourRule& contour);

/// Same weight via the modified divided difference of K at the points
/// 2/Delta_j..2/Delta_n. Returns nullopt when two of those points coincide
/// (the route needs distinct steps); the contour route stays available.
std::optional<Complex> gcq_weight_divdiff(const TransferSymbol& symbol,
                                          const TimeMesh& mesh, int n, int j);

/// All weights w_{n,j} for 1 <= j <= n <= N by the contour route.
WeightTable build_weight_table(const TransferSymbol& symbol, const TimeMesh& mesh,
                               const ContourRule& contour);

/// Residual of the multiplicative rule
///   <x_0..x_n>(fg) = sum_k <x_0..x_k>f <x_k..x_n>g,
/// scaled by max(1, |lhs|).
double leibniz_check(const PointSet& points, const ComplexFn& f,
                     const ComplexFn& g);

/// Applies the forward sum phi_n = sum_j (-1)^{n-j+1} g_j <x_j..x_n>K and
/// then the inverse sum with 1/K; returns max_n |g_rec - g| / max(1, max|g|).
double inversion_check(const PointSet& points, const TransferSymbol& symbol,
                       const std::vector<Complex>& g);

/// Paired-midpoint quadrature
///   sum_{j=1}^{n-1} (t_{j+1}-t_{j-1})/2 * f((t_{j+1}+t_{j-1})/2).
/// Requires f(t_0) = f(t_n) = 0 within 1e-12; throws otherwise.
double paired_midpoint_rule(const std::function<double(double)>& f,
                            const TimeMesh& mesh);

/// |w_{n,j}(K) - (t_{j+1}-t_{j-1})/2 * kappa(t_n - (t_{j-1}+t_{j+1})/2)|
/// for a symbol whose kernel kappa is known in closed form. Requires
/// j <= n-1 (throws std::invalid_argument at j = n).
double weight_midpoint_gap(const TransferSymbol& symbol,
                           const std::function<double(double)>& kappa,
                           const TimeMesh& mesh, int n, int j,
                           const ContourRule& contour);

}  // namespace gcq
