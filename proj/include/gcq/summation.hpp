#pragma once

#include <complex>
#include <span>

namespace gcq {

/// Balanced-tree (pairwise) summation; bounds rounding growth for the
/// long mixed-magnitude contour sums without data-dependent branching.
inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> terms) {
    if (terms.size() <= 8) {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& t : terms) acc += t;
        return acc;
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace gcq
