#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gcq {

/// A transfer symbol produced a non-finite value (or hit a zero of the
/// symbol during inversion) at a specific point s.
class EvaluationError : public std::runtime_error {
  public:
    EvaluationError(const std::string& what, std::complex<double> s)
        : std::runtime_error(what + " at s = (" + std::to_string(s.real()) + ", " +
                             std::to_string(s.imag()) + ")"),
          point_(s) {}

    [[nodiscard]] std::complex<double> point() const noexcept { return point_; }

  private:
    std::complex<double> point_;
};

/// The scalar solve of a backward step hit a (near-)zero pivot K(pole).
class SingularSolveError : public std::runtime_error {
  public:
    SingularSolveError(const std::string& what, int step)
        : std::runtime_error(what + " at time step " + std::to_string(step)),
          step_(step) {}

    [[nodiscard]] int step() const noexcept { return step_; }

  private:
    int step_;
};

}  // namespace gcq
