#pragma once

namespace gcq {

/// Underlying one-step method of the generalized convolution quadrature.
/// BDF1 is kept as a first-order baseline.
enum class StepperKind { Trapezoidal, BDF2, BDF1 };

/// Safety constant R scaling the contour circle so the steppers' real
/// poles stay inside it.
constexpr double stepper_radius_constant(StepperKind kind) {
    switch (kind) {
        case StepperKind::BDF1: return 1.0;
        case StepperKind::BDF2: return 1.5;
        case StepperKind::Trapezoidal: return 2.0;
    }
    return 1.0;
}

}  // namespace gcq
