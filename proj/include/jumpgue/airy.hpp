#pragma once

namespace jumpgue {

struct AiryValue {
  double x = 0.0;
  double ai = 0.0;   // Ai(x)
  double aip = 0.0;  // Ai'(x)
};

/// Ai and Ai' on the real line.
///
/// Accuracy: relative 1e-12 on [0, 12], absolute 1e-15 beyond 12 (where the
/// values underflow toward zero) and absolute 1e-10 for x < 0.
AiryValue airy_ai(double x) noexcept;

/// Exponentially scaled values for x >= 0: ai = Ai(x)·e^ζ, aip = Ai'(x)·e^ζ
/// with ζ = (2/3)x^{3/2}. Used where Ai(x)² would underflow.
struct ScaledAiry {
  double x = 0.0;
  double zeta = 0.0;
  double ai = 0.0;
  double aip = 0.0;
};

ScaledAiry airy_ai_scaled(double x) noexcept;

}  // namespace jumpgue
