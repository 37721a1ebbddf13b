#pragma once

#include <functional>

namespace stripgain {

/// Adaptive Simpson on [a, b] with absolute tolerance `tol`.
[[nodiscard]] double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                                      int max_depth = 50);

/// Integral over the whole real line of an integrand decaying at least like
/// c / x^2, via the substitution x = tan(theta) on (-pi/2, pi/2).
[[nodiscard]] double integrate_real_line(const std::function<double(double)>& f, double tol);

}  // namespace stripgain
