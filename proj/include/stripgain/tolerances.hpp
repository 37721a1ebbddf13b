#pragma once

// Numerical thresholds shared by all modules. Kernels sit at least two
// digits tighter than the 1e-6 bisection tolerance used downstream.
namespace stripgain::tol {

inline constexpr double root = 1e-8;        // |p(r)| <= root * (1 + ||coeffs||)
inline constexpr double gcd = 1e-9;         // common-root cancellation, relative
inline constexpr double eval = 1e-9;        // evaluation agreement, relative
inline constexpr double pole = 1e-9;        // pole proximity: 1e-9 * (1 + |s|)
inline constexpr double line = 1e-8;        // line/strip membership: 1e-8 * (1 + |Re pole|)

inline constexpr double eig = 1e-9;
inline constexpr double sym = 1e-12;
inline constexpr double lyap = 1e-9;
inline constexpr double exp = 1e-10;
inline constexpr double inertia = 1e-8;

inline constexpr double ham = 1e-7;         // imaginary-axis classification, relative to ||H||
inline constexpr double tail = 1e-6;        // weighted-norm window truncation

}  // namespace stripgain::tol
