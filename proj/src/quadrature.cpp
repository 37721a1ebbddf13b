#include "stripgain/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stripgain {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    // Fixed pre-split so narrow peaks are seen by at least one panel.
    constexpr int panels = 16;
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * h;
        const double hi = (k + 1 == panels) ? b : lo + h;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fm = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        total += simpson_step(f, lo, hi, flo, fm, fhi, whole, tol / panels, max_depth);
    }
    return total;
}

double integrate_real_line(const std::function<double(double)>& f, double tol) {
    // x = tan(theta); an integrand ~ c/x^2 becomes bounded at theta = +-pi/2.
    static constexpr double edge = std::numbers::pi / 2.0 - 1e-9;
    auto g = [&f](double theta) {
        const double t = std::clamp(theta, -edge, edge);
        const double c = std::cos(t);
        return f(std::tan(t)) / (c * c);
    };
    return adaptive_simpson(g, -std::numbers::pi / 2.0, std::numbers::pi / 2.0, tol);
}

}  // namespace stripgain
