#pragma once

// Reference computations that share no numerics with the library: plain
// Horner evaluation, Durand-Kerner roots, dense sampling and composite
// Simpson integration. Used to check the engines from the outside.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using coeffs = std::vector<double>;  // ascending powers

inline cplx horner(const coeffs& c, cplx s) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
}

inline cplx ratio(const coeffs& num, const coeffs& den, cplx s) { return horner(num, s) / horner(den, s); }

inline coeffs multiply(const coeffs& a, const coeffs& b) {
    coeffs out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// Monic real polynomial with the given roots (complex ones are paired with their conjugate).
inline coeffs poly_from(const std::vector<double>& real_roots, const std::vector<cplx>& upper_roots = {}) {
    coeffs p{1.0};
    for (double r : real_roots) p = multiply(p, {-r, 1.0});
    for (cplx z : upper_roots) p = multiply(p, {std::norm(z), -2.0 * z.real(), 1.0});
    return p;
}

/// Durand-Kerner simultaneous iteration.
inline std::vector<cplx> roots(coeffs c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    const std::size_t n = c.size() - 1;
    if (n == 0) return {};
    const double lead = c.back();
    for (double& v : c) v /= lead;
    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
    radius += 1.0;
    std::vector<cplx> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(0.9 * radius, 0.4 + 2.0 * std::numbers::pi * k / n);
    for (int iter = 0; iter < 5000; ++iter) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx denom = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            const cplx step = horner(c, z[i]) / denom;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-15) break;
    }
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
    return z;
}

/// sup over w of |G(sigma + i w)| by dense sampling on [0, w_max] followed by
/// ternary refinement of the best few samples. A lower bound that is tight
/// for smooth peaks.
inline double line_sup(const coeffs& num, const coeffs& den, double sigma, double* arg = nullptr) {
    auto mag = [&](double w) { return std::abs(ratio(num, den, cplx(sigma, w))); };
    std::vector<double> ws;
    for (int k = 0; k <= 20000; ++k) ws.push_back(1e-4 * std::pow(1e8, k / 20000.0));
    ws.push_back(0.0);
    std::sort(ws.begin(), ws.end());
    std::vector<double> vals(ws.size());
    for (std::size_t k = 0; k < ws.size(); ++k) vals[k] = mag(ws[k]);
    double best = 0.0;
    double best_w = 0.0;
    for (std::size_t k = 0; k < ws.size(); ++k) {
        const bool peak = (k == 0 || vals[k] >= vals[k - 1]) && (k + 1 == ws.size() || vals[k] >= vals[k + 1]);
        if (!peak) continue;
        double a = k == 0 ? ws[0] : ws[k - 1];
        double b = k + 1 == ws.size() ? ws[k] : ws[k + 1];
        for (int it = 0; it < 200; ++it) {
            const double m1 = a + (b - a) / 3.0;
            const double m2 = b - (b - a) / 3.0;
            if (mag(m1) < mag(m2)) a = m1; else b = m2;
        }
        const double w = 0.5 * (a + b);
        const double v = std::max(mag(w), vals[k]);
        if (v > best) {
            best = v;
            best_w = mag(w) >= vals[k] ? w : ws[k];
        }
    }
    // limit at infinity
    const std::size_t dn = den.size() - 1;
    if (num.size() - 1 == dn) {
        const double inf = std::abs(num.back() / den.back());
        if (inf > best) {
            best = inf;
            best_w = std::numeric_limits<double>::infinity();
        }
    }
    if (arg) *arg = best_w;
    return best;
}

/// Composite Simpson with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

/// Random seeded generator of pole sets bounded away from a vertical line.
struct PoleSampler {
    std::mt19937 rng;
    explicit PoleSampler(unsigned seed) : rng(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

    /// Real part in [-span, span] at least `gap` away from `line_re`.
    double real_part(double line_re, double gap, double span = 4.0) {
        for (;;) {
            const double r = uniform(line_re - span, line_re + span);
            if (std::abs(r - line_re) >= gap) return r;
        }
    }

    /// Real part away from the closed band [left, right] by `gap`.
    double real_part_outside(double left, double right, double gap, double span = 4.0) {
        for (;;) {
            const double r = uniform(left - span, right + span);
            if (r < left - gap || r > right + gap) return r;
        }
    }
};

}  // namespace oracle
