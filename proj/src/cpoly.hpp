#pragma once

// Complex-coefficient polynomial helpers used internally for partial fractions
// and term recombination. Ascending coefficients, no trimming.

#include <complex>
#include <span>
#include <vector>

namespace stripgain::detail {

using CPoly = std::vector<std::complex<double>>;

inline CPoly cmul(const CPoly& a, const CPoly& b) {
    CPoly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

inline void cadd_into(CPoly& acc, const CPoly& p, std::complex<double> scale = 1.0) {
    if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += scale * p[i];
}

inline std::complex<double> ceval(const CPoly& p, std::complex<double> s) {
    std::complex<double> acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + *it;
    return acc;
}

/// prod (s - r_k)
inline CPoly cfrom_roots(std::span<const std::complex<double>> roots) {
    CPoly out{1.0};
    for (const auto& r : roots) out = cmul(out, CPoly{-r, 1.0});
    return out;
}

/// (s - r)^m
inline CPoly cpow_linear(std::complex<double> r, int m) {
    CPoly out{1.0};
    for (int k = 0; k < m; ++k) out = cmul(out, CPoly{-r, 1.0});
    return out;
}

/// Coefficients of p(a + z) in powers of z (Taylor coefficients at a).
inline CPoly ctaylor(CPoly p, std::complex<double> a) {
    const std::size_t n = p.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t j = n - 1; j > k; --j) p[j - 1] += a * p[j];
    }
    return p;
}

}  // namespace stripgain::detail
