// AArch64 Advanced SIMD variant, two lanes of double.
#include "stripgain/simd/freqresp.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace stripgain::simd::detail {

namespace {

struct Lanes {
    float64x2_t re;
    float64x2_t im;
};

inline Lanes horner(std::span<const double> c, float64x2_t sigma, float64x2_t w) {
    const std::size_t n = c.size();
    float64x2_t pr = vdupq_n_f64(c[n - 1]);
    float64x2_t pi = vdupq_n_f64(0.0);
    for (std::size_t j = n - 1; j-- > 0;) {
        const float64x2_t r = vfmaq_f64(vfmsq_f64(vdupq_n_f64(c[j]), pi, w), pr, sigma);
        pi = vfmaq_f64(vmulq_f64(pi, sigma), pr, w);
        pr = r;
    }
    return {pr, pi};
}

}  // namespace

void eval_rational_neon(const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                        std::span<double> im) {
    const float64x2_t sigma = vdupq_n_f64(g.sigma);
    const std::size_t n = omega.size();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t w = vld1q_f64(omega.data() + k);
        const Lanes num = horner(g.num, sigma, w);
        const Lanes den = horner(g.den, sigma, w);
        const float64x2_t mag = vfmaq_f64(vmulq_f64(den.im, den.im), den.re, den.re);
        const float64x2_t xr = vfmaq_f64(vmulq_f64(num.im, den.im), num.re, den.re);
        const float64x2_t xi = vfmsq_f64(vmulq_f64(num.im, den.re), num.re, den.im);
        vst1q_f64(re.data() + k, vdivq_f64(xr, mag));
        vst1q_f64(im.data() + k, vdivq_f64(xi, mag));
    }
    if (k < n) eval_rational_scalar(g, omega.subspan(k), re.subspan(k), im.subspan(k));
}

}  // namespace stripgain::simd::detail

#endif
