// Compiled with -mavx2 -mfma; only reached when the CPU reports both.
#include "stripgain/simd/freqresp.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace stripgain::simd::detail {

namespace {

struct Lanes {
    __m256d re;
    __m256d im;
};

inline Lanes horner(std::span<const double> c, __m256d sigma, __m256d w) {
    const std::size_t n = c.size();
    __m256d pr = _mm256_set1_pd(c[n - 1]);
    __m256d pi = _mm256_setzero_pd();
    for (std::size_t j = n - 1; j-- > 0;) {
        const __m256d r = _mm256_fmadd_pd(pr, sigma, _mm256_fnmadd_pd(pi, w, _mm256_set1_pd(c[j])));
        pi = _mm256_fmadd_pd(pr, w, _mm256_mul_pd(pi, sigma));
        pr = r;
    }
    return {pr, pi};
}

}  // namespace

void eval_rational_avx2(const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                        std::span<double> im) {
    const __m256d sigma = _mm256_set1_pd(g.sigma);
    const std::size_t n = omega.size();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d w = _mm256_loadu_pd(omega.data() + k);
        const Lanes num = horner(g.num, sigma, w);
        const Lanes den = horner(g.den, sigma, w);
        const __m256d mag = _mm256_fmadd_pd(den.re, den.re, _mm256_mul_pd(den.im, den.im));
        const __m256d xr = _mm256_fmadd_pd(num.re, den.re, _mm256_mul_pd(num.im, den.im));
        const __m256d xi = _mm256_fmsub_pd(num.im, den.re, _mm256_mul_pd(num.re, den.im));
        _mm256_storeu_pd(re.data() + k, _mm256_div_pd(xr, mag));
        _mm256_storeu_pd(im.data() + k, _mm256_div_pd(xi, mag));
    }
    if (k < n) eval_rational_scalar(g, omega.subspan(k), re.subspan(k), im.subspan(k));
}

}  // namespace stripgain::simd::detail

#endif
