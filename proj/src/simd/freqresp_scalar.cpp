#include "stripgain/simd/freqresp.hpp"

namespace stripgain::simd::detail {

// Reference kernel: complex Horner for numerator and denominator, then one
// complex division. The vector variants must agree with it to rounding.
void eval_rational_scalar(const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                          std::span<double> im) {
    const std::size_t nn = g.num.size();
    const std::size_t nd = g.den.size();
    for (std::size_t k = 0; k < omega.size(); ++k) {
        const double w = omega[k];
        double nr = g.num[nn - 1];
        double ni = 0.0;
        for (std::size_t j = nn - 1; j-- > 0;) {
            const double r = nr * g.sigma - ni * w + g.num[j];
            ni = nr * w + ni * g.sigma;
            nr = r;
        }
        double dr = g.den[nd - 1];
        double di = 0.0;
        for (std::size_t j = nd - 1; j-- > 0;) {
            const double r = dr * g.sigma - di * w + g.den[j];
            di = dr * w + di * g.sigma;
            dr = r;
        }
        const double mag = dr * dr + di * di;
        re[k] = (nr * dr + ni * di) / mag;
        im[k] = (ni * dr - nr * di) / mag;
    }
}

}  // namespace stripgain::simd::detail
