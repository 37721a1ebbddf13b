#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "stripgain/simd/freqresp.hpp"

using namespace stripgain::simd;

namespace {

struct Batch {
    std::vector<double> num;
    std::vector<double> den;
    std::vector<double> omega;
};

Batch random_batch(std::mt19937& rng, std::size_t points) {
    std::uniform_real_distribution<double> u(-2, 2);
    Batch b;
    b.num.resize(1 + rng() % 6);
    b.den.resize(b.num.size() + rng() % 3);
    for (double& c : b.num) c = u(rng);
    for (double& c : b.den) c = u(rng);
    b.den.back() = 1.0;
    for (std::size_t k = 0; k < points; ++k) b.omega.push_back(std::pow(10.0, -3 + 6.0 * k / points) * (k % 2 ? 1 : -1));
    return b;
}

}  // namespace

TEST_CASE("scalar kernel matches direct complex evaluation") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto b = random_batch(rng, 37);
        std::vector<double> re(b.omega.size());
        std::vector<double> im(b.omega.size());
        eval_rational(Isa::scalar, {b.num, b.den, -0.3}, b.omega, re, im);
        for (std::size_t k = 0; k < b.omega.size(); ++k) {
            const auto want = oracle::ratio(b.num, b.den, {-0.3, b.omega[k]});
            CHECK(std::abs(std::complex<double>(re[k], im[k]) - want) <= 1e-12 * (1 + std::abs(want)));
        }
    }
}

TEST_CASE("vector kernels agree with the scalar reference") {
    std::mt19937 rng(2);
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (!isa_available(isa)) continue;
        for (int trial = 0; trial < 50; ++trial) {
            const auto b = random_batch(rng, 1 + rng() % 67);
            const std::size_t n = b.omega.size();
            std::vector<double> re0(n), im0(n), re1(n), im1(n);
            const RationalBatch g{b.num, b.den, 0.25 * (trial % 5)};
            eval_rational(Isa::scalar, g, b.omega, re0, im0);
            eval_rational(isa, g, b.omega, re1, im1);
            for (std::size_t k = 0; k < n; ++k) {
                const double scale = 1 + std::hypot(re0[k], im0[k]);
                CHECK(std::abs(re0[k] - re1[k]) <= 1e-13 * scale);
                CHECK(std::abs(im0[k] - im1[k]) <= 1e-13 * scale);
            }
        }
    }
}

TEST_CASE("dispatched and threaded evaluation is order independent") {
    std::mt19937 rng(3);
    const auto b = random_batch(rng, 20000);
    const std::size_t n = b.omega.size();
    std::vector<double> re0(n), im0(n), re1(n), im1(n);
    const RationalBatch g{b.num, b.den, 0.1};
    eval_rational(detect_isa(), g, b.omega, re0, im0);
    setenv("STRIPGAIN_THREADS", "4", 1);
    eval_rational(g, b.omega, re1, im1);
    unsetenv("STRIPGAIN_THREADS");
    CHECK(re0 == re1);
    CHECK(im0 == im1);
}

TEST_CASE("isa override") {
    setenv("STRIPGAIN_ISA", "scalar", 1);
    CHECK(detect_isa() == Isa::scalar);
    unsetenv("STRIPGAIN_ISA");
    CHECK(isa_available(Isa::scalar));
    CHECK(to_string(Isa::avx2) == "avx2");
}
