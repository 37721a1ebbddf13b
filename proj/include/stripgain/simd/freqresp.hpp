#pragma once

#include <span>
#include <string_view>

// Batched evaluation of a real rational function along a vertical line,
// G(sigma + i w_k) for many w_k. This is the hot loop of grid norms,
// strip sampling and Nyquist/Bode output.

namespace stripgain::simd {

enum class Isa { scalar, avx2, neon };

[[nodiscard]] std::string_view to_string(Isa isa) noexcept;

/// Best instruction set supported by the running CPU, unless overridden by
/// STRIPGAIN_ISA=scalar.
[[nodiscard]] Isa detect_isa() noexcept;
[[nodiscard]] bool isa_available(Isa isa) noexcept;

struct RationalBatch {
    std::span<const double> num;  // ascending coefficients
    std::span<const double> den;
    double sigma = 0.0;
};

/// re[k] + i im[k] = num(s_k) / den(s_k) with s_k = sigma + i omega[k].
void eval_rational(Isa isa, const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                   std::span<double> im);

/// Dispatches on detect_isa() and splits the batch over STRIPGAIN_THREADS workers.
void eval_rational(const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                   std::span<double> im);

namespace detail {
void eval_rational_scalar(const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                          std::span<double> im);
void eval_rational_avx2(const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                        std::span<double> im);
void eval_rational_neon(const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                        std::span<double> im);
}  // namespace detail

}  // namespace stripgain::simd
