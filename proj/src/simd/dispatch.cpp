#include <algorithm>
#include <cstdlib>
#include <string_view>
#include <thread>
#include <vector>

#include "stripgain/error.hpp"
#include "stripgain/simd/freqresp.hpp"

namespace stripgain::simd {

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "scalar";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa detect_isa() noexcept {
    if (const char* forced = std::getenv("STRIPGAIN_ISA"); forced && std::string_view(forced) == "scalar") {
        return Isa::scalar;
    }
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

void eval_rational(Isa isa, const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                   std::span<double> im) {
    if (g.num.empty() || g.den.empty()) fail(ErrorKind::InvalidInput, "empty coefficient list");
    if (re.size() < omega.size() || im.size() < omega.size()) fail(ErrorKind::InvalidInput, "output too short");
    if (!isa_available(isa)) fail(ErrorKind::Unsupported, std::string("instruction set not available: ") + std::string(to_string(isa)));
    switch (isa) {
        case Isa::scalar: detail::eval_rational_scalar(g, omega, re, im); return;
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2: detail::eval_rational_avx2(g, omega, re, im); return;
#endif
#if defined(__aarch64__)
        case Isa::neon: detail::eval_rational_neon(g, omega, re, im); return;
#endif
        default: detail::eval_rational_scalar(g, omega, re, im); return;
    }
}

namespace {

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("STRIPGAIN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
    }
    return n;
}

}  // namespace

void eval_rational(const RationalBatch& g, std::span<const double> omega, std::span<double> re,
                   std::span<double> im) {
    constexpr std::size_t min_chunk = 4096;
    const Isa isa = detect_isa();
    const std::size_t n = omega.size();
    const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, n / min_chunk));
    if (workers <= 1) {
        eval_rational(isa, g, omega, re, im);
        return;
    }
    // Each worker owns a disjoint slice of the output, so the result does not
    // depend on scheduling.
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t len = std::min(chunk, n - std::min(n, begin));
        if (len == 0) break;
        pool.emplace_back([=] { eval_rational(isa, g, omega.subspan(begin, len), re.subspan(begin, len), im.subspan(begin, len)); });
    }
}

}  // namespace stripgain::simd
