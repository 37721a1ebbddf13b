#pragma once

#include <vector>

#include "stripgain/matrix.hpp"
#include "stripgain/rational.hpp"
#include "stripgain/region.hpp"

namespace stripgain {

/// x' = A x + B u, y = C x + D u. n = 0 (pure feedthrough) is allowed.
struct StateSpace {
    Matrix a;
    Matrix b;
    Matrix c;
    Matrix d;

    StateSpace() = default;
    StateSpace(Matrix a, Matrix b, Matrix c, Matrix d);

    [[nodiscard]] static StateSpace gain(double k);

    [[nodiscard]] int states() const noexcept { return static_cast<int>(a.rows()); }
    [[nodiscard]] int inputs() const noexcept { return static_cast<int>(d.cols()); }
    [[nodiscard]] int outputs() const noexcept { return static_cast<int>(d.rows()); }
    [[nodiscard]] bool is_siso() const noexcept { return inputs() == 1 && outputs() == 1; }

    /// Throws InvalidInput on dimension mismatch or non-finite entries.
    void validate() const;
};

/// Controllable canonical realization of a proper G.
[[nodiscard]] StateSpace realize(const RationalFunction& g);

/// C (sI - A)^{-1} B + D for SISO systems.
[[nodiscard]] RationalFunction tf_of(const StateSpace& ss);

/// C (sI - A)^{-1} B + D evaluated directly.
[[nodiscard]] std::complex<double> frequency_response(const StateSpace& ss, std::complex<double> s);

/// Block-diagonal decomposition about a strip. `plus` carries the modes right
/// of the strip, `minus` the modes left of it; A = T blockdiag(A+, A-) T^{-1}.
struct ModalSplit {
    struct Part {
        Matrix a;
        Matrix b;
        Matrix c;
        [[nodiscard]] int states() const noexcept { return static_cast<int>(a.rows()); }
    };
    Part plus;
    Part minus;
    Matrix t;
    Matrix d;
};

[[nodiscard]] ModalSplit modal_split(const StateSpace& ss, const Strip& strip);
/// Split about a single line Re(s) = -rate (modes on the line are rejected).
[[nodiscard]] ModalSplit modal_split(const StateSpace& ss, const Line& line);

/// Two-sided impulse response consistent with the strip: the left-of-strip modes
/// give the causal part, the right-of-strip modes the anticausal part. At t = 0
/// the midpoint of the two one-sided limits is returned.
[[nodiscard]] double impulse_response(const StateSpace& ss, const Strip& strip, double t);
[[nodiscard]] double impulse_response(const ModalSplit& split, double t);

/// Uniformly sampled scalar signal.
struct SampledSignal {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> samples;

    [[nodiscard]] double time(std::size_t k) const noexcept { return t0 + dt * static_cast<double>(k); }
    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
};

/// y = g * u + D u on the grid of u. The causal modes are stepped forward from
/// rest at the first sample, the anticausal modes backward from rest at the last.
/// Input is treated as piecewise linear between samples and zero outside.
[[nodiscard]] SampledSignal convolve(const StateSpace& ss, const Strip& strip, const SampledSignal& u);

/// sup over rates of (int e^{2 rate t} |f|^2 dt)^{1/2}; rates are the two endpoints
/// plus nine interior points. Trapezoidal rule on the sample grid.
[[nodiscard]] double weighted_l2_norm(const SampledSignal& f, const Strip& strip);
[[nodiscard]] double weighted_l2_norm(const SampledSignal& f, const Line& line);

}  // namespace stripgain
