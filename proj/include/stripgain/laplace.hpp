#pragma once

#include <limits>
#include <vector>

#include "stripgain/rational.hpp"
#include "stripgain/region.hpp"

namespace stripgain::laplace {

enum class Direction { causal, anticausal };

/// c t^k e^{a t} restricted to t > 0 (causal) or t < 0 (anticausal).
struct SignalTerm {
    Complex coefficient{1.0, 0.0};
    int power = 0;
    Complex exponent{0.0, 0.0};
    Direction direction = Direction::causal;
};

struct SignalSpec {
    std::vector<SignalTerm> terms;
};

/// Region of convergence re_min < Re(s) < re_max; either side may be infinite.
struct Roc {
    double re_min = -std::numeric_limits<double>::infinity();
    double re_max = std::numeric_limits<double>::infinity();

    [[nodiscard]] bool contains(double re) const noexcept { return re > re_min && re < re_max; }
    [[nodiscard]] bool empty() const noexcept { return !(re_min < re_max); }
    friend bool operator==(const Roc&, const Roc&) = default;
};

/// S_Lambda = {Re(s) in (-hi, -lo)}.
[[nodiscard]] Roc to_roc(const Strip& strip);
/// Inverse of to_roc; requires finite bounds with re_max <= 0.
[[nodiscard]] Strip to_strip(const Roc& roc);

struct LaplacePair {
    RationalFunction transform;
    Roc roc;
};

/// Bilateral transform, term by term, over the intersection of the term ROCs.
[[nodiscard]] LaplacePair forward(const SignalSpec& spec);

/// Partial-fraction inversion: poles left of the ROC give causal terms, poles
/// right of it anticausal terms. F must be strictly proper.
[[nodiscard]] SignalSpec inverse(const RationalFunction& f, const Roc& roc);

/// Maximal strips between consecutive distinct pole real parts, left to right.
[[nodiscard]] std::vector<Roc> roc_options(const RationalFunction& f);

/// Real part of the signal at t; at t = 0 each one-sided term contributes half.
[[nodiscard]] double eval_signal(const SignalSpec& spec, double t);

}  // namespace stripgain::laplace
