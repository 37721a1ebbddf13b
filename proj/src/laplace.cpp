#include "stripgain/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "stripgain/error.hpp"
#include "stripgain/tolerances.hpp"

namespace stripgain::laplace {

namespace {

double factorial(int k) {
    double out = 1.0;
    for (int j = 2; j <= k; ++j) out *= j;
    return out;
}

bool same_pole(Complex a, Complex b) { return std::abs(a - b) <= tol::pole * (1.0 + std::abs(a)); }

}  // namespace

Roc to_roc(const Strip& strip) { return {strip.re_left(), strip.re_right()}; }

Strip to_strip(const Roc& roc) {
    if (!std::isfinite(roc.re_min) || !std::isfinite(roc.re_max) || roc.re_max > 0.0) {
        fail(ErrorKind::InvalidInput, "region of convergence is not a strip left of the imaginary axis");
    }
    return {-roc.re_max, -roc.re_min};
}

LaplacePair forward(const SignalSpec& spec) {
    Roc roc;
    std::vector<PartialFractionTerm> terms;
    for (const auto& term : spec.terms) {
        if (term.power < 0) fail(ErrorKind::InvalidInput, "signal term power must be nonnegative");
        const double scale = factorial(term.power);
        Complex residue = term.coefficient * scale;
        if (term.direction == Direction::causal) {
            roc.re_min = std::max(roc.re_min, term.exponent.real());
        } else {
            roc.re_max = std::min(roc.re_max, term.exponent.real());
            residue = -residue;
        }
        const int order = term.power + 1;
        auto same = std::find_if(terms.begin(), terms.end(), [&](const PartialFractionTerm& t) {
            return t.order == order && same_pole(t.pole, term.exponent);
        });
        if (same == terms.end()) {
            terms.push_back({residue, term.exponent, order});
        } else {
            same->residue += residue;
        }
    }
    if (roc.empty()) fail(ErrorKind::NoCommonROC, "regions of convergence of the terms do not intersect");
    std::erase_if(terms, [](const PartialFractionTerm& t) { return t.residue == Complex(0.0, 0.0); });
    return {recombine(terms), roc};
}

SignalSpec inverse(const RationalFunction& f, const Roc& roc) {
    if (!f.is_strictly_proper()) fail(ErrorKind::Unsupported, "inversion needs a strictly proper function");
    if (roc.empty()) fail(ErrorKind::InvalidInput, "region of convergence is empty");
    for (const Complex& p : f.poles()) {
        if (roc.contains(p.real())) {
            const double margin = tol::line * (1.0 + std::abs(p.real()));
            if (p.real() - roc.re_min > margin && roc.re_max - p.real() > margin) {
                fail(ErrorKind::PoleInROC, "pole inside the region of convergence", p.real());
            }
        }
    }
    SignalSpec out;
    if (f.num().is_zero()) return out;
    const double mid = std::isfinite(roc.re_min) && std::isfinite(roc.re_max) ? 0.5 * (roc.re_min + roc.re_max)
                       : std::isfinite(roc.re_min)                            ? roc.re_min + 1.0
                       : std::isfinite(roc.re_max)                            ? roc.re_max - 1.0
                                                                              : 0.0;
    for (const auto& term : partial_fractions(f).terms) {
        const Complex c = term.residue / factorial(term.order - 1);
        if (term.pole.real() < mid) {
            out.terms.push_back({c, term.order - 1, term.pole, Direction::causal});
        } else {
            out.terms.push_back({-c, term.order - 1, term.pole, Direction::anticausal});
        }
    }
    return out;
}

std::vector<Roc> roc_options(const RationalFunction& f) {
    std::vector<double> re;
    for (const Complex& p : f.poles()) re.push_back(p.real());
    std::sort(re.begin(), re.end());
    std::vector<double> distinct;
    for (double r : re) {
        if (distinct.empty() || r - distinct.back() > tol::line * (1.0 + std::abs(r))) distinct.push_back(r);
    }
    std::vector<Roc> out;
    double left = -std::numeric_limits<double>::infinity();
    for (double r : distinct) {
        out.push_back({left, r});
        left = r;
    }
    out.push_back({left, std::numeric_limits<double>::infinity()});
    return out;
}

double eval_signal(const SignalSpec& spec, double t) {
    Complex sum = 0.0;
    for (const auto& term : spec.terms) {
        const bool causal = term.direction == Direction::causal;
        if ((causal && t < 0.0) || (!causal && t > 0.0)) continue;
        Complex v = term.coefficient * std::pow(t, term.power) * std::exp(term.exponent * t);
        if (t == 0.0) v *= 0.5;
        sum += v;
    }
    return sum.real();
}

}  // namespace stripgain::laplace
