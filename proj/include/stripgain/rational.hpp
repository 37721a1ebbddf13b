#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "stripgain/region.hpp"

namespace stripgain {

using Complex = std::complex<double>;

/// Real polynomial with ascending coefficients: coeffs()[k] multiplies s^k.
/// Trailing zeros are trimmed; the zero polynomial is stored as {0}.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    [[nodiscard]] static Polynomial constant(double c) { return Polynomial({c}); }
    /// prod (s - r_k) * leading; roots must be closed under conjugation.
    [[nodiscard]] static Polynomial from_roots(std::span<const Complex> roots, double leading = 1.0);

    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    [[nodiscard]] double leading() const noexcept { return coeffs_.back(); }
    [[nodiscard]] double norm() const noexcept;  // Euclidean norm of the coefficients

    [[nodiscard]] Complex operator()(Complex s) const noexcept;
    [[nodiscard]] double operator()(double s) const noexcept;

    /// p(s + c), by repeated synthetic division.
    [[nodiscard]] Polynomial taylor_shift(double c) const;
    [[nodiscard]] Polynomial derivative() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double k, const Polynomial& p);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<double> coeffs_;
};

/// Quotient and remainder of a / b.
[[nodiscard]] std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b);

/// Roots via companion-matrix eigenvalues with Newton polishing. Real-coefficient
/// input yields exact conjugate pairs; real roots have zero imaginary part.
[[nodiscard]] std::vector<Complex> poly_roots(const Polynomial& p);

/// A reduced ratio num/den with monic denominator.
class RationalFunction {
public:
    RationalFunction() : num_(Polynomial::constant(0.0)), den_(Polynomial::constant(1.0)) {}
    /// Normalizes to a monic denominator and cancels common roots within 1e-9
    /// (relative); the cancellation is kept only if evaluations are unchanged.
    RationalFunction(Polynomial num, Polynomial den);

    [[nodiscard]] static RationalFunction constant(double c) {
        return {Polynomial::constant(c), Polynomial::constant(1.0)};
    }

    [[nodiscard]] const Polynomial& num() const noexcept { return num_; }
    [[nodiscard]] const Polynomial& den() const noexcept { return den_; }
    [[nodiscard]] int order() const noexcept { return den_.degree(); }
    [[nodiscard]] bool is_proper() const noexcept { return num_.degree() <= den_.degree(); }
    [[nodiscard]] bool is_strictly_proper() const noexcept {
        return num_.is_zero() || num_.degree() < den_.degree();
    }
    /// Number of common root pairs removed at construction.
    [[nodiscard]] int cancelled() const noexcept { return cancelled_; }
    /// Limit of G(s) as |s| -> inf (0 if strictly proper); requires properness.
    [[nodiscard]] double feedthrough() const;

    [[nodiscard]] const std::vector<Complex>& poles() const noexcept { return poles_; }
    [[nodiscard]] std::vector<Complex> zeros() const;

    /// Plain num(s)/den(s) with no proximity check.
    [[nodiscard]] Complex operator()(Complex s) const noexcept { return num_(s) / den_(s); }

private:
    Polynomial num_;
    Polynomial den_;
    std::vector<Complex> poles_;
    int cancelled_ = 0;
};

/// num(s)/den(s); throws PoleProximity within 1e-9 (1 + |s|) of a pole.
[[nodiscard]] Complex rational_eval(const RationalFunction& g, Complex s);

/// G(s - rate): poles move by +rate.
[[nodiscard]] RationalFunction shift(const RationalFunction& g, double rate);

[[nodiscard]] RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
[[nodiscard]] RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
[[nodiscard]] RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);

/// Term residue / (s - pole)^order.
struct PartialFractionTerm {
    Complex residue;
    Complex pole;
    int order = 1;

    [[nodiscard]] Complex operator()(Complex s) const { return residue / std::pow(s - pole, order); }
};

struct PartialFractions {
    Polynomial polynomial_part;
    std::vector<PartialFractionTerm> terms;

    [[nodiscard]] Complex operator()(Complex s) const;
};

[[nodiscard]] PartialFractions partial_fractions(const RationalFunction& g);

/// Sum of terms as a real rational function; terms must be conjugate-closed.
[[nodiscard]] RationalFunction recombine(std::span<const PartialFractionTerm> terms,
                                         const Polynomial& polynomial_part = Polynomial());

struct PolePartition {
    int right = 0;  // Re(pole) > -lo
    int left = 0;   // Re(pole) < -hi
};

[[nodiscard]] PolePartition pole_partition(const RationalFunction& g, const Strip& strip);
[[nodiscard]] PolePartition pole_partition(const RationalFunction& g, const Line& line);

}  // namespace stripgain
