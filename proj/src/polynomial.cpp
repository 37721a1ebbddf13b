#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "stripgain/error.hpp"
#include "stripgain/matrix.hpp"
#include "stripgain/rational.hpp"
#include "stripgain/tolerances.hpp"

namespace stripgain {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    for (double c : coeffs_) {
        if (!std::isfinite(c)) fail(ErrorKind::InvalidInput, "polynomial coefficient is not finite");
    }
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, double leading) {
    std::vector<Complex> acc{1.0};
    for (const Complex& r : roots) {
        std::vector<Complex> next(acc.size() + 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i + 1] += acc[i];
            next[i] -= r * acc[i];
        }
        acc = std::move(next);
    }
    std::vector<double> out(acc.size());
    std::transform(acc.begin(), acc.end(), out.begin(), [&](Complex c) { return leading * c.real(); });
    return Polynomial(std::move(out));
}

double Polynomial::norm() const noexcept {
    return std::sqrt(std::inner_product(coeffs_.begin(), coeffs_.end(), coeffs_.begin(), 0.0));
}

Complex Polynomial::operator()(Complex s) const noexcept {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double Polynomial::operator()(double s) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Polynomial Polynomial::taylor_shift(double c) const {
    std::vector<double> p = coeffs_;
    const std::size_t n = p.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t j = n - 1; j > k; --j) p[j - 1] += c * p[j];
    }
    return Polynomial(std::move(p));
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() == 1) return Polynomial();
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(double k, const Polynomial& p) {
    std::vector<double> out = p.coeffs_;
    for (double& c : out) c *= k;
    return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) fail(ErrorKind::InvalidInput, "division by the zero polynomial");
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<double> rem = a.coeffs();
    const auto& den = b.coeffs();
    const int db = b.degree();
    std::vector<double> quot(static_cast<std::size_t>(a.degree() - db + 1), 0.0);
    for (int k = a.degree() - db; k >= 0; --k) {
        const double q = rem[static_cast<std::size_t>(k + db)] / den.back();
        quot[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * den[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(k + db)] = 0.0;
    }
    rem.resize(static_cast<std::size_t>(std::max(db, 1)));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

namespace {

// Sum of |c_k| |s|^k: the natural scale of rounding error in p(s).
double eval_scale(const Polynomial& p, double modulus) {
    double acc = 0.0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * modulus + std::abs(*it);
    return acc;
}

Complex polish(const Polynomial& p, const Polynomial& dp, Complex r) {
    for (int it = 0; it < 3; ++it) {
        const Complex f = p(r);
        const Complex df = dp(r);
        if (f == 0.0 || std::abs(df) == 0.0) break;
        const Complex next = r - f / df;
        if (!(std::abs(p(next)) < std::abs(f))) break;
        r = next;
    }
    return r;
}

// Pairs every root in the upper half-plane with its nearest partner in the
// lower half-plane and replaces both by an exact conjugate pair.
std::vector<Complex> conjugate_pairs(std::vector<Complex> roots) {
    constexpr double real_axis = 1.5e-8;
    std::vector<Complex> out;
    std::vector<Complex> upper;
    std::vector<Complex> lower;
    for (const Complex& r : roots) {
        const double thr = real_axis * (1.0 + std::abs(r));
        if (std::abs(r.imag()) <= thr) {
            out.emplace_back(r.real(), 0.0);
        } else if (r.imag() > 0.0) {
            upper.push_back(r);
        } else {
            lower.push_back(r);
        }
    }
    if (upper.size() != lower.size()) {
        return roots;
    }
    std::vector<bool> used(lower.size(), false);
    for (const Complex& u : upper) {
        std::size_t best = lower.size();
        double best_d = 0.0;
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(u - std::conj(lower[j]));
            if (best == lower.size() || d < best_d) {
                best = j;
                best_d = d;
            }
        }
        used[best] = true;
        const Complex avg = 0.5 * (u + std::conj(lower[best]));
        out.push_back(avg);
        out.push_back(std::conj(avg));
    }
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

}  // namespace

std::vector<Complex> poly_roots(const Polynomial& p) {
    if (p.is_zero()) fail(ErrorKind::InvalidInput, "roots of the zero polynomial");
    const int n = p.degree();
    if (n == 0) return {};
    const auto& c = p.coeffs();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    companion = balanced(companion);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "companion eigenvalues did not converge");
    const Polynomial dp = p.derivative();
    std::vector<Complex> roots;
    roots.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) roots.push_back(polish(p, dp, solver.eigenvalues()[i]));
    roots = conjugate_pairs(std::move(roots));
    for (const Complex& r : roots) {
        const double bound = tol::root * std::max(1.0 + p.norm(), eval_scale(p, std::abs(r)));
        if (!(std::abs(p(r)) <= bound)) {
            fail(ErrorKind::NumericalFailure, "root residual check failed");
        }
    }
    return roots;
}

}  // namespace stripgain
