#include "stripgain/strip_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "stripgain/error.hpp"
#include "stripgain/quadrature.hpp"
#include "stripgain/simd/freqresp.hpp"
#include "stripgain/tolerances.hpp"

namespace stripgain {

std::string_view to_string(NormMethod m) noexcept {
    switch (m) {
        case NormMethod::grid: return "grid";
        case NormMethod::bisection: return "bisection";
        case NormMethod::boundary_max: return "boundary-max";
    }
    return "grid";
}

std::string_view to_string(Boundary b) noexcept { return b == Boundary::lo ? "lo" : "hi"; }

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

std::vector<double> logspace(double lo_exp, double hi_exp, std::size_t points) {
    std::vector<double> out(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double frac = points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(points - 1);
        out[k] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * frac);
    }
    return out;
}

std::vector<double> magnitudes(const RationalFunction& g, double sigma, std::span<const double> omega) {
    std::vector<double> re(omega.size());
    std::vector<double> im(omega.size());
    simd::eval_rational({g.num().coeffs(), g.den().coeffs(), sigma}, omega, re, im);
    std::vector<double> mag(omega.size());
    for (std::size_t k = 0; k < omega.size(); ++k) mag[k] = std::hypot(re[k], im[k]);
    return mag;
}

double golden_max(const std::function<double(double)>& f, double a, double b, int iterations, double& arg) {
    constexpr double ratio = 0.6180339887498949;
    double x1 = b - ratio * (b - a);
    double x2 = a + ratio * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int k = 0; k < iterations; ++k) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        }
    }
    arg = f1 > f2 ? x1 : x2;
    return std::max(f1, f2);
}

}  // namespace

std::vector<double> default_frequency_grid(std::size_t points) {
    std::vector<double> grid{0.0};
    const auto tail = logspace(-3.0, 3.0, points);
    grid.insert(grid.end(), tail.begin(), tail.end());
    return grid;
}

NormResult line_norm_grid(const RationalFunction& g, const Line& line, std::span<const double> grid) {
    if (!g.is_proper()) fail(ErrorKind::Unsupported, "improper transfer function is unbounded on the line");
    (void)pole_partition(g, line);
    const double sigma = line.abscissa();
    std::vector<double> omega(grid.begin(), grid.end());
    for (const Complex& p : g.poles()) omega.push_back(std::abs(p.imag()));
    for (double& w : omega) w = std::abs(w);
    std::sort(omega.begin(), omega.end());
    omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
    if (omega.empty()) omega.push_back(0.0);

    const std::vector<double> mag = magnitudes(g, sigma, omega);
    auto at = [&](double w) { return std::abs(g(Complex(sigma, w))); };
    const std::size_t n = omega.size();
    const double coarse = *std::max_element(mag.begin(), mag.end());

    NormResult out;
    out.method = NormMethod::grid;
    out.engine = NormMethod::grid;
    out.value = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const bool left_ok = k == 0 || mag[k] >= mag[k - 1];
        const bool right_ok = k + 1 == n || mag[k] >= mag[k + 1];
        if (!left_ok || !right_ok || mag[k] < 0.5 * coarse) continue;
        double a = k == 0 ? omega[0] : omega[k - 1];
        double b = k + 1 == n ? omega[k] : omega[k + 1];
        double best_w = omega[k];
        double best = mag[k];
        for (int round = 0; round < 3 && b > a; ++round) {
            double w = best_w;
            const double v = golden_max(at, a, b, 40, w);
            if (v > best) {
                best = v;
                best_w = w;
            }
            const double half = 4.0 * (b - a) * std::pow(0.6180339887498949, 40);
            a = std::max(a, best_w - half);
            b = std::min(b, best_w + half);
        }
        if (best > out.value) {
            out.value = best;
            out.peak_frequency = best_w;
        }
    }
    const double at_infinity = std::abs(g.feedthrough());
    if (at_infinity > out.value) {
        out.value = at_infinity;
        out.peak_frequency = infinity;
    }
    return out;
}

NormResult line_norm_grid(const RationalFunction& g, const Line& line) {
    return line_norm_grid(g, line, default_frequency_grid());
}

Matrix hamiltonian(const StateSpace& ss, double rate, double gamma) {
    const auto n = ss.states();
    const auto m = ss.inputs();
    const auto q = ss.outputs();
    const Matrix r = ss.d.transpose() * ss.d - gamma * gamma * Matrix::Identity(m, m);
    const Matrix s = ss.d * ss.d.transpose() - gamma * gamma * Matrix::Identity(q, q);
    const auto r_lu = r.partialPivLu();
    const auto s_lu = s.partialPivLu();
    const Matrix shifted = ss.a + rate * Matrix::Identity(n, n);
    const Matrix f = shifted - ss.b * r_lu.solve(ss.d.transpose() * ss.c);
    Matrix h(2 * n, 2 * n);
    h.topLeftCorner(n, n) = f;
    h.topRightCorner(n, n) = -gamma * ss.b * r_lu.solve(ss.b.transpose());
    h.bottomLeftCorner(n, n) = gamma * ss.c.transpose() * s_lu.solve(ss.c);
    h.bottomRightCorner(n, n) = -f.transpose();
    return h;
}

namespace {

// Distance of the spectrum of H from the imaginary axis, relative to the
// classification threshold: <= 1 means an imaginary eigenvalue is present.
// H is balanced first: companion realizations give ||H|| many orders above
// its spectral radius, which would make the relative threshold meaningless.
double axis_ratio(const StateSpace& ss, double rate, double gamma, std::vector<Complex>* eigs = nullptr) {
    const Matrix h = balanced(hamiltonian(ss, rate, gamma));
    auto mu = eig(h);
    double closest = infinity;
    for (const auto& v : mu) closest = std::min(closest, std::abs(v.real()));
    if (eigs) *eigs = std::move(mu);
    return closest / (tol::ham * std::max(h.norm(), std::numeric_limits<double>::min()));
}

bool has_imaginary_eigenvalue(const StateSpace& ss, double rate, double gamma) {
    const double ratio = axis_ratio(ss, rate, gamma);
    const bool base = ratio <= 1.0;
    if (ratio < 0.1 || ratio > 10.0) return base;
    const bool below = axis_ratio(ss, rate, gamma * (1.0 - 1e-6)) <= 1.0;
    const bool above = axis_ratio(ss, rate, gamma * (1.0 + 1e-6)) <= 1.0;
    return below == above ? below : base;
}

void require_off_line(const StateSpace& ss, const Line& line, ErrorKind kind) {
    for (const auto& mu : eig(ss.a)) {
        const double re = mu.real();
        if (std::abs(re - line.abscissa()) <= tol::line * (1.0 + std::abs(re))) {
            fail(kind, "eigenvalue of A lies on " + describe(line), re);
        }
    }
}

// Gramian-balanced realization, built separately on each side of the line.
// Singularity of H - iw does not depend on the realization, but companion or
// modal coordinates with nearly cancelling modes make H so non-normal that
// sigma_min collapses far from any eigenvalue. Falls back to the given
// realization when a part is not minimal.
StateSpace balanced_coordinates(const StateSpace& ss, const Line& line) {
    if (ss.states() == 0) return ss;
    const ModalSplit split = modal_split(ss, line);
    auto root = [](const Matrix& w) -> std::optional<Matrix> {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (w + w.transpose()));
        const Vector ev = es.eigenvalues();
        if (!(ev.minCoeff() > 1e-14 * ev.maxCoeff())) return std::nullopt;
        return es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
    };
    std::vector<ModalSplit::Part> parts;
    for (const auto* part : {&split.minus, &split.plus}) {
        const auto n = part->states();
        if (n == 0) continue;
        const double sign = part == &split.minus ? 1.0 : -1.0;  // time-reverse the unstable side
        const Matrix as = sign * (part->a + line.rate() * Matrix::Identity(n, n));
        const auto lc = root(lyap_solve(as.transpose(), part->b * part->b.transpose()));
        const auto lo = root(lyap_solve(as, part->c.transpose() * part->c));
        if (!lc || !lo) return ss;
        const Eigen::JacobiSVD<Matrix> svd(lo->transpose() * *lc, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Vector hsv = svd.singularValues();
        if (!(hsv(n - 1) > 1e-12 * hsv(0))) return ss;
        const Vector isq = hsv.cwiseSqrt().cwiseInverse();
        const Matrix t = *lc * svd.matrixV() * isq.asDiagonal();
        const Matrix ti = isq.asDiagonal() * svd.matrixU().transpose() * lo->transpose();
        parts.push_back({ti * part->a * t, ti * part->b, part->c * t});
    }
    const int n = ss.states();
    Matrix a = Matrix::Zero(n, n);
    Matrix b(n, 1);
    Matrix c(1, n);
    int at = 0;
    for (const auto& p : parts) {
        const int k = p.states();
        a.block(at, at, k, k) = p.a;
        b.middleRows(at, k) = p.b;
        c.middleCols(at, k) = p.c;
        at += k;
    }
    return {a, b, c, ss.d};
}

}  // namespace

NormResult line_norm_bisection(const StateSpace& ss, const Line& line, double tol) {
    if (!ss.is_siso()) fail(ErrorKind::Unsupported, "bisection norm is single-input single-output only");
    if (!(tol > 0.0)) fail(ErrorKind::InvalidInput, "tolerance must be positive");
    NormResult out;
    out.method = NormMethod::bisection;
    out.engine = NormMethod::bisection;
    out.tolerance = tol;
    const double dmax = std::abs(ss.d(0, 0));
    if (ss.states() == 0) {
        out.value = dmax;
        out.bracket = {dmax, dmax};
        out.peak_frequency = 0.0;
        return out;
    }
    require_off_line(ss, line, ErrorKind::PoleOnLine);
    const double sigma = line.abscissa();

    auto gain_at = [&](double w) { return std::abs(frequency_response(ss, Complex(sigma, w))); };
    std::vector<double> coarse = default_frequency_grid(64);
    for (const auto& mu : eig(ss.a)) coarse.push_back(std::abs(mu.imag()));
    double estimate = 0.0;
    double estimate_w = 0.0;
    for (double w : coarse) {
        const double v = gain_at(w);
        if (v > estimate) {
            estimate = v;
            estimate_w = w;
        }
    }

    double lo = std::max(dmax * (1.0 + 1e-9), 0.99 * estimate);
    if (!has_imaginary_eigenvalue(ss, line.rate(), lo)) {
        // Only possible when the supremum is the feedthrough limit.
        out.bracket = {std::max(dmax, estimate), lo};
        out.value = std::max(dmax, estimate);
        out.peak_frequency = estimate > dmax ? estimate_w : infinity;
        return out;
    }
    double hi = 2.0 * estimate + 1.0;
    int doublings = 0;
    while (has_imaginary_eigenvalue(ss, line.rate(), hi)) {
        if (++doublings > 50) fail(ErrorKind::NumericalFailure, "could not bracket the norm from above");
        hi *= 2.0;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (has_imaginary_eigenvalue(ss, line.rate(), mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.bracket = {lo, hi};
    out.value = 0.5 * (lo + hi);

    std::vector<Complex> mu;
    axis_ratio(ss, line.rate(), lo, &mu);
    double best = -1.0;
    for (const auto& v : mu) {
        const double w = std::abs(v.imag());
        const double g = gain_at(w);
        if (g > best) {
            best = g;
            out.peak_frequency = w;
        }
    }
    if (estimate > best) out.peak_frequency = estimate_w;
    return out;
}

bool singular_value_test(const StateSpace& ss, double gamma, double w0, const Line& line) {
    if (!ss.is_siso()) fail(ErrorKind::Unsupported, "singular value test is single-input single-output only");
    const double dmax = std::abs(ss.d(0, 0));
    if (!(gamma > 0.0) || std::abs(gamma - dmax) <= 1e-9 * std::max(1.0, dmax)) {
        fail(ErrorKind::InvalidInput, "gamma must be positive and not a singular value of D");
    }
    require_off_line(ss, line, ErrorKind::InvalidInput);
    const Matrix h = balanced(hamiltonian(balanced_coordinates(ss, line), line.rate(), gamma));
    const auto n = h.rows();
    const CMatrix shifted = h.cast<Complex>() - Complex(0.0, w0) * CMatrix::Identity(n, n);
    return sigma_min(shifted) <= tol::ham * h.norm();
}

NormResult strip_norm(const RationalFunction& g, const Strip& strip, NormMethod method, double tol) {
    (void)pole_partition(g, strip);
    auto boundary = [&](const Line& line) {
        if (method == NormMethod::grid) return line_norm_grid(g, line);
        return line_norm_bisection(realize(g), line, tol);
    };
    const NormResult lo = boundary(strip.lo_line());
    const NormResult hi = boundary(strip.hi_line());
    NormResult out = lo.value >= hi.value ? lo : hi;
    out.attained_at = lo.value >= hi.value ? Boundary::lo : Boundary::hi;
    out.method = NormMethod::boundary_max;
    out.engine = method == NormMethod::grid ? NormMethod::grid : NormMethod::bisection;
    out.boundary_values = {lo.value, hi.value};

    double scale = 1.0;
    for (double w : {lo.peak_frequency, hi.peak_frequency}) {
        if (std::isfinite(w)) scale = std::max(scale, w);
    }
    const std::vector<double> omega{0.0, 0.25 * scale, scale, 4.0 * scale, 16.0 * scale};
    const double slack = 1e-9 + 1e-6 * out.value;
    for (int j = 0; j < 5; ++j) {
        const double rate = strip.lo() + (strip.hi() - strip.lo()) * (j + 1) / 6.0;
        for (double v : magnitudes(g, -rate, omega)) {
            if (v > out.value + slack) {
                fail(ErrorKind::NumericalFailure, "interior sample exceeds the boundary maximum", v);
            }
        }
    }
    return out;
}

double h2_line_norm(const RationalFunction& g, const Line& line) {
    if (!g.is_strictly_proper()) fail(ErrorKind::DivergentIntegral, "H2 norm requires a strictly proper function");
    (void)pole_partition(g, line);
    if (g.num().is_zero()) return 0.0;
    const ModalSplit split = modal_split(realize(g), line);
    double energy = 0.0;
    if (const auto& m = split.minus; m.states() > 0) {
        const Matrix a = m.a + line.rate() * Matrix::Identity(m.states(), m.states());
        const Matrix w = lyap_solve(a, m.c.transpose() * m.c);
        energy += (m.b.transpose() * w * m.b)(0, 0);
    }
    if (const auto& p = split.plus; p.states() > 0) {
        // G(-s) of the antistable part is stable with realization (-A, B, -C).
        const Matrix a = -(p.a + line.rate() * Matrix::Identity(p.states(), p.states()));
        const Matrix w = lyap_solve(a, p.c.transpose() * p.c);
        energy += (p.b.transpose() * w * p.b)(0, 0);
    }
    // The cross term vanishes: the two parts lie in orthogonal Hardy spaces.
    return std::sqrt(std::max(energy, 0.0));
}

Complex line_inner_product(const RationalFunction& f, const RationalFunction& g, const Line& line) {
    if (f.num().is_zero() || g.num().is_zero()) return 0.0;
    const int decay = (f.den().degree() - f.num().degree()) + (g.den().degree() - g.num().degree());
    if (decay < 2) fail(ErrorKind::DivergentIntegral, "inner product integrand does not decay fast enough");
    (void)pole_partition(f, line);
    (void)pole_partition(g, line);
    const double sigma = line.abscissa();
    auto value = [&](double w) { return f(Complex(sigma, w)) * std::conj(g(Complex(sigma, w))); };
    double scale = 0.0;
    for (double w : default_frequency_grid(64)) scale = std::max(scale, std::abs(value(w)));
    const double tol = 1e-12 * std::max(scale, 1e-300);
    const double re = integrate_real_line([&](double w) { return value(w).real(); }, tol);
    const double im = integrate_real_line([&](double w) { return value(w).imag(); }, tol);
    return Complex(re, im) / (2.0 * std::numbers::pi);
}

LineDecomposition decompose_line(const RationalFunction& g, const Line& line) {
    if (!g.is_strictly_proper()) fail(ErrorKind::DivergentIntegral, "decomposition requires a strictly proper function");
    (void)pole_partition(g, line);
    const PartialFractions pf = partial_fractions(g);
    std::vector<PartialFractionTerm> left;
    std::vector<PartialFractionTerm> right;
    for (const auto& t : pf.terms) (t.pole.real() < line.abscissa() ? left : right).push_back(t);
    return {recombine(left), recombine(right)};
}

std::vector<FrequencyRow> frequency_response_data(const RationalFunction& g, const Line& line,
                                                  std::span<const double> omegas, double uncertainty_radius) {
    if (!(uncertainty_radius >= 0.0)) fail(ErrorKind::InvalidInput, "uncertainty radius must be nonnegative");
    (void)pole_partition(g, line);
    std::vector<double> re(omegas.size());
    std::vector<double> im(omegas.size());
    simd::eval_rational({g.num().coeffs(), g.den().coeffs(), line.abscissa()}, omegas, re, im);
    std::vector<FrequencyRow> rows;
    rows.reserve(omegas.size());
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        const double mag = std::hypot(re[k], im[k]);
        rows.push_back({omegas[k], re[k], im[k], mag, uncertainty_radius * mag});
    }
    return rows;
}

}  // namespace stripgain
