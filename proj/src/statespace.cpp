#include "stripgain/statespace.hpp"

#include <cmath>
#include <string>

#include "stripgain/error.hpp"
#include "stripgain/tolerances.hpp"

namespace stripgain {

StateSpace::StateSpace(Matrix a_, Matrix b_, Matrix c_, Matrix d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    validate();
}

StateSpace StateSpace::gain(double k) {
    Matrix d(1, 1);
    d(0, 0) = k;
    return {Matrix(0, 0), Matrix(0, 1), Matrix(1, 0), d};
}

void StateSpace::validate() const {
    const auto n = a.rows();
    if (a.cols() != n) fail(ErrorKind::InvalidInput, "A must be square");
    if (b.rows() != n) fail(ErrorKind::InvalidInput, "B must have as many rows as A");
    if (c.cols() != n) fail(ErrorKind::InvalidInput, "C must have as many columns as A");
    if (d.rows() != c.rows() || d.cols() != b.cols()) fail(ErrorKind::InvalidInput, "D must be outputs x inputs");
    if (d.size() == 0) fail(ErrorKind::InvalidInput, "system needs at least one input and one output");
    if (!a.allFinite() || !b.allFinite() || !c.allFinite() || !d.allFinite()) {
        fail(ErrorKind::InvalidInput, "state-space matrices must be finite");
    }
}

StateSpace realize(const RationalFunction& g) {
    if (!g.is_proper()) fail(ErrorKind::ImproperTransferFunction, "numerator degree exceeds denominator degree");
    const int n = g.order();
    const double dval = g.feedthrough();
    Matrix d(1, 1);
    d(0, 0) = dval;
    if (n == 0) return {Matrix(0, 0), Matrix(0, 1), Matrix(1, 0), d};
    const Polynomial rem = g.num() - dval * g.den();
    const auto& den = g.den().coeffs();
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
    for (int k = 0; k < n; ++k) a(n - 1, k) = -den[static_cast<std::size_t>(k)];
    Matrix b = Matrix::Zero(n, 1);
    b(n - 1, 0) = 1.0;
    Matrix c = Matrix::Zero(1, n);
    for (int k = 0; k < n && k <= rem.degree(); ++k) c(0, k) = rem.coeffs()[static_cast<std::size_t>(k)];
    return {a, b, c, d};
}

RationalFunction tf_of(const StateSpace& ss) {
    if (!ss.is_siso()) fail(ErrorKind::Unsupported, "transfer functions are single-input single-output only");
    const double dval = ss.d(0, 0);
    if (ss.states() == 0) return RationalFunction::constant(dval);
    // C (sI - A)^{-1} B = (det(sI - A + BC) - det(sI - A)) / det(sI - A)
    const auto open = eig(ss.a);
    const auto closed = eig(ss.a - ss.b * ss.c);
    const Polynomial den = Polynomial::from_roots(open);
    const Polynomial loop = Polynomial::from_roots(closed);
    std::vector<double> strict = (loop - den).coeffs();
    double scale = 0.0;
    for (double v : den.coeffs()) scale = std::max(scale, std::abs(v));
    for (double v : loop.coeffs()) scale = std::max(scale, std::abs(v));
    // Leading terms cancel exactly in theory; drop what is left of rounding.
    for (double& v : strict) {
        if (std::abs(v) <= 1e-12 * scale) v = 0.0;
    }
    return {Polynomial(std::move(strict)) + dval * den, den};
}

std::complex<double> frequency_response(const StateSpace& ss, std::complex<double> s) {
    if (!ss.is_siso()) fail(ErrorKind::Unsupported, "frequency response is single-input single-output only");
    const auto n = ss.states();
    if (n == 0) return ss.d(0, 0);
    const CMatrix m = s * CMatrix::Identity(n, n) - ss.a.cast<std::complex<double>>();
    const CVector x = m.partialPivLu().solve(ss.b.cast<std::complex<double>>().col(0));
    return (ss.c.cast<std::complex<double>>() * x)(0, 0) + ss.d(0, 0);
}

namespace {

// Splits the spectrum of A about the band [re_left, re_right], which must be
// free of eigenvalues.
ModalSplit split_about(const StateSpace& ss, double re_left, double re_right, const std::string& where) {
    ss.validate();
    const auto n = ss.states();
    for (const auto& mu : eig(ss.a)) {
        const double margin = tol::line * (1.0 + std::abs(mu.real()));
        if (mu.real() >= re_left - margin && mu.real() <= re_right + margin) {
            fail(ErrorKind::EigenvalueInStrip, "eigenvalue with real part " + std::to_string(mu.real()) + " in " + where,
                 mu.real());
        }
    }
    const double mid = 0.5 * (re_left + re_right);
    const OrderedSchur schur = ordered_schur(ss.a, [mid](std::complex<double> mu) { return mu.real() > mid; });
    const int p = schur.selected;
    const auto q = n - p;
    ModalSplit out;
    out.d = ss.d;
    if (p == 0 || q == 0) {
        out.t = Matrix::Identity(n, n);
        ModalSplit::Part whole{ss.a, ss.b, ss.c};
        ModalSplit::Part empty{Matrix(0, 0), Matrix(0, ss.b.cols()), Matrix(ss.c.rows(), 0)};
        out.plus = p == 0 ? empty : whole;
        out.minus = p == 0 ? whole : empty;
        return out;
    }
    const CMatrix t11 = schur.t.topLeftCorner(p, p);
    const CMatrix t22 = schur.t.bottomRightCorner(q, q);
    const CMatrix t12 = schur.t.topRightCorner(p, q);
    const CMatrix x = triangular_sylvester(t11, t22, -t12);
    const CMatrix plus_span = schur.u.leftCols(p);
    const CMatrix minus_span = schur.u.leftCols(p) * x + schur.u.rightCols(q);
    Matrix t(n, n);
    t << real_basis(plus_span, p), real_basis(minus_span, static_cast<int>(q));
    const auto lu = t.partialPivLu();
    const Matrix modal = lu.solve(ss.a * t);
    const double off = std::max(modal.topRightCorner(p, q).norm(), modal.bottomLeftCorner(q, p).norm());
    if (off > 1e-8 * std::max(ss.a.norm(), 1.0)) fail(ErrorKind::NumericalFailure, "modal decoupling failed");
    const Matrix bt = lu.solve(ss.b);
    const Matrix ct = ss.c * t;
    out.t = t;
    out.plus = {modal.topLeftCorner(p, p), bt.topRows(p), ct.leftCols(p)};
    out.minus = {modal.bottomRightCorner(q, q), bt.bottomRows(q), ct.rightCols(q)};
    return out;
}

double part_response(const ModalSplit::Part& part, double t) {
    if (part.states() == 0) return 0.0;
    const Matrix e = expm(part.a, t);
    return (part.c * e * part.b)(0, 0);
}

}  // namespace

ModalSplit modal_split(const StateSpace& ss, const Strip& strip) {
    return split_about(ss, strip.re_left(), strip.re_right(), describe(strip));
}

ModalSplit modal_split(const StateSpace& ss, const Line& line) {
    return split_about(ss, line.abscissa(), line.abscissa(), describe(line));
}

double impulse_response(const ModalSplit& split, double t) {
    if (t > 0.0) return part_response(split.minus, t);
    if (t < 0.0) return -part_response(split.plus, t);
    return 0.5 * (part_response(split.minus, 0.0) - part_response(split.plus, 0.0));
}

double impulse_response(const StateSpace& ss, const Strip& strip, double t) {
    if (!ss.is_siso()) fail(ErrorKind::Unsupported, "impulse response is single-input single-output only");
    return impulse_response(modal_split(ss, strip), t);
}

SampledSignal convolve(const StateSpace& ss, const Strip& strip, const SampledSignal& u) {
    if (!ss.is_siso()) fail(ErrorKind::Unsupported, "convolution is single-input single-output only");
    if (!(u.dt > 0.0)) fail(ErrorKind::InvalidInput, "sample step must be positive");
    const ModalSplit split = modal_split(ss, strip);
    const std::size_t len = u.size();
    const double h = u.dt;
    SampledSignal y{u.t0, u.dt, std::vector<double>(len, 0.0)};
    for (std::size_t k = 0; k < len; ++k) y.samples[k] = split.d(0, 0) * u.samples[k];
    if (len == 0) return y;

    if (const auto& m = split.minus; m.states() > 0) {
        const Matrix phi = expm(m.a, h);
        const Vector phi_b = phi * m.b.col(0);
        const Vector b = m.b.col(0);
        Vector x = Vector::Zero(m.states());
        y.samples[0] += (m.c * x)(0, 0);
        for (std::size_t k = 0; k + 1 < len; ++k) {
            x = phi * x + 0.5 * h * (phi_b * u.samples[k] + b * u.samples[k + 1]);
            y.samples[k + 1] += (m.c * x)(0, 0);
        }
    }
    if (const auto& p = split.plus; p.states() > 0) {
        const Matrix psi = expm(-p.a, h);
        const Vector psi_b = psi * p.b.col(0);
        const Vector b = p.b.col(0);
        Vector x = Vector::Zero(p.states());
        for (std::size_t k = len - 1; k > 0; --k) {
            x = psi * x - 0.5 * h * (b * u.samples[k - 1] + psi_b * u.samples[k]);
            y.samples[k - 1] += (p.c * x)(0, 0);
        }
    }
    return y;
}

namespace {

double weighted_energy(const SampledSignal& f, double rate) {
    const std::size_t len = f.size();
    if (len == 0) return 0.0;
    std::vector<double> w(len, 0.0);
    double peak = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        const double v = f.samples[k];
        if (v != 0.0) w[k] = std::exp(2.0 * rate * f.time(k) + 2.0 * std::log(std::abs(v)));
        peak = std::max(peak, w[k]);
    }
    if (peak == 0.0) return 0.0;
    if (std::max(w.front(), w.back()) > tol::tail * peak) {
        fail(ErrorKind::WindowTooShort, "weighted signal has not decayed at the window ends", rate);
    }
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < len; ++k) acc += 0.5 * f.dt * (w[k] + w[k + 1]);
    return acc;
}

}  // namespace

double weighted_l2_norm(const SampledSignal& f, const Strip& strip) {
    double best = 0.0;
    for (int k = 0; k <= 10; ++k) {
        const double rate = strip.lo() + (strip.hi() - strip.lo()) * k / 10.0;
        best = std::max(best, weighted_energy(f, rate));
    }
    return std::sqrt(best);
}

double weighted_l2_norm(const SampledSignal& f, const Line& line) {
    return std::sqrt(weighted_energy(f, line.rate()));
}

}  // namespace stripgain
