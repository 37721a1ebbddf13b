#include "stripgain/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stripgain/error.hpp"
#include "stripgain/tolerances.hpp"

namespace stripgain {

namespace {

double largest_eigenvalue(const Matrix& m) {
    if (m.rows() == 0) return -std::numeric_limits<double>::infinity();
    return sym_eig(m).back();
}

Matrix symmetrized(const Matrix& m, const char* what) {
    if (symmetry_defect(m) > 1e-9) fail(ErrorKind::InvalidInput, std::string(what) + " is not symmetric");
    return 0.5 * (m + m.transpose());
}

int count_right_of(const Matrix& a, double rate) {
    int count = 0;
    for (const auto& mu : eig(a)) {
        const double re = mu.real() + rate;
        if (std::abs(re) <= tol::line * (1.0 + std::abs(mu.real()))) {
            fail(ErrorKind::MarginalRate, "mode on the line Re(s) = " + std::to_string(-rate), mu.real());
        }
        if (re > 0.0) ++count;
    }
    return count;
}

}  // namespace

Inertia inertia(const Matrix& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "inertia needs a square matrix");
    if (symmetry_defect(m) > tol::sym) fail(ErrorKind::InvalidInput, "inertia needs a symmetric matrix");
    const auto values = sym_eig(m);
    double scale = 1.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    const double zero = tol::inertia * scale;
    Inertia out;
    for (double v : values) {
        if (v < -zero) {
            ++out.negative;
        } else if (v > zero) {
            ++out.positive;
        } else {
            ++out.zero;
        }
    }
    return out;
}

double dominance_residual(const Matrix& a, const Matrix& p, double rate, double eps) {
    const auto n = a.rows();
    if (a.cols() != n || p.rows() != n || p.cols() != n) fail(ErrorKind::InvalidInput, "dimension mismatch");
    const Matrix ps = symmetrized(p, "P");
    const Matrix m = a.transpose() * ps + ps * a + 2.0 * rate * ps + eps * Matrix::Identity(n, n);
    return largest_eigenvalue(0.5 * (m + m.transpose()));
}

DominanceCertificate dominance_check(const StateSpace& ss, int p, double rate) {
    ss.validate();
    if (p < 0) fail(ErrorKind::InvalidInput, "dominance degree must be nonnegative");
    const int n = ss.states();
    const int actual = count_right_of(ss.a, rate);
    if (actual != p) {
        fail(ErrorKind::NotPDominant,
             "system has " + std::to_string(actual) + " modes right of Re(s) = " + std::to_string(-rate) +
                 ", not " + std::to_string(p),
             actual);
    }
    DominanceCertificate cert;
    cert.p = p;
    cert.rate = rate;
    if (n == 0) {
        cert.p_matrix = Matrix(0, 0);
        cert.epsilon = 0.5;
        cert.lmi_residual = -0.5;
        return cert;
    }

    const StateSpace bare(ss.a, Matrix::Zero(n, 1), Matrix::Zero(1, n), Matrix::Zero(1, 1));
    const ModalSplit split = modal_split(bare, Line(rate));
    const int np = split.plus.states();
    const int nm = split.minus.states();
    Matrix block = Matrix::Zero(n, n);
    if (np > 0) {
        const Matrix shifted = split.plus.a + rate * Matrix::Identity(np, np);
        block.topLeftCorner(np, np) = -lyap_solve(shifted, -Matrix::Identity(np, np));
    }
    if (nm > 0) {
        const Matrix shifted = split.minus.a + rate * Matrix::Identity(nm, nm);
        block.bottomRightCorner(nm, nm) = lyap_solve(shifted, Matrix::Identity(nm, nm));
    }
    const Matrix t_inv = split.t.inverse();
    Matrix pm = t_inv.transpose() * block * t_inv;
    pm = 0.5 * (pm + pm.transpose());

    const double margin = -dominance_residual(ss.a, pm, rate, 0.0);
    if (!(margin > 0.0)) fail(ErrorKind::NumericalFailure, "dominance certificate has no strict margin", margin);
    cert.p_matrix = pm;
    cert.epsilon = 0.5 * margin;
    cert.lmi_residual = dominance_residual(ss.a, pm, rate, cert.epsilon);
    cert.p_inertia = inertia(pm);
    if (cert.p_inertia != Inertia{p, 0, n - p} || cert.lmi_residual > 0.0) {
        fail(ErrorKind::NumericalFailure, "assembled dominance certificate failed verification");
    }
    return cert;
}

LmiCheck verify_gain_lmi(const StateSpace& ss, const Matrix& p, double gamma, double rate, double eps) {
    ss.validate();
    const auto n = ss.states();
    if (p.rows() != n || p.cols() != n) fail(ErrorKind::InvalidInput, "P has the wrong dimension");
    const Matrix ps = symmetrized(p, "P");
    const auto m = ss.inputs();
    Matrix block(n + m, n + m);
    block.topLeftCorner(n, n) = ss.a.transpose() * ps + ps * ss.a + 2.0 * rate * ps +
                                eps * Matrix::Identity(n, n) + ss.c.transpose() * ss.c;
    block.topRightCorner(n, m) = ps * ss.b + ss.c.transpose() * ss.d;
    block.bottomLeftCorner(m, n) = block.topRightCorner(n, m).transpose();
    block.bottomRightCorner(m, m) = ss.d.transpose() * ss.d - gamma * gamma * Matrix::Identity(m, m);
    block = 0.5 * (block + block.transpose());
    LmiCheck out;
    out.max_eigenvalue = largest_eigenvalue(block);
    out.p_inertia = inertia(ps);
    out.valid = out.max_eigenvalue <= 0.0 && out.p_inertia.zero == 0;
    return out;
}

namespace {

// Stabilizing (or anti-stabilizing) solution of
// F^T X + X F - X G X + Q = 0 from an invariant subspace of its Hamiltonian.
std::optional<Matrix> riccati_solution(const Matrix& f, const Matrix& g, const Matrix& q, bool stable) {
    const auto n = f.rows();
    Matrix h(2 * n, 2 * n);
    h << f, -g, -q, -f.transpose();
    try {
        const OrderedSchur schur =
            ordered_schur(h, [stable](std::complex<double> mu) { return stable ? mu.real() < 0.0 : mu.real() > 0.0; });
        if (schur.selected != n) return std::nullopt;
        const CMatrix u1 = schur.u.topLeftCorner(n, n);
        const CMatrix u2 = schur.u.bottomLeftCorner(n, n);
        const auto lu = u1.transpose().fullPivLu();
        if (!lu.isInvertible()) return std::nullopt;
        const CMatrix x = lu.solve(u2.transpose()).transpose();
        if (x.imag().norm() > 1e-6 * std::max(1.0, x.real().norm())) return std::nullopt;
        Matrix xr = x.real();
        return Matrix(0.5 * (xr + xr.transpose()));
    } catch (const Error&) {
        return std::nullopt;
    }
}

void attach_certificate(const StateSpace& ss, GainCertificate& cert, double tol) {
    const auto n = ss.states();
    const auto m = ss.inputs();
    const double gamma = std::max(cert.gamma * (1.0 + 10.0 * tol), cert.norm.bracket ? (*cert.norm.bracket)[1] + tol : 0.0);
    cert.certified_gamma = gamma;
    if (n == 0) return;
    const Matrix r = ss.d.transpose() * ss.d - gamma * gamma * Matrix::Identity(m, m);
    const auto r_lu = r.partialPivLu();
    const Matrix f = ss.a + cert.rate * Matrix::Identity(n, n) - ss.b * r_lu.solve(ss.d.transpose() * ss.c);
    const Matrix g = ss.b * r_lu.solve(ss.b.transpose());
    const Matrix q0 = ss.c.transpose() *
                      (Matrix::Identity(ss.outputs(), ss.outputs()) - ss.d * r_lu.solve(ss.d.transpose())) * ss.c;
    double eps_c = 1e-6 * (1.0 + (ss.c.transpose() * ss.c).norm());
    for (int attempt = 0; attempt < 24; ++attempt, eps_c *= 0.5) {
        const Matrix q = 0.5 * (q0 + q0.transpose()) + eps_c * Matrix::Identity(n, n);
        for (bool stable : {true, false}) {
            const auto x = riccati_solution(f, g, q, stable);
            if (!x) continue;
            const LmiCheck check = verify_gain_lmi(ss, *x, gamma, cert.rate, 0.5 * eps_c);
            if (check.valid && check.p_inertia == Inertia{cert.p, 0, static_cast<int>(n) - cert.p}) {
                cert.p_matrix = *x;
                cert.epsilon = 0.5 * eps_c;
                cert.lmi_residual = check.max_eigenvalue;
                return;
            }
        }
    }
}

}  // namespace

GainCertificate l2p_gain(const StateSpace& ss, int p, const Line& line, double tol, bool with_certificate) {
    (void)dominance_check(ss, p, line.rate());
    GainCertificate cert;
    cert.rate = line.rate();
    cert.p = p;
    cert.norm = line_norm_bisection(ss, line, tol);
    cert.gamma = cert.norm.value;
    cert.certified_gamma = cert.gamma;
    if (with_certificate) attach_certificate(ss, cert, tol);
    return cert;
}

StripGainReport strip_gain(const StateSpace& ss, int p, const Strip& strip, double tol, bool with_certificate) {
    StripGainReport out;
    out.lo = l2p_gain(ss, p, strip.lo_line(), tol, with_certificate);
    out.hi = l2p_gain(ss, p, strip.hi_line(), tol, with_certificate);
    out.attained_at = out.lo.gamma >= out.hi.gamma ? Boundary::lo : Boundary::hi;
    out.gamma = std::max(out.lo.gamma, out.hi.gamma);
    for (int j = 1; j <= 5; ++j) {
        const double rate = strip.lo() + (strip.hi() - strip.lo()) * j / 6.0;
        const double g = line_norm_bisection(ss, Line(rate), tol).value;
        out.interior.emplace_back(rate, g);
        if (g > out.gamma + tol) {
            fail(ErrorKind::NumericalFailure, "interior rate gain exceeds the endpoint maximum", g);
        }
    }
    return out;
}

namespace {

// (I + D2 D1)^-1, or IllPosed
Matrix loop_inverse(const StateSpace& ss1, const StateSpace& ss2) {
    ss1.validate();
    ss2.validate();
    if (ss1.outputs() != ss2.inputs() || ss2.outputs() != ss1.inputs()) {
        fail(ErrorKind::InvalidInput, "feedback interconnection dimensions do not match");
    }
    const int m = ss1.inputs();
    const Matrix loop = Matrix::Identity(m, m) + ss2.d * ss1.d;
    const Eigen::JacobiSVD<Matrix> svd(loop);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-12 * std::max(1.0, sv(0))) fail(ErrorKind::IllPosed, "algebraic loop I + D2 D1 is singular");
    return loop.inverse();
}

}  // namespace

StateSpace feedback_compose(const StateSpace& ss1, const StateSpace& ss2) {
    const Matrix e = loop_inverse(ss1, ss2);
    const int n1 = ss1.states();
    const int n2 = ss2.states();
    const int m = ss1.inputs();

    Matrix a(n1 + n2, n1 + n2);
    a.topLeftCorner(n1, n1) = ss1.a - ss1.b * e * ss2.d * ss1.c;
    a.topRightCorner(n1, n2) = -ss1.b * e * ss2.c;
    a.bottomLeftCorner(n2, n1) = ss2.b * ss1.c - ss2.b * ss1.d * e * ss2.d * ss1.c;
    a.bottomRightCorner(n2, n2) = ss2.a - ss2.b * ss1.d * e * ss2.c;
    Matrix b(n1 + n2, m);
    b.topRows(n1) = ss1.b * e;
    b.bottomRows(n2) = ss2.b * ss1.d * e;
    Matrix c(ss1.outputs(), n1 + n2);
    c.leftCols(n1) = ss1.c - ss1.d * e * ss2.d * ss1.c;
    c.rightCols(n2) = -ss1.d * e * ss2.c;
    return {a, b, c, ss1.d * e};
}

SmallGainReport small_gain_check(const StateSpace& ss1, int p1, const StateSpace& ss2, int p2, const Strip& strip,
                                 double tol) {
    (void)loop_inverse(ss1, ss2);
    SmallGainReport out;
    out.first = strip_gain(ss1, p1, strip, tol);
    out.second = strip_gain(ss2, p2, strip, tol);
    out.product = out.first.gamma * out.second.gamma;
    if (out.product >= 1.0) return out;
    out.closed_loop = feedback_compose(ss1, ss2);
    out.lo = dominance_check(*out.closed_loop, p1 + p2, strip.lo());
    out.hi = dominance_check(*out.closed_loop, p1 + p2, strip.hi());
    out.verdict = SmallGainVerdict::confirmed;
    return out;
}

std::string classify_attractors(int p) {
    switch (p) {
        case 0: return "unique equilibrium point";
        case 1: return "a (possibly non-unique) equilibrium point";
        case 2: return "equilibrium point, set of equilibria with connected arcs, or a limit cycle";
        default: return "no classification available";
    }
}

StateSpace close_at_slope(const StateSpace& linear, double slope) {
    linear.validate();
    if (!linear.is_siso()) fail(ErrorKind::Unsupported, "slope loop is single-input single-output only");
    const double den = 1.0 - slope * linear.d(0, 0);
    if (std::abs(den) < 1e-12) fail(ErrorKind::IllPosed, "algebraic loop at this slope", slope);
    return {linear.a + linear.b * (slope / den) * linear.c, linear.b / den, linear.c / den, linear.d / den};
}

SlopeGridBound sector_slope_gain(const SlopeLoop& loop, int p, const Line& line, double tol, int n_slopes) {
    if (n_slopes < 1) fail(ErrorKind::InvalidInput, "need at least one slope");
    if (!(loop.slope_lo <= loop.slope_hi)) fail(ErrorKind::InvalidInput, "slope interval is reversed");
    const int count = loop.slope_lo == loop.slope_hi ? 1 : n_slopes;
    SlopeGridBound out;
    out.gamma = -1.0;
    for (int k = 0; k < count; ++k) {
        const double slope =
            count == 1 ? loop.slope_lo : loop.slope_lo + (loop.slope_hi - loop.slope_lo) * k / (count - 1);
        const StateSpace closed = close_at_slope(loop.linear, slope);
        try {
            (void)dominance_check(closed, p, line.rate());
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotPDominant && e.kind() != ErrorKind::MarginalRate) throw;
            fail(ErrorKind::NotPDominantAtSlope, "closed loop is not p-dominant at slope " + std::to_string(slope),
                 slope);
        }
        const double g = line_norm_bisection(closed, line, tol).value;
        out.samples.emplace_back(slope, g);
        if (g > out.gamma) {
            out.gamma = g;
            out.worst_slope = slope;
        }
    }
    return out;
}

}  // namespace stripgain
