#include "stripgain/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "stripgain/error.hpp"
#include "stripgain/tolerances.hpp"

namespace stripgain {

namespace {

void require_square(const Matrix& a, const char* what) {
    if (a.rows() != a.cols()) fail(ErrorKind::InvalidInput, std::string(what) + ": matrix is not square");
    if (!a.allFinite()) fail(ErrorKind::InvalidInput, std::string(what) + ": matrix has non-finite entries");
}

}  // namespace

double sigma_min(const CMatrix& m) {
    if (m.size() == 0) return std::numeric_limits<double>::infinity();
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues().minCoeff();
}

// Diagonal similarity by powers of two so that row and column norms are
// comparable (Parlett-Reinsch). Companion matrices are badly scaled otherwise.
Matrix balanced(Matrix m) {
    const auto n = m.rows();
    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double col = m.col(i).lpNorm<1>() - std::abs(m(i, i));
            const double row = m.row(i).lpNorm<1>() - std::abs(m(i, i));
            if (col == 0.0 || row == 0.0) continue;
            double f = 1.0;
            double c = col;
            const double total = col + row;
            while (c < row / 2.0) {
                c *= 2.0;
                f *= 2.0;
            }
            while (c >= row * 2.0) {
                c /= 2.0;
                f /= 2.0;
            }
            if ((c + row / f) < 0.95 * total) {
                converged = false;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
    }
    return m;
}

double symmetry_defect(const Matrix& m) {
    const double scale = m.norm();
    if (scale == 0.0) return 0.0;
    return (m - m.transpose()).norm() / scale;
}

std::vector<std::complex<double>> eig(const Matrix& a) {
    require_square(a, "eig");
    const auto n = a.rows();
    if (n == 0) return {};
    Eigen::EigenSolver<Matrix> solver(a, false);
    std::vector<std::complex<double>> out;
    if (solver.info() == Eigen::Success) {
        out.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
    } else {
        // real Francis QR occasionally stalls on exactly structured input; the complex one does not
        Eigen::ComplexEigenSolver<CMatrix> fallback(a.cast<std::complex<double>>(), false);
        if (fallback.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "eigenvalue iteration did not converge");
        out.assign(fallback.eigenvalues().begin(), fallback.eigenvalues().end());
    }
    const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
    for (Eigen::Index k : {Eigen::Index{0}, n / 2, n - 1}) {
        const CMatrix shifted = a.cast<std::complex<double>>() - out[static_cast<std::size_t>(k)] * CMatrix::Identity(n, n);
        if (sigma_min(shifted) > tol::eig * scale) fail(ErrorKind::NumericalFailure, "eigenvalue residual check failed");
    }
    return out;
}

std::vector<double> sym_eig(const Matrix& m) {
    require_square(m, "sym_eig");
    if (symmetry_defect(m) > tol::sym) fail(ErrorKind::InvalidInput, "sym_eig: matrix is not symmetric");
    if (m.rows() == 0) return {};
    const Matrix s = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "symmetric eigenvalues did not converge");
    return {solver.eigenvalues().begin(), solver.eigenvalues().end()};
}

Matrix lyap_solve(const Matrix& a, const Matrix& q) {
    require_square(a, "lyap_solve");
    if (q.rows() != a.rows() || q.cols() != a.cols()) fail(ErrorKind::InvalidInput, "lyap_solve: Q has wrong shape");
    const auto n = a.rows();
    if (n == 0) return Matrix(0, 0);
    Eigen::ComplexSchur<CMatrix> schur(a.cast<std::complex<double>>());
    if (schur.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "Schur decomposition did not converge");
    const CMatrix& u = schur.matrixU();
    const CMatrix& t = schur.matrixT();
    const CMatrix c = -(u.adjoint() * q.cast<std::complex<double>>() * u);
    // T^H Y + Y T = C, solved entrywise in increasing (i, j).
    CMatrix y = CMatrix::Zero(n, n);
    const double scale = std::max(a.norm(), 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            std::complex<double> acc = c(i, j);
            for (Eigen::Index k = 0; k < i; ++k) acc -= std::conj(t(k, i)) * y(k, j);
            for (Eigen::Index k = 0; k < j; ++k) acc -= y(i, k) * t(k, j);
            const std::complex<double> pivot = std::conj(t(i, i)) + t(j, j);
            if (std::abs(pivot) <= tol::eig * scale) {
                fail(ErrorKind::SingularSylvester, "A has eigenvalues symmetric about the imaginary axis");
            }
            y(i, j) = acc / pivot;
        }
    }
    Matrix p = (u * y * u.adjoint()).real();
    p = 0.5 * (p + p.transpose()).eval();
    const double residual = (a.transpose() * p + p * a + q).norm();
    if (residual > tol::lyap * (a.norm() * p.norm() + q.norm())) {
        fail(ErrorKind::NumericalFailure, "Lyapunov residual check failed");
    }
    return p;
}

CMatrix triangular_sylvester(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
    const auto m = a.rows();
    const auto n = b.rows();
    CMatrix x = CMatrix::Zero(m, n);
    const double scale = std::max({a.norm(), b.norm(), 1.0});
    for (Eigen::Index i = m - 1; i >= 0; --i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            std::complex<double> acc = c(i, j);
            for (Eigen::Index k = i + 1; k < m; ++k) acc -= a(i, k) * x(k, j);
            for (Eigen::Index k = 0; k < j; ++k) acc += x(i, k) * b(k, j);
            const std::complex<double> pivot = a(i, i) - b(j, j);
            if (std::abs(pivot) <= tol::eig * scale) fail(ErrorKind::SingularSylvester, "spectra overlap");
            x(i, j) = acc / pivot;
        }
    }
    return x;
}

Matrix expm(const Matrix& a, double h) {
    require_square(a, "expm");
    if (a.rows() == 0) return Matrix(0, 0);
    // Padé scaling and squaring; substep so each factor stays well inside its range.
    const double size = a.lpNorm<Eigen::Infinity>() * std::abs(h);
    const int steps = size > 64.0 ? static_cast<int>(std::ceil(size / 64.0)) : 1;
    const Matrix step = (a * (h / steps)).exp();
    Matrix out = step;
    for (int k = 1; k < steps; ++k) out = (out * step).eval();
    return out;
}

Vector lti_propagate(const Matrix& a, const Vector& x0, double h) {
    if (h < 0.0) fail(ErrorKind::InvalidInput, "lti_propagate: negative step");
    if (x0.size() != a.rows()) fail(ErrorKind::InvalidInput, "lti_propagate: state has wrong size");
    if (h == 0.0 || a.rows() == 0) return x0;
    return expm(a, h) * x0;
}

namespace {

// Swaps the adjacent diagonal entries k, k+1 of the upper-triangular T with a
// Givens rotation, updating U so that A = U T U^H is preserved.
void swap_adjacent(CMatrix& t, CMatrix& u, Eigen::Index k) {
    const std::complex<double> t11 = t(k, k);
    const std::complex<double> t22 = t(k + 1, k + 1);
    const std::complex<double> v0 = t(k, k + 1);
    const std::complex<double> v1 = t22 - t11;
    const double r = std::hypot(std::abs(v0), std::abs(v1));
    if (r == 0.0) return;
    const std::complex<double> c = v0 / r;
    const std::complex<double> s = v1 / r;
    Eigen::Matrix2cd q;
    q << c, -std::conj(s), s, std::conj(c);
    t.middleRows(k, 2) = (q.adjoint() * t.middleRows(k, 2)).eval();
    t.middleCols(k, 2) = (t.middleCols(k, 2) * q).eval();
    u.middleCols(k, 2) = (u.middleCols(k, 2) * q).eval();
    t(k + 1, k) = 0.0;
}

}  // namespace

OrderedSchur ordered_schur(const Matrix& a, const std::function<bool(std::complex<double>)>& select) {
    require_square(a, "ordered_schur");
    const auto n = a.rows();
    OrderedSchur out;
    if (n == 0) {
        out.u = CMatrix(0, 0);
        out.t = CMatrix(0, 0);
        return out;
    }
    Eigen::ComplexSchur<CMatrix> schur(a.cast<std::complex<double>>());
    if (schur.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "Schur decomposition did not converge");
    out.u = schur.matrixU();
    out.t = schur.matrixT();
    Eigen::Index pos = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!select(out.t(j, j))) continue;
        for (Eigen::Index k = j - 1; k >= pos; --k) swap_adjacent(out.t, out.u, k);
        ++pos;
    }
    out.selected = static_cast<int>(pos);
    return out;
}

Matrix real_basis(const CMatrix& v, int dim) {
    const auto n = v.rows();
    if (dim == 0) return Matrix(n, 0);
    Matrix stacked(n, 2 * v.cols());
    stacked << v.real(), v.imag();
    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv(dim - 1) <= 1e-10 * sv(0)) fail(ErrorKind::NumericalFailure, "invariant subspace is not real of full rank");
    return svd.matrixU().leftCols(dim);
}

}  // namespace stripgain
