#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace stripgain {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Eigenvalues of a real square matrix, verified by sigma_min(A - mu I) on a sample.
[[nodiscard]] std::vector<std::complex<double>> eig(const Matrix& a);

/// Ascending eigenvalues of a symmetric matrix.
[[nodiscard]] std::vector<double> sym_eig(const Matrix& m);

/// Solves A^T P + P A = -Q for symmetric P by Bartels-Stewart on the complex Schur form.
[[nodiscard]] Matrix lyap_solve(const Matrix& a, const Matrix& q);

/// Solves A X - X B = C (complex), both A and B upper triangular.
[[nodiscard]] CMatrix triangular_sylvester(const CMatrix& a, const CMatrix& b, const CMatrix& c);

/// e^{A h} x0.
[[nodiscard]] Vector lti_propagate(const Matrix& a, const Vector& x0, double h);
/// e^{A h}; substeps when ||A|| h is large.
[[nodiscard]] Matrix expm(const Matrix& a, double h);

/// Complex Schur form A = U T U^H with the eigenvalues satisfying `select`
/// moved to the leading block of T.
struct OrderedSchur {
    CMatrix u;
    CMatrix t;
    int selected = 0;
};

[[nodiscard]] OrderedSchur ordered_schur(const Matrix& a,
                                         const std::function<bool(std::complex<double>)>& select);

/// Real orthonormal basis of the real subspace spanned by the complex columns of `v`
/// (assumed conjugation-closed), with `dim` columns.
[[nodiscard]] Matrix real_basis(const CMatrix& v, int dim);

/// Diagonal similarity (powers of two) equalizing row and column norms.
[[nodiscard]] Matrix balanced(Matrix m);

[[nodiscard]] double symmetry_defect(const Matrix& m);
[[nodiscard]] double sigma_min(const CMatrix& m);

}  // namespace stripgain
