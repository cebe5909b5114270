#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qsc::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Default absolute max-norm tolerance for Hermiticity/unitarity certification.
inline constexpr double kCertTol = 1e-12;

ComplexMatrix identity(Eigen::Index dim);

// Plain triple-loop product with a fixed accumulation order, so that
// dagger(matmul(a, b)) == matmul(dagger(b), dagger(a)) holds bitwise.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix dagger(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// max |A[i][j] - conj(A[j][i])|
double hermiticity_defect(const ComplexMatrix& a);
// max-norm of A*dagger(A) - I
double unitarity_defect(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = kCertTol);
bool is_unitary(const ComplexMatrix& a, double tol = kCertTol);

struct HermitianEig {
  Eigen::VectorXd eigenvalues;  // ascending
  ComplexMatrix eigenvectors;   // orthonormal columns, same order
};

// Throws std::invalid_argument with the measured asymmetry when the input is
// not Hermitian within tol.
HermitianEig hermitian_eig(const ComplexMatrix& a, double tol = kCertTol);

// e^{i*h*t} via eigendecomposition; unitary by construction up to solver error.
ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double t,
                               double tol = kCertTol);

// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

}  // namespace qsc::linalg
