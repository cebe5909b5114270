#include "qsc/linalg.hpp"

#include <stdexcept>
#include <string>

namespace qsc::linalg {

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": expected a square matrix, got " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()));
  }
}

}  // namespace

ComplexMatrix identity(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("identity: dim must be >= 1");
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: dimension mismatch, " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " times " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  Complex acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < a.rows(); ++i) acc += a(i, i);
  return acc;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      m = std::max(m, std::abs(a(i, j)));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch, " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
  return max_abs(a - b);
}

double hermiticity_defect(const ComplexMatrix& a) {
  require_square(a, "hermiticity_defect");
  return max_abs(a - a.adjoint().eval());
}

double unitarity_defect(const ComplexMatrix& a) {
  require_square(a, "unitarity_defect");
  return max_abs(matmul(a, dagger(a)) - identity(a.rows()));
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return hermiticity_defect(a) <= tol;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  return unitarity_defect(a) <= tol;
}

HermitianEig hermitian_eig(const ComplexMatrix& a, double tol) {
  require_square(a, "hermitian_eig");
  const double defect = hermiticity_defect(a);
  if (defect > tol) {
    throw std::invalid_argument(
        "hermitian_eig: matrix is not Hermitian, max asymmetry " +
        std::to_string(defect) + " exceeds tolerance " + std::to_string(tol));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double t, double tol) {
  const HermitianEig eig = hermitian_eig(h, tol);
  const Eigen::Index n = h.rows();
  ComplexMatrix phases = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases(k, k) = std::exp(Complex(0.0, eig.eigenvalues(k) * t));
  }
  return matmul(matmul(eig.eigenvectors, phases), dagger(eig.eigenvectors));
}

double spectral_norm(const ComplexMatrix& a) { return a.operatorNorm(); }

}  // namespace qsc::linalg
