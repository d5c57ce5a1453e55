#pragma once

#include <functional>
#include <vector>

#include "bsqf/matrix.hpp"

namespace bsqf {

/// Spectral decomposition M = V diag(eigenvalues) V^dagger with eigenvalues
/// ascending and the columns of V orthonormal.
struct HermitianEigen {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  double min_eigenvalue() const { return eigenvalues.front(); }
  double max_eigenvalue() const { return eigenvalues.back(); }

  /// V diag(f(lambda)) V^dagger.
  ComplexMatrix reconstruct(const std::function<double(double)>& f) const;
  ComplexMatrix reconstruct() const;
};

namespace tolerance {
/// Relative Hermiticity tolerance accepted by the eigensolver.
inline constexpr double kHermitian = 1e-10;
/// Eigenvalues at or below this are treated as zero for log/inv/negative
/// powers.
inline constexpr double kPositivityFloor = 1e-12;
/// Negative eigenvalues down to -kSqrtClamp are clamped to zero for sqrt and
/// positive powers.
inline constexpr double kSqrtClamp = 1e-12;
}  // namespace tolerance

struct JacobiOptions {
  int max_sweeps = 100;
  /// Converged once the off-diagonal Frobenius norm falls below
  /// relative_threshold * ||M||_F.
  double relative_threshold = 1e-14;
};

/// Cyclic complex Jacobi eigensolver.
///
/// The input is symmetrized to (M + M^dagger)/2 first. Throws NotHermitian
/// when ||M - M^dagger||_F exceeds 1e-10 * max(1, ||M||_F) and NoConvergence
/// when the sweep budget runs out.
HermitianEigen hermitian_eig(const ComplexMatrix& m, JacobiOptions options = {});

enum class MatrixFunction { Log, Sqrt, Inv, Exp, Pow };

/// Spectral calculus on a Hermitian matrix. `exponent` is only read for Pow.
ComplexMatrix matrix_fn(const ComplexMatrix& m, MatrixFunction f,
                        double exponent = 1.0);

/// Same, reusing an existing decomposition.
ComplexMatrix matrix_fn(const HermitianEigen& eig, MatrixFunction f,
                        double exponent = 1.0);

inline ComplexMatrix matrix_log(const ComplexMatrix& m) {
  return matrix_fn(m, MatrixFunction::Log);
}
inline ComplexMatrix matrix_sqrt(const ComplexMatrix& m) {
  return matrix_fn(m, MatrixFunction::Sqrt);
}
inline ComplexMatrix matrix_inv(const ComplexMatrix& m) {
  return matrix_fn(m, MatrixFunction::Inv);
}
inline ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  return matrix_fn(m, MatrixFunction::Exp);
}
inline ComplexMatrix matrix_pow(const ComplexMatrix& m, double t) {
  return matrix_fn(m, MatrixFunction::Pow, t);
}

enum class NormKind { Trace, Operator, Frobenius };

/// Schatten norms. Hermitian inputs use |eigenvalues| directly; anything else
/// goes through the eigenvalues of M^dagger M.
double norm(const ComplexMatrix& m, NormKind kind);

inline double trace_norm(const ComplexMatrix& m) {
  return norm(m, NormKind::Trace);
}
inline double operator_norm(const ComplexMatrix& m) {
  return norm(m, NormKind::Operator);
}

/// tr[A^dagger rho^{1/2} B rho^{1/2}] for positive semidefinite rho.
Complex kms_inner(const ComplexMatrix& a, const ComplexMatrix& b,
                  const ComplexMatrix& rho);

}  // namespace bsqf
