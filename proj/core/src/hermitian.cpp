#include "bsqf/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bsqf/error.hpp"

namespace bsqf {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Annihilates a(p,q) with U = diag(1, conj(phase)) * [[c, s], [-s, c]] acting
// on the (p,q) plane: a <- U^dagger a U, v <- v U.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex z = a(p, q);
  const double r = std::abs(z);
  const Complex phase_conj = std::conj(z / r);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * r);
  double t;
  if (std::abs(tau) > 1e150) {
    t = 0.5 / tau;
  } else {
    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex upp = c;
  const Complex upq = s;
  const Complex uqp = -s * phase_conj;
  const Complex uqq = c * phase_conj;

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }

  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;
}

bool singular_sensitive(MatrixFunction f, double exponent) {
  return f == MatrixFunction::Log || f == MatrixFunction::Inv ||
         (f == MatrixFunction::Pow && exponent < 0.0);
}

double apply_scalar(MatrixFunction f, double exponent, double x) {
  switch (f) {
    case MatrixFunction::Log: return std::log(x);
    case MatrixFunction::Sqrt: return std::sqrt(x);
    case MatrixFunction::Inv: return 1.0 / x;
    case MatrixFunction::Exp: return std::exp(x);
    case MatrixFunction::Pow: return std::pow(x, exponent);
  }
  return x;
}

}  // namespace

ComplexMatrix HermitianEigen::reconstruct(
    const std::function<double(double)>& f) const {
  const std::size_t n = eigenvectors.dim();
  std::vector<double> fl(n);
  for (std::size_t k = 0; k < n; ++k) fl[k] = f(eigenvalues[k]);
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eigenvectors(i, k) * fl[k] * std::conj(eigenvectors(j, k));
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
  return out;
}

ComplexMatrix HermitianEigen::reconstruct() const {
  return reconstruct([](double x) { return x; });
}

HermitianEigen hermitian_eig(const ComplexMatrix& m, JacobiOptions options) {
  const double scale = std::max(1.0, m.frobenius_norm());
  const double defect = m.hermiticity_defect();
  if (defect > tolerance::kHermitian * scale) {
    throw Error(ErrorCode::NotHermitian,
                "||M - M^dagger||_F = " + std::to_string(defect));
  }

  ComplexMatrix a = m.hermitian_part();
  const std::size_t n = a.dim();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = options.relative_threshold * a.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == options.max_sweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        // Entries already below rounding of both diagonal elements are dropped
        // instead of rotated.
        const double g = 100.0 * r;
        if (sweep > 3 && std::abs(a(p, p).real()) + g == std::abs(a(p, p).real()) &&
            std::abs(a(q, q).real()) + g == std::abs(a(q, q).real())) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi did not converge within " +
                    std::to_string(options.max_sweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix matrix_fn(const HermitianEigen& eig, MatrixFunction f,
                        double exponent) {
  const double lmin = eig.min_eigenvalue();
  if (singular_sensitive(f, exponent)) {
    if (lmin <= tolerance::kPositivityFloor) {
      throw Error(ErrorCode::SingularOperator,
                  "eigenvalue " + std::to_string(lmin) +
                      " at or below positivity floor");
    }
    return eig.reconstruct(
        [&](double x) { return apply_scalar(f, exponent, x); });
  }
  if (f == MatrixFunction::Sqrt || f == MatrixFunction::Pow) {
    if (lmin < -tolerance::kSqrtClamp) {
      throw Error(ErrorCode::SingularOperator,
                  "negative eigenvalue " + std::to_string(lmin));
    }
    return eig.reconstruct(
        [&](double x) { return apply_scalar(f, exponent, std::max(x, 0.0)); });
  }
  return eig.reconstruct([&](double x) { return apply_scalar(f, exponent, x); });
}

ComplexMatrix matrix_fn(const ComplexMatrix& m, MatrixFunction f,
                        double exponent) {
  return matrix_fn(hermitian_eig(m), f, exponent);
}

double norm(const ComplexMatrix& m, NormKind kind) {
  if (kind == NormKind::Frobenius) return m.frobenius_norm();

  std::vector<double> singular;
  const double scale = std::max(1.0, m.frobenius_norm());
  if (m.hermiticity_defect() <= tolerance::kHermitian * scale) {
    for (double l : hermitian_eig(m).eigenvalues) singular.push_back(std::abs(l));
  } else {
    for (double l : hermitian_eig(m.adjoint() * m).eigenvalues)
      singular.push_back(std::sqrt(std::max(l, 0.0)));
  }
  if (kind == NormKind::Operator) {
    return *std::max_element(singular.begin(), singular.end());
  }
  return std::accumulate(singular.begin(), singular.end(), 0.0);
}

Complex kms_inner(const ComplexMatrix& a, const ComplexMatrix& b,
                  const ComplexMatrix& rho) {
  if (a.dim() != b.dim() || a.dim() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "kms_inner operand dimensions");
  }
  const ComplexMatrix root = matrix_sqrt(rho);
  return trace_product(a.adjoint(), root * b * root);
}

}  // namespace bsqf
