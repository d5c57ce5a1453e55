#include "bsqf/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsqf/error.hpp"

namespace bsqf {

ComplexMatrix DensityMatrix::sqrt() const {
  return matrix_fn(eigen_, MatrixFunction::Sqrt);
}

ComplexMatrix DensityMatrix::inv_sqrt() const {
  return matrix_fn(eigen_, MatrixFunction::Pow, -0.5);
}

ComplexMatrix DensityMatrix::inverse() const {
  return matrix_fn(eigen_, MatrixFunction::Inv);
}

ComplexMatrix DensityMatrix::log() const {
  return matrix_fn(eigen_, MatrixFunction::Log);
}

DensityMatrix validate_density(const ComplexMatrix& m, bool require_full_rank) {
  const double scale = std::max(1.0, m.frobenius_norm());
  const double defect = m.hermiticity_defect();
  if (defect > tolerance::kDensity * scale) {
    throw Error(ErrorCode::NotHermitian,
                "||M - M^dagger||_F = " + std::to_string(defect));
  }
  ComplexMatrix h = m.hermitian_part();
  HermitianEigen eig = hermitian_eig(h);
  if (eig.min_eigenvalue() < -tolerance::kDensity) {
    throw Error(ErrorCode::NotPositive,
                "min eigenvalue " + std::to_string(eig.min_eigenvalue()));
  }
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tolerance::kDensity) {
    throw Error(ErrorCode::TraceNotOne, "trace " + std::to_string(tr));
  }
  if (require_full_rank && eig.min_eigenvalue() <= tolerance::kFullRank) {
    throw Error(ErrorCode::NotFullRank,
                "min eigenvalue " + std::to_string(eig.min_eigenvalue()));
  }
  return DensityMatrix(std::move(h), std::move(eig));
}

BipartiteState::BipartiteState(DensityMatrix state, std::size_t d_a,
                               std::size_t d_b)
    : state_(std::move(state)), d_a_(d_a), d_b_(d_b) {
  if (d_a == 0 || d_b == 0 || state_.dim() != d_a * d_b) {
    throw Error(ErrorCode::DimensionMismatch,
                "state of dim " + std::to_string(state_.dim()) +
                    " is not " + std::to_string(d_a) + " x " +
                    std::to_string(d_b));
  }
}

DensityMatrix sample_ginibre_density(std::size_t d, Rng& rng) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  double last_min = 0.0;
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    const ComplexMatrix g = ginibre(d, rng);
    ComplexMatrix w = g * g.adjoint();
    w *= 1.0 / w.trace().real();
    DensityMatrix rho = validate_density(w);
    if (rho.full_rank()) return rho;
    last_min = rho.min_eigenvalue();
  }
  throw Error(ErrorCode::NotFullRank,
              "no full-rank sample in " + std::to_string(kMaxResamples) +
                  " draws (last min eigenvalue " + std::to_string(last_min) +
                  ")");
}

BipartiteState product_state(const DensityMatrix& a, const DensityMatrix& b) {
  return BipartiteState(validate_density(kron(a.matrix(), b.matrix())), a.dim(),
                        b.dim());
}

BipartiteState perturbed_product(const DensityMatrix& eta_a,
                                 const DensityMatrix& eta_b,
                                 const DensityMatrix& lambda_ab,
                                 double epsilon) {
  if (lambda_ab.dim() != eta_a.dim() * eta_b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "perturbation has dim " + std::to_string(lambda_ab.dim()));
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be finite and >= 0");
  }
  ComplexMatrix m = kron(eta_a.matrix(), eta_b.matrix());
  if (epsilon > 0.0) {
    m += lambda_ab.matrix() * Complex(epsilon);
    m *= 1.0 / m.trace().real();
  }
  return BipartiteState(validate_density(m), eta_a.dim(), eta_b.dim());
}

std::pair<DensityMatrix, DensityMatrix> marginals(const BipartiteState& s) {
  return {validate_density(
              partial_trace(s.matrix(), s.d_a(), s.d_b(), Subsystem::A)),
          validate_density(
              partial_trace(s.matrix(), s.d_a(), s.d_b(), Subsystem::B))};
}

BipartiteState werner_state(double p) {
  ComplexMatrix phi(4);
  phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
  ComplexMatrix m = phi * Complex(p) + ComplexMatrix::identity(4) * Complex((1.0 - p) / 4.0);
  return BipartiteState(validate_density(m), 2, 2);
}

}  // namespace bsqf
