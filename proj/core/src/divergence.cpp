#include "bsqf/divergence.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "bsqf/error.hpp"

namespace bsqf {

namespace {

void require_pair(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "divergence of dim " + std::to_string(rho.dim()) + " vs " +
                    std::to_string(sigma.dim()));
  }
  if (!rho.full_rank() || !sigma.full_rank()) {
    throw Error(ErrorCode::NotFullRank,
                "divergence requires full-rank states (min eigenvalues " +
                    std::to_string(rho.min_eigenvalue()) + ", " +
                    std::to_string(sigma.min_eigenvalue()) + ")");
  }
}

void require_bipartite_pair(const BipartiteState& rho,
                            const BipartiteState& sigma) {
  if (rho.d_a() != sigma.d_a() || rho.d_b() != sigma.d_b()) {
    throw Error(ErrorCode::DimensionMismatch, "bipartite dimensions differ");
  }
}

// The marginal that is traced out of the conditional: conditioning on A
// subtracts the divergence of the B-marginals.
Subsystem complement(Subsystem s) {
  return s == Subsystem::A ? Subsystem::B : Subsystem::A;
}

DensityMatrix marginal(const BipartiteState& s, Subsystem keep) {
  return validate_density(partial_trace(s.matrix(), s.d_a(), s.d_b(), keep));
}

}  // namespace

// Both divergences are summed as weighted log1p terms of quantities that
// vanish when rho == sigma. Writing log(l) - log(m) or log(l / m) instead
// costs about one ulp of absolute accuracy per term, which dominates the
// result for nearly equal states.

DivergenceValue umegaki(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_pair(rho, sigma);
  // D = sum_ij l_i |<r_i|s_j>|^2 log(l_i / m_j), using sum_j |<r_i|s_j>|^2 = 1.
  const std::vector<double>& l = rho.eigen().eigenvalues;
  const std::vector<double>& m = sigma.eigen().eigenvalues;
  const ComplexMatrix overlap =
      rho.eigen().eigenvectors.adjoint() * sigma.eigen().eigenvectors;
  double value = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      row += std::norm(overlap(i, j)) * std::log1p((l[i] - m[j]) / m[j]);
    }
    value += l[i] * row;
  }
  return {value, sigma.min_eigenvalue() < tolerance::kConditioning};
}

DivergenceValue bs_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_pair(rho, sigma);
  // rho^{1/2} sigma^{-1} rho^{1/2} and T = sigma^{-1/2} rho sigma^{-1/2} share
  // their spectrum, and tr[rho log(rho^{1/2} sigma^{-1} rho^{1/2})] =
  // tr[sigma T log T]. T - 1 = sigma^{-1/2} (rho - sigma) sigma^{-1/2} is
  // formed directly so that nearly equal states keep full relative accuracy.
  const ComplexMatrix w = sigma.inv_sqrt();
  const HermitianEigen shifted =
      hermitian_eig((w * (rho.matrix() - sigma.matrix()) * w).hermitian_part());
  const ComplexMatrix& v = shifted.eigenvectors;
  const ComplexMatrix weights = v.adjoint() * sigma.matrix() * v;
  double value = 0.0;
  for (std::size_t k = 0; k < shifted.eigenvalues.size(); ++k) {
    const double delta = shifted.eigenvalues[k];
    if (!(delta > -1.0)) {
      throw Error(ErrorCode::SingularOperator,
                  "sigma^{-1/2} rho sigma^{-1/2} lost positivity");
    }
    value += weights(k, k).real() * (1.0 + delta) * std::log1p(delta);
  }
  return {value, sigma.min_eigenvalue() < tolerance::kConditioning};
}

DivergenceValue conditional_umegaki(const BipartiteState& rho,
                                    const BipartiteState& sigma,
                                    Subsystem cond_on) {
  require_bipartite_pair(rho, sigma);
  const Subsystem kept = complement(cond_on);
  const DivergenceValue global = umegaki(rho.state(), sigma.state());
  const DivergenceValue local = umegaki(marginal(rho, kept), marginal(sigma, kept));
  return {global.value - local.value,
          global.ill_conditioned || local.ill_conditioned};
}

DivergenceValue conditional_bs(const BipartiteState& rho,
                               const BipartiteState& sigma, Subsystem cond_on) {
  require_bipartite_pair(rho, sigma);
  const Subsystem kept = complement(cond_on);
  const DivergenceValue global = bs_entropy(rho.state(), sigma.state());
  const DivergenceValue local =
      bs_entropy(marginal(rho, kept), marginal(sigma, kept));
  return {global.value - local.value,
          global.ill_conditioned || local.ill_conditioned};
}

}  // namespace bsqf
