#pragma once

#include "bsqf/states.hpp"

namespace bsqf {

namespace tolerance {
/// A reference state with min eigenvalue below this gets its divergence
/// flagged as ill-conditioned (the value is still computed exactly).
inline constexpr double kConditioning = 1e-6;
}  // namespace tolerance

/// A relative entropy in nats.
struct DivergenceValue {
  double value = 0.0;
  bool ill_conditioned = false;

  operator double() const noexcept { return value; }
};

/// Umegaki relative entropy tr[rho (log rho - log sigma)].
DivergenceValue umegaki(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Belavkin-Staszewski relative entropy tr[rho log(rho^{1/2} sigma^{-1}
/// rho^{1/2})]. Both states must be full rank.
DivergenceValue bs_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// D(rho_AB || sigma_AB) - D(rho_{B} || sigma_{B}) for cond_on = A, and the
/// mirror image for B.
DivergenceValue conditional_umegaki(const BipartiteState& rho,
                                    const BipartiteState& sigma,
                                    Subsystem cond_on);

DivergenceValue conditional_bs(const BipartiteState& rho,
                               const BipartiteState& sigma, Subsystem cond_on);

}  // namespace bsqf
