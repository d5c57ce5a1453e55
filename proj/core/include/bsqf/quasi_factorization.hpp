#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bsqf/divergence.hpp"
#include "bsqf/states.hpp"

namespace bsqf {

namespace tolerance {
/// Slack allowed on every inequality check at d <= 4.
inline constexpr double kInequality = 1e-9;
}  // namespace tolerance

/// Which weak quasi-factorization bound a report evaluates.
///   T1      - multiplicative factor from sigma_min and ||sigma - sigma_A (x) sigma_B||,
///             additive factor from the KMS inner product.
///   T2      - multiplicative factor 1/(1 - 2||H(sigma)||), additive factor from
///             the eta_A, eta_B distances.
///   Umegaki - the strong quasi-factorization of the Umegaki relative entropy,
///             used as a comparator.
enum class Theorem { T1, T2, Umegaki };

std::string_view to_string(Theorem t) noexcept;
Theorem theorem_from_string(std::string_view name);

/// (sigma_A^{-1/2} (x) sigma_B^{-1/2}) sigma (sigma_A^{-1/2} (x) sigma_B^{-1/2}) - 1.
/// Zero exactly when sigma is a product state.
ComplexMatrix h_operator(const BipartiteState& sigma);

struct Theorem1Factors {
  bool applicable = false;
  double multiplicative = 0.0;  // NaN when not applicable
  double additive = 0.0;        // NaN when not applicable
  double sigma_min = 0.0;
  /// ||sigma_AB - sigma_A (x) sigma_B||_inf
  double product_deviation = 0.0;
  /// product_deviation * sigma_min^{-2}; must stay below threshold. A
  /// deviation at rounding level (<= 16 eps d_A d_B) enters as exactly 0.
  double hypothesis = 0.0;
  double threshold = 0.0;
  /// <sigma_A (x) sigma_B, sigma_A^{-1} (x) sigma_B^{-1}>_{rho_A (x) rho_B}
  double kms_product = 0.0;

  /// Throws NotApplicable carrying the hypothesis magnitude.
  void require_applicable() const;
};

Theorem1Factors theorem1_factors(const BipartiteState& rho,
                                 const BipartiteState& sigma);

struct Theorem2Factors {
  bool applicable = false;
  double multiplicative = 0.0;  // NaN when not applicable
  double additive = 0.0;        // NaN when not applicable
  double h_norm = 0.0;
  /// sigma^{1/2} rho^{1/2} sigma^{-1} rho^{1/2} sigma^{1/2} on each marginal.
  ComplexMatrix eta_a{1};
  ComplexMatrix eta_b{1};
  double eta_a_dist = 0.0;  // ||eta_A - rho_A||_1
  double eta_b_dist = 0.0;

  void require_applicable() const;
};

Theorem2Factors theorem2_factors(const BipartiteState& rho,
                                 const BipartiteState& sigma);

/// One evaluation of
///   lhs = D(rho || sigma) <= mult * (cond_a + cond_b) + add = rhs.
/// Always filled, even when the hypothesis fails; rhs and gap are then NaN.
struct QFReport {
  Theorem theorem = Theorem::T1;
  bool applicable = false;
  /// sigma_min below the conditioning threshold; excluded from statistics.
  bool ill_conditioned = false;
  double multiplicative = 0.0;
  double additive = 0.0;
  double lhs = 0.0;
  double cond_a = 0.0;
  double cond_b = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double h_norm = 0.0;
  double sigma_min = 0.0;
};

QFReport evaluate_qf(const BipartiteState& rho, const BipartiteState& sigma,
                     Theorem theorem);

/// D_BS(rho_AB || sigma_A (x) sigma_B) - D_BS(rho_A || sigma_A) -
/// D_BS(rho_B || sigma_B). Negative values are superadditivity violations.
double superadditivity_gap(const BipartiteState& rho,
                           const DensityMatrix& sigma_a,
                           const DensityMatrix& sigma_b);

/// Every intermediate quantity of the proof chain for one (rho, sigma) pair.
///
/// Chain checked by violations():
///   bs_gap <= neg_rel_omega <= omega_log_trace <= step1_rhs      (step 1)
///   step1_rhs <= step2_rhs                                        (step 2)
///   y_ab + x_a + x_b - 2 == z_ab + x_a * x_b - 1                  (identity)
///   z_ab <= step3_rhs                                             (step 3)
///   step2_rhs <= step3bis_rhs                                     (step 3')
///   ||sigma_A^{-1}||_inf <= sigma_min^{-1} / d_B, and mirrored for B
struct StepDiagnostics {
  double bs_gap = 0.0;
  double neg_rel_omega = 0.0;
  double omega_log_trace = 0.0;
  double step1_rhs = 0.0;
  double y_ab = 0.0;
  double x_a = 0.0;
  double x_b = 0.0;
  double z_ab = 0.0;
  double step2_rhs = 0.0;
  double step3_rhs = 0.0;
  double step3bis_rhs = 0.0;
  double eta_a_dist = 0.0;
  double eta_b_dist = 0.0;
  double sigma_a_inv_norm = 0.0;
  double sigma_b_inv_norm = 0.0;
  double sigma_a_inv_bound = 0.0;
  double sigma_b_inv_bound = 0.0;

  /// Names of the links in the chain that fail by more than `tol`.
  std::vector<std::string> violations(double tol = tolerance::kInequality) const;
};

StepDiagnostics step_diagnostics(const BipartiteState& rho,
                                 const BipartiteState& sigma);

struct TracePair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// tr e^{X+Y} and tr[e^X e^Y] for Hermitian X, Y.
TracePair golden_thompson_check(const ComplexMatrix& x, const ComplexMatrix& y);

/// ||eta - rho||_1 against the commutator bound c^2 + 2c with
/// c = ||[rho^{1/2}, sigma^{-1/2}]||_inf. normality_defect is
/// ||X X^dagger - X^dagger X||_inf for X = rho^{1/2} sigma^{-1/2}.
struct CommutatorBound {
  double eta_distance = 0.0;
  double commutator_norm = 0.0;
  double bound = 0.0;
  double normality_defect = 0.0;
};

CommutatorBound commutator_bound(const DensityMatrix& rho,
                                 const DensityMatrix& sigma);

/// eta = sigma^{1/2} rho^{1/2} sigma^{-1} rho^{1/2} sigma^{1/2}, Hermitized.
ComplexMatrix eta_operator(const DensityMatrix& rho, const DensityMatrix& sigma);

void to_json(nlohmann::json& j, const QFReport& r);
void from_json(const nlohmann::json& j, QFReport& r);
void to_json(nlohmann::json& j, const StepDiagnostics& d);

}  // namespace bsqf
