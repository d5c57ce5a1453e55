#include "bsqf/quasi_factorization.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bsqf/error.hpp"

namespace bsqf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kProductRoundoff = 16.0 * std::numeric_limits<double>::epsilon();

void require_full_rank_pair(const BipartiteState& rho,
                            const BipartiteState& sigma) {
  if (rho.d_a() != sigma.d_a() || rho.d_b() != sigma.d_b()) {
    throw Error(ErrorCode::DimensionMismatch, "bipartite dimensions differ");
  }
  if (!rho.state().full_rank() || !sigma.state().full_rank()) {
    throw Error(ErrorCode::NotFullRank, "quasi-factorization needs full rank");
  }
}

// Marginals and the product reference, computed once per pair.
struct PairContext {
  explicit PairContext(const BipartiteState& r, const BipartiteState& s)
      : rho(r),
        sigma(s),
        rho_marg(marginals(r)),
        sigma_marg(marginals(s)),
        sigma_product(kron(sigma_a().matrix(), sigma_b().matrix())),
        sigma_min(s.state().min_eigenvalue()) {}

  const DensityMatrix& rho_a() const { return rho_marg.first; }
  const DensityMatrix& rho_b() const { return rho_marg.second; }
  const DensityMatrix& sigma_a() const { return sigma_marg.first; }
  const DensityMatrix& sigma_b() const { return sigma_marg.second; }
  double dims() const { return static_cast<double>(rho.d_a() * rho.d_b()); }

  const BipartiteState& rho;
  const BipartiteState& sigma;
  std::pair<DensityMatrix, DensityMatrix> rho_marg;
  std::pair<DensityMatrix, DensityMatrix> sigma_marg;
  ComplexMatrix sigma_product;
  double sigma_min;
};

double h_norm_of(const PairContext& ctx) {
  const ComplexMatrix w = kron(ctx.sigma_a().inv_sqrt(), ctx.sigma_b().inv_sqrt());
  ComplexMatrix h = w * ctx.sigma.matrix() * w;
  h -= ComplexMatrix::identity(h.dim());
  return operator_norm(h.hermitian_part());
}

Theorem1Factors theorem1_from(const PairContext& ctx) {
  Theorem1Factors f;
  f.sigma_min = ctx.sigma_min;
  f.product_deviation =
      operator_norm(ctx.sigma.matrix() - ctx.sigma_product);
  // For an exact product the computed deviation is pure rounding (partial
  // trace and kron), yet sigma_min^{-2} would amplify it into a visible
  // M - 1. Below the rounding floor it counts as zero.
  const double deviation =
      f.product_deviation <= kProductRoundoff * ctx.dims() ? 0.0 : f.product_deviation;
  f.hypothesis = deviation / (ctx.sigma_min * ctx.sigma_min);
  f.threshold = ctx.dims() / 2.0;
  f.kms_product =
      kms_inner(ctx.sigma_product,
                kron(ctx.sigma_a().inverse(), ctx.sigma_b().inverse()),
                kron(ctx.rho_a().matrix(), ctx.rho_b().matrix()))
          .real();
  f.applicable = f.hypothesis < f.threshold;
  if (f.applicable) {
    f.multiplicative = 1.0 / (1.0 - 2.0 * f.hypothesis / ctx.dims());
    f.additive = f.multiplicative * (f.kms_product - 1.0);
  } else {
    f.multiplicative = kNaN;
    f.additive = kNaN;
  }
  return f;
}

Theorem2Factors theorem2_from(const PairContext& ctx) {
  Theorem2Factors f;
  f.h_norm = h_norm_of(ctx);
  f.eta_a = eta_operator(ctx.rho_a(), ctx.sigma_a());
  f.eta_b = eta_operator(ctx.rho_b(), ctx.sigma_b());
  f.eta_a_dist = trace_norm(f.eta_a - ctx.rho_a().matrix());
  f.eta_b_dist = trace_norm(f.eta_b - ctx.rho_b().matrix());
  f.applicable = f.h_norm < 0.5;
  if (f.applicable) {
    f.multiplicative = 1.0 / (1.0 - 2.0 * f.h_norm);
    f.additive = (1.0 + 2.0 * f.h_norm) / (1.0 - 2.0 * f.h_norm) *
                 (f.eta_a_dist * f.eta_b_dist + f.eta_a_dist + f.eta_b_dist);
  } else {
    f.multiplicative = kNaN;
    f.additive = kNaN;
  }
  return f;
}

std::string describe(const char* what, double value, double limit) {
  return std::string(what) + " = " + std::to_string(value) +
         " (limit " + std::to_string(limit) + ")";
}

}  // namespace

std::string_view to_string(Theorem t) noexcept {
  switch (t) {
    case Theorem::T1: return "T1";
    case Theorem::T2: return "T2";
    case Theorem::Umegaki: return "Umegaki";
  }
  return "?";
}

Theorem theorem_from_string(std::string_view name) {
  if (name == "T1") return Theorem::T1;
  if (name == "T2") return Theorem::T2;
  if (name == "Umegaki") return Theorem::Umegaki;
  throw Error(ErrorCode::ParseError, "unknown theorem '" + std::string(name) + "'");
}

ComplexMatrix h_operator(const BipartiteState& sigma) {
  if (!sigma.state().full_rank()) {
    throw Error(ErrorCode::NotFullRank, "H(sigma) needs a full-rank sigma");
  }
  const auto [sa, sb] = marginals(sigma);
  const ComplexMatrix w = kron(sa.inv_sqrt(), sb.inv_sqrt());
  ComplexMatrix h = w * sigma.matrix() * w;
  h -= ComplexMatrix::identity(h.dim());
  return h.hermitian_part();
}

ComplexMatrix eta_operator(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const ComplexMatrix s_half = sigma.sqrt();
  const ComplexMatrix r_half = rho.sqrt();
  return (s_half * r_half * sigma.inverse() * r_half * s_half).hermitian_part();
}

void Theorem1Factors::require_applicable() const {
  if (!applicable) {
    throw Error(ErrorCode::NotApplicable,
                describe("||sigma - sigma_A x sigma_B|| * sigma_min^-2",
                         hypothesis, threshold));
  }
}

void Theorem2Factors::require_applicable() const {
  if (!applicable) {
    throw Error(ErrorCode::NotApplicable, describe("||H(sigma)||", h_norm, 0.5));
  }
}

Theorem1Factors theorem1_factors(const BipartiteState& rho,
                                 const BipartiteState& sigma) {
  require_full_rank_pair(rho, sigma);
  return theorem1_from(PairContext(rho, sigma));
}

Theorem2Factors theorem2_factors(const BipartiteState& rho,
                                 const BipartiteState& sigma) {
  require_full_rank_pair(rho, sigma);
  return theorem2_from(PairContext(rho, sigma));
}

QFReport evaluate_qf(const BipartiteState& rho, const BipartiteState& sigma,
                     Theorem theorem) {
  require_full_rank_pair(rho, sigma);
  const PairContext ctx(rho, sigma);

  QFReport r;
  r.theorem = theorem;
  r.sigma_min = ctx.sigma_min;
  r.h_norm = h_norm_of(ctx);

  DivergenceValue (*div)(const DensityMatrix&, const DensityMatrix&) =
      theorem == Theorem::Umegaki ? &umegaki : &bs_entropy;
  const DivergenceValue global = div(rho.state(), sigma.state());
  const DivergenceValue on_a = div(ctx.rho_a(), ctx.sigma_a());
  const DivergenceValue on_b = div(ctx.rho_b(), ctx.sigma_b());
  r.lhs = global.value;
  r.cond_a = global.value - on_b.value;
  r.cond_b = global.value - on_a.value;

  switch (theorem) {
    case Theorem::T1: {
      const Theorem1Factors f = theorem1_from(ctx);
      r.applicable = f.applicable;
      r.multiplicative = f.multiplicative;
      r.additive = f.additive;
      r.ill_conditioned = ctx.sigma_min < tolerance::kConditioning;
      break;
    }
    case Theorem::T2: {
      const Theorem2Factors f = theorem2_from(ctx);
      r.applicable = f.applicable;
      r.multiplicative = f.multiplicative;
      r.additive = f.additive;
      break;
    }
    case Theorem::Umegaki:
      r.applicable = r.h_norm < 0.5;
      r.multiplicative = r.applicable ? 1.0 / (1.0 - 2.0 * r.h_norm) : kNaN;
      r.additive = r.applicable ? 0.0 : kNaN;
      break;
  }

  if (r.applicable) {
    r.rhs = r.multiplicative * (r.cond_a + r.cond_b) + r.additive;
    r.gap = r.rhs - r.lhs;
  } else {
    r.rhs = kNaN;
    r.gap = kNaN;
  }
  return r;
}

double superadditivity_gap(const BipartiteState& rho,
                           const DensityMatrix& sigma_a,
                           const DensityMatrix& sigma_b) {
  if (sigma_a.dim() != rho.d_a() || sigma_b.dim() != rho.d_b()) {
    throw Error(ErrorCode::DimensionMismatch,
                "reference marginals do not match the bipartition");
  }
  const BipartiteState reference = product_state(sigma_a, sigma_b);
  const auto [rho_a, rho_b] = marginals(rho);
  return bs_entropy(rho.state(), reference.state()).value -
         bs_entropy(rho_a, sigma_a).value - bs_entropy(rho_b, sigma_b).value;
}

StepDiagnostics step_diagnostics(const BipartiteState& rho,
                                 const BipartiteState& sigma) {
  require_full_rank_pair(rho, sigma);
  const PairContext ctx(rho, sigma);
  const double d_a = static_cast<double>(rho.d_a());
  const double d_b = static_cast<double>(rho.d_b());
  StepDiagnostics d;

  const double bs_global = bs_entropy(rho.state(), sigma.state()).value;
  const double bs_a = bs_entropy(ctx.rho_a(), ctx.sigma_a()).value;
  const double bs_b = bs_entropy(ctx.rho_b(), ctx.sigma_b()).value;
  d.bs_gap = -bs_global + bs_a + bs_b;

  // Step 1: Omega = exp(log sigma + log(P Q P)) with P = (rho_A x rho_B)^{1/2}
  // and Q = (sigma_A x sigma_B)^{-1}.
  const ComplexMatrix rho_a_half = ctx.rho_a().sqrt();
  const ComplexMatrix rho_b_half = ctx.rho_b().sqrt();
  const ComplexMatrix p = kron(rho_a_half, rho_b_half);
  const ComplexMatrix q = kron(ctx.sigma_a().inverse(), ctx.sigma_b().inverse());
  const ComplexMatrix pqp = (p * q * p).hermitian_part();
  const ComplexMatrix log_omega = sigma.state().log() + matrix_log(pqp);
  double neg_entropy = 0.0;
  for (double l : rho.state().eigen().eigenvalues) neg_entropy += l * std::log(l);
  d.neg_rel_omega =
      -(neg_entropy - trace_product(rho.matrix(), log_omega).real());
  d.omega_log_trace = std::log(matrix_exp(log_omega).trace().real());
  d.step1_rhs = std::log(trace_product(sigma.matrix(), pqp).real());

  // Step 2.
  const ComplexMatrix delta_a =
      rho_a_half * (ctx.sigma_a().inverse() - ctx.rho_a().inverse()) * rho_a_half;
  const ComplexMatrix delta_b =
      rho_b_half * (ctx.sigma_b().inverse() - ctx.rho_b().inverse()) * rho_b_half;
  const ComplexMatrix delta = kron(delta_a, delta_b);
  d.y_ab = trace_product(sigma.matrix(), delta).real();
  d.x_a = trace_product(ctx.sigma_a().matrix(),
                        rho_a_half * ctx.sigma_a().inverse() * rho_a_half)
              .real();
  d.x_b = trace_product(ctx.sigma_b().matrix(),
                        rho_b_half * ctx.sigma_b().inverse() * rho_b_half)
              .real();
  const ComplexMatrix deviation = sigma.matrix() - ctx.sigma_product;
  d.z_ab = trace_product(deviation, delta).real();
  d.step2_rhs = d.z_ab + d.x_a * d.x_b - 1.0;

  // Step 3.
  const double sigma_min_inv = 1.0 / ctx.sigma_min;
  d.step3_rhs = 2.0 * sigma_min_inv * sigma_min_inv / (d_a * d_b) *
                operator_norm(deviation) * bs_global;

  // Step 3'.
  const double h = h_norm_of(ctx);
  d.eta_a_dist =
      trace_norm(eta_operator(ctx.rho_a(), ctx.sigma_a()) - ctx.rho_a().matrix());
  d.eta_b_dist =
      trace_norm(eta_operator(ctx.rho_b(), ctx.sigma_b()) - ctx.rho_b().matrix());
  d.step3bis_rhs =
      2.0 * h * bs_global +
      (1.0 + 2.0 * h) *
          (d.eta_a_dist + d.eta_b_dist + d.eta_a_dist * d.eta_b_dist);

  d.sigma_a_inv_norm = 1.0 / ctx.sigma_a().min_eigenvalue();
  d.sigma_b_inv_norm = 1.0 / ctx.sigma_b().min_eigenvalue();
  d.sigma_a_inv_bound = sigma_min_inv / d_b;
  d.sigma_b_inv_bound = sigma_min_inv / d_a;
  return d;
}

std::vector<std::string> StepDiagnostics::violations(double tol) const {
  std::vector<std::string> out;
  auto check_le = [&](const char* name, double lhs, double rhs) {
    if (!(lhs <= rhs + tol)) out.emplace_back(name);
  };
  check_le("bs_gap<=neg_rel_omega", bs_gap, neg_rel_omega);
  check_le("neg_rel_omega<=omega_log_trace", neg_rel_omega, omega_log_trace);
  check_le("golden_thompson", omega_log_trace, step1_rhs);
  check_le("step1<=step2", step1_rhs, step2_rhs);
  const double lhs = y_ab + x_a + x_b - 2.0;
  const double rhs = z_ab + x_a * x_b - 1.0;
  if (!(std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(lhs)))) {
    out.emplace_back("step2_identity");
  }
  check_le("step3", z_ab, step3_rhs);
  check_le("step3bis", step2_rhs, step3bis_rhs);
  // Relative slack: these are inverse eigenvalues and can be large.
  if (!(sigma_a_inv_norm <= sigma_a_inv_bound * (1.0 + tol))) {
    out.emplace_back("sigma_a_inverse_bound");
  }
  if (!(sigma_b_inv_norm <= sigma_b_inv_bound * (1.0 + tol))) {
    out.emplace_back("sigma_b_inverse_bound");
  }
  return out;
}

TracePair golden_thompson_check(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "golden_thompson_check");
  }
  return {matrix_exp(x + y).trace().real(),
          trace_product(matrix_exp(x), matrix_exp(y)).real()};
}

CommutatorBound commutator_bound(const DensityMatrix& rho,
                                 const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "commutator_bound");
  }
  CommutatorBound b;
  const ComplexMatrix r_half = rho.sqrt();
  const ComplexMatrix s_inv_half = sigma.inv_sqrt();
  b.eta_distance = trace_norm(eta_operator(rho, sigma) - rho.matrix());
  // [A, B] of Hermitian A, B is skew-Hermitian; i[A, B] is Hermitian with the
  // same singular values.
  const ComplexMatrix c = commutator(r_half, s_inv_half) * Complex(0.0, 1.0);
  b.commutator_norm = operator_norm(c.hermitian_part());
  b.bound = b.commutator_norm * b.commutator_norm + 2.0 * b.commutator_norm;
  const ComplexMatrix x = r_half * s_inv_half;
  b.normality_defect = operator_norm(
      (x * x.adjoint() - x.adjoint() * x).hermitian_part());
  return b;
}

namespace {

double number_or_nan(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  return v.is_null() ? kNaN : v.get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const QFReport& r) {
  j = nlohmann::json{{"theorem", std::string(to_string(r.theorem))},
                     {"applicable", r.applicable},
                     {"ill_conditioned", r.ill_conditioned},
                     {"multiplicative", r.multiplicative},
                     {"additive", r.additive},
                     {"lhs", r.lhs},
                     {"cond_a", r.cond_a},
                     {"cond_b", r.cond_b},
                     {"rhs", r.rhs},
                     {"gap", r.gap},
                     {"h_norm", r.h_norm},
                     {"sigma_min", r.sigma_min}};
}

void from_json(const nlohmann::json& j, QFReport& r) {
  r.theorem = theorem_from_string(j.at("theorem").get<std::string>());
  r.applicable = j.at("applicable").get<bool>();
  r.ill_conditioned = j.at("ill_conditioned").get<bool>();
  r.multiplicative = number_or_nan(j, "multiplicative");
  r.additive = number_or_nan(j, "additive");
  r.lhs = number_or_nan(j, "lhs");
  r.cond_a = number_or_nan(j, "cond_a");
  r.cond_b = number_or_nan(j, "cond_b");
  r.rhs = number_or_nan(j, "rhs");
  r.gap = number_or_nan(j, "gap");
  r.h_norm = number_or_nan(j, "h_norm");
  r.sigma_min = number_or_nan(j, "sigma_min");
}

void to_json(nlohmann::json& j, const StepDiagnostics& d) {
  j = nlohmann::json{{"bs_gap", d.bs_gap},
                     {"neg_rel_omega", d.neg_rel_omega},
                     {"omega_log_trace", d.omega_log_trace},
                     {"step1_rhs", d.step1_rhs},
                     {"y_ab", d.y_ab},
                     {"x_a", d.x_a},
                     {"x_b", d.x_b},
                     {"z_ab", d.z_ab},
                     {"step2_rhs", d.step2_rhs},
                     {"step3_rhs", d.step3_rhs},
                     {"step3bis_rhs", d.step3bis_rhs},
                     {"eta_a_dist", d.eta_a_dist},
                     {"eta_b_dist", d.eta_b_dist},
                     {"sigma_a_inv_norm", d.sigma_a_inv_norm},
                     {"sigma_b_inv_norm", d.sigma_b_inv_norm},
                     {"sigma_a_inv_bound", d.sigma_a_inv_bound},
                     {"sigma_b_inv_bound", d.sigma_b_inv_bound}};
}

}  // namespace bsqf
