#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bsqf/quasi_factorization.hpp"

namespace bsqf {

enum class ExperimentMode { General, Perturbed, QfSweep };

/// How the reference state is drawn in a qf-sweep.
enum class SigmaSampling {
  Ginibre,    // random full-rank d_a*d_b state
  Product,    // sigma_A (x) sigma_B with random marginals
  Perturbed,  // perturbed_product(.., epsilon)
};

std::string_view to_string(ExperimentMode m) noexcept;
std::string_view to_string(SigmaSampling s) noexcept;
ExperimentMode mode_from_string(std::string_view s);
SigmaSampling sigma_sampling_from_string(std::string_view s);

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::General;
  std::int64_t n = 10000;
  std::uint64_t seed = 1;
  std::int64_t d_a = 2;
  std::int64_t d_b = 2;
  double epsilon = 0.01;
  std::string out_csv;
  std::string out_json;
  double violation_tol = 1e-9;
  SigmaSampling sigma = SigmaSampling::Ginibre;
  int threads = 1;

  /// InvalidArgument on n < 1, epsilon < 0, d < 2, tol < 0 or threads < 1.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct TheoremSummary {
  Theorem theorem = Theorem::T1;
  std::int64_t applicable = 0;
  std::int64_t ill_conditioned = 0;
  std::int64_t violations = 0;

  friend bool operator==(const TheoremSummary&, const TheoremSummary&) = default;
};

struct ExperimentSummary {
  std::int64_t n = 0;
  std::int64_t rows = 0;
  std::int64_t skipped = 0;
  std::int64_t violations = 0;
  /// Samples with a gap below -violation_tol, divided by n.
  double fraction_violations = 0.0;
  /// max(0, -min gap) over counted rows.
  double max_violation = 0.0;
  double mean_gap = 0.0;
  /// qf-sweep only: applicable rows / all rows.
  std::optional<double> applicable_fraction;
  std::vector<TheoremSummary> per_theorem;

  friend bool operator==(const ExperimentSummary&, const ExperimentSummary&) = default;
};

struct Figure1Row {
  std::int64_t sample_id = 0;
  double bs_joint = 0.0;
  double bs_sum_marginals = 0.0;
  double gap = 0.0;
};

struct Figure1Result {
  ExperimentSummary summary;
  std::vector<Figure1Row> rows;
};

/// Superadditivity experiment. Per sample i (RNG stream (seed, i)): draw
/// random sigma_A, sigma_B, then rho_AB (Ginibre in General mode, a perturbed
/// product of random eta_A, eta_B, lambda_AB in Perturbed mode), and record
/// D_BS(rho_AB || sigma_A x sigma_B) against D_BS(rho_A||sigma_A) +
/// D_BS(rho_B||sigma_B).
Figure1Result run_figure1(const ExperimentConfig& cfg);

struct QfRow {
  std::int64_t sample_id = 0;
  QFReport report;
};

struct QfSweepResult {
  ExperimentSummary summary;
  std::vector<QfRow> rows;
};

/// Evaluates T1, T2 and the Umegaki comparator on random (rho, sigma) pairs.
/// A row counts as a violation when it is applicable, not ill-conditioned, and
/// its gap is below -violation_tol.
QfSweepResult run_qf_sweep(const ExperimentConfig& cfg);

inline constexpr const char* kFigure1CsvHeader =
    "sample_id,bs_joint,bs_sum_marginals,gap";
inline constexpr const char* kQfCsvHeader =
    "sample_id,theorem,applicable,mult,add,lhs,rhs,gap,h_norm,sigma_min";

/// Floats are printed with 17 significant digits.
void write_figure1_csv(std::ostream& out, const std::vector<Figure1Row>& rows);
void write_qf_csv(std::ostream& out, const std::vector<QfRow>& rows);

inline constexpr const char* kLibraryVersion = "0.1.0";

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json summary_to_json(const ExperimentSummary& s);
ExperimentSummary summary_from_json(const nlohmann::json& j);

/// {"config", "summary", "sampling", "wall_time_s", "library_version"}.
nlohmann::json emit_report(const ExperimentSummary& summary,
                           const ExperimentConfig& cfg, double wall_time_s);

/// Writes text to a file, IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bsqf
