#include "bsqf/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <thread>

#include "bsqf/error.hpp"

namespace bsqf {

namespace {

// Runs body(i) for i in [0, n) on `threads` workers with a static stride;
// results land in caller-owned slots so output order never depends on
// scheduling.
template <typename Body>
void for_each_sample(std::int64_t n, int threads, Body body) {
  if (threads <= 1 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> workers;
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([=, &body] {
      for (std::int64_t i = t; i < n; i += threads) body(i);
    });
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename Row>
struct Slot {
  std::optional<Row> row;
  std::string error;
};

void report_skips(std::int64_t id, const std::string& error) {
  std::cerr << "sample " << id << " skipped: " << error << '\n';
}

double json_double(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  return v.is_null() ? std::nan("") : v.get<double>();
}

}  // namespace

std::string_view to_string(ExperimentMode m) noexcept {
  switch (m) {
    case ExperimentMode::General: return "general";
    case ExperimentMode::Perturbed: return "perturbed";
    case ExperimentMode::QfSweep: return "qf-sweep";
  }
  return "?";
}

std::string_view to_string(SigmaSampling s) noexcept {
  switch (s) {
    case SigmaSampling::Ginibre: return "ginibre";
    case SigmaSampling::Product: return "product";
    case SigmaSampling::Perturbed: return "perturbed";
  }
  return "?";
}

ExperimentMode mode_from_string(std::string_view s) {
  if (s == "general") return ExperimentMode::General;
  if (s == "perturbed") return ExperimentMode::Perturbed;
  if (s == "qf-sweep") return ExperimentMode::QfSweep;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(s) + "'");
}

SigmaSampling sigma_sampling_from_string(std::string_view s) {
  if (s == "ginibre") return SigmaSampling::Ginibre;
  if (s == "product") return SigmaSampling::Product;
  if (s == "perturbed") return SigmaSampling::Perturbed;
  throw Error(ErrorCode::InvalidArgument,
              "unknown sigma sampling '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, what);
  };
  if (n < 1) fail("n must be >= 1");
  if (!std::isfinite(epsilon) || epsilon < 0.0) fail("epsilon must be >= 0");
  if (d_a < 2 || d_b < 2) fail("subsystem dimensions must be >= 2");
  if (!std::isfinite(violation_tol) || violation_tol < 0.0) fail("tol must be >= 0");
  if (threads < 1) fail("threads must be >= 1");
}

Figure1Result run_figure1(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode == ExperimentMode::QfSweep) {
    throw Error(ErrorCode::InvalidArgument, "figure1 needs mode general or perturbed");
  }
  const auto d_a = static_cast<std::size_t>(cfg.d_a);
  const auto d_b = static_cast<std::size_t>(cfg.d_b);

  std::vector<Slot<Figure1Row>> slots(static_cast<std::size_t>(cfg.n));
  for_each_sample(cfg.n, cfg.threads, [&](std::int64_t i) {
    auto& slot = slots[static_cast<std::size_t>(i)];
    try {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(i));
      const DensityMatrix sigma_a = sample_ginibre_density(d_a, rng);
      const DensityMatrix sigma_b = sample_ginibre_density(d_b, rng);
      std::optional<BipartiteState> rho;
      if (cfg.mode == ExperimentMode::General) {
        rho.emplace(sample_ginibre_density(d_a * d_b, rng), d_a, d_b);
      } else {
        const DensityMatrix eta_a = sample_ginibre_density(d_a, rng);
        const DensityMatrix eta_b = sample_ginibre_density(d_b, rng);
        const DensityMatrix lambda = sample_ginibre_density(d_a * d_b, rng);
        rho.emplace(perturbed_product(eta_a, eta_b, lambda, cfg.epsilon));
      }
      const BipartiteState reference = product_state(sigma_a, sigma_b);
      const auto [rho_a, rho_b] = marginals(*rho);
      Figure1Row row;
      row.sample_id = i;
      row.bs_joint = bs_entropy(rho->state(), reference.state()).value;
      row.bs_sum_marginals = bs_entropy(rho_a, sigma_a).value +
                             bs_entropy(rho_b, sigma_b).value;
      row.gap = row.bs_joint - row.bs_sum_marginals;
      slot.row = row;
    } catch (const Error& e) {
      slot.error = e.what();
    }
  });

  Figure1Result result;
  ExperimentSummary& s = result.summary;
  s.n = cfg.n;
  double gap_sum = 0.0;
  double min_gap = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].row) {
      ++s.skipped;
      report_skips(static_cast<std::int64_t>(i), slots[i].error);
      continue;
    }
    const Figure1Row& row = *slots[i].row;
    result.rows.push_back(row);
    gap_sum += row.gap;
    min_gap = std::min(min_gap, row.gap);
    if (row.gap < -cfg.violation_tol) ++s.violations;
  }
  s.rows = static_cast<std::int64_t>(result.rows.size());
  s.fraction_violations = static_cast<double>(s.violations) / static_cast<double>(s.n);
  s.max_violation = std::max(0.0, -min_gap);
  s.mean_gap = s.rows > 0 ? gap_sum / static_cast<double>(s.rows) : 0.0;
  return result;
}

QfSweepResult run_qf_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto d_a = static_cast<std::size_t>(cfg.d_a);
  const auto d_b = static_cast<std::size_t>(cfg.d_b);
  constexpr Theorem kTheorems[] = {Theorem::T1, Theorem::T2, Theorem::Umegaki};

  std::vector<Slot<std::vector<QFReport>>> slots(static_cast<std::size_t>(cfg.n));
  for_each_sample(cfg.n, cfg.threads, [&](std::int64_t i) {
    auto& slot = slots[static_cast<std::size_t>(i)];
    try {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(i));
      const BipartiteState rho(sample_ginibre_density(d_a * d_b, rng), d_a, d_b);
      std::optional<BipartiteState> sigma;
      switch (cfg.sigma) {
        case SigmaSampling::Ginibre:
          sigma.emplace(sample_ginibre_density(d_a * d_b, rng), d_a, d_b);
          break;
        case SigmaSampling::Product: {
          const DensityMatrix sa = sample_ginibre_density(d_a, rng);
          const DensityMatrix sb = sample_ginibre_density(d_b, rng);
          sigma.emplace(product_state(sa, sb));
          break;
        }
        case SigmaSampling::Perturbed: {
          const DensityMatrix sa = sample_ginibre_density(d_a, rng);
          const DensityMatrix sb = sample_ginibre_density(d_b, rng);
          const DensityMatrix lambda = sample_ginibre_density(d_a * d_b, rng);
          sigma.emplace(perturbed_product(sa, sb, lambda, cfg.epsilon));
          break;
        }
      }
      std::vector<QFReport> reports;
      for (Theorem t : kTheorems) reports.push_back(evaluate_qf(rho, *sigma, t));
      slot.row = std::move(reports);
    } catch (const Error& e) {
      slot.error = e.what();
    }
  });

  QfSweepResult result;
  ExperimentSummary& s = result.summary;
  s.n = cfg.n;
  for (Theorem t : kTheorems) s.per_theorem.push_back({t, 0, 0, 0});
  std::int64_t samples = 0;
  std::int64_t samples_violating = 0;
  std::int64_t applicable_rows = 0;
  std::int64_t counted = 0;
  double gap_sum = 0.0;
  double min_gap = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].row) {
      ++s.skipped;
      report_skips(static_cast<std::int64_t>(i), slots[i].error);
      continue;
    }
    ++samples;
    bool any = false;
    for (std::size_t k = 0; k < slots[i].row->size(); ++k) {
      const QFReport& r = (*slots[i].row)[k];
      TheoremSummary& ts = s.per_theorem[k];
      result.rows.push_back({static_cast<std::int64_t>(i), r});
      if (!r.applicable) continue;
      ++applicable_rows;
      ++ts.applicable;
      if (r.ill_conditioned) {
        ++ts.ill_conditioned;
        continue;
      }
      ++counted;
      gap_sum += r.gap;
      min_gap = std::min(min_gap, r.gap);
      if (r.gap < -cfg.violation_tol) {
        ++ts.violations;
        ++s.violations;
        any = true;
      }
    }
    if (any) ++samples_violating;
  }
  s.rows = samples;
  s.fraction_violations =
      static_cast<double>(samples_violating) / static_cast<double>(s.n);
  s.max_violation = std::max(0.0, -min_gap);
  s.mean_gap = counted > 0 ? gap_sum / static_cast<double>(counted) : 0.0;
  s.applicable_fraction =
      result.rows.empty() ? 0.0
                          : static_cast<double>(applicable_rows) /
                                static_cast<double>(result.rows.size());
  return result;
}

void write_figure1_csv(std::ostream& out, const std::vector<Figure1Row>& rows) {
  out << kFigure1CsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.sample_id << ',' << format_double(r.bs_joint) << ','
        << format_double(r.bs_sum_marginals) << ',' << format_double(r.gap)
        << '\n';
  }
}

void write_qf_csv(std::ostream& out, const std::vector<QfRow>& rows) {
  out << kQfCsvHeader << '\n';
  for (const auto& row : rows) {
    const QFReport& r = row.report;
    out << row.sample_id << ',' << to_string(r.theorem) << ','
        << (r.applicable ? 1 : 0) << ',' << format_double(r.multiplicative)
        << ',' << format_double(r.additive) << ',' << format_double(r.lhs)
        << ',' << format_double(r.rhs) << ',' << format_double(r.gap) << ','
        << format_double(r.h_norm) << ',' << format_double(r.sigma_min)
        << '\n';
  }
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  return {{"mode", std::string(to_string(cfg.mode))},
          {"n", cfg.n},
          {"seed", cfg.seed},
          {"d_a", cfg.d_a},
          {"d_b", cfg.d_b},
          {"epsilon", cfg.epsilon},
          {"out_csv", cfg.out_csv},
          {"out_json", cfg.out_json},
          {"violation_tol", cfg.violation_tol},
          {"sigma", std::string(to_string(cfg.sigma))},
          {"threads", cfg.threads}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  // Missing keys keep their defaults so a config file can be partial.
  ExperimentConfig cfg;
  try {
    if (j.contains("mode")) cfg.mode = mode_from_string(j["mode"].get<std::string>());
    if (j.contains("n")) cfg.n = j["n"].get<std::int64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("d_a")) cfg.d_a = j["d_a"].get<std::int64_t>();
    if (j.contains("d_b")) cfg.d_b = j["d_b"].get<std::int64_t>();
    if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
    if (j.contains("out_csv")) cfg.out_csv = j["out_csv"].get<std::string>();
    if (j.contains("out_json")) cfg.out_json = j["out_json"].get<std::string>();
    if (j.contains("violation_tol")) cfg.violation_tol = j["violation_tol"].get<double>();
    if (j.contains("sigma"))
      cfg.sigma = sigma_sampling_from_string(j["sigma"].get<std::string>());
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, e.what());
  }
  return cfg;
}

nlohmann::json summary_to_json(const ExperimentSummary& s) {
  nlohmann::json j{{"n", s.n},
                   {"rows", s.rows},
                   {"skipped", s.skipped},
                   {"violations", s.violations},
                   {"fraction_violations", s.fraction_violations},
                   {"max_violation", s.max_violation},
                   {"mean_gap", s.mean_gap}};
  if (s.applicable_fraction) j["applicable_fraction"] = *s.applicable_fraction;
  if (!s.per_theorem.empty()) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& t : s.per_theorem) {
      per.push_back({{"theorem", std::string(to_string(t.theorem))},
                     {"applicable", t.applicable},
                     {"ill_conditioned", t.ill_conditioned},
                     {"violations", t.violations}});
    }
    j["per_theorem"] = per;
  }
  return j;
}

ExperimentSummary summary_from_json(const nlohmann::json& j) {
  try {
    ExperimentSummary s;
    s.n = j.at("n").get<std::int64_t>();
    s.rows = j.at("rows").get<std::int64_t>();
    s.skipped = j.at("skipped").get<std::int64_t>();
    s.violations = j.at("violations").get<std::int64_t>();
    s.fraction_violations = json_double(j, "fraction_violations");
    s.max_violation = json_double(j, "max_violation");
    s.mean_gap = json_double(j, "mean_gap");
    if (j.contains("applicable_fraction"))
      s.applicable_fraction = json_double(j, "applicable_fraction");
    if (j.contains("per_theorem")) {
      for (const auto& t : j["per_theorem"]) {
        s.per_theorem.push_back(
            {theorem_from_string(t.at("theorem").get<std::string>()),
             t.at("applicable").get<std::int64_t>(),
             t.at("ill_conditioned").get<std::int64_t>(),
             t.at("violations").get<std::int64_t>()});
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

nlohmann::json emit_report(const ExperimentSummary& summary,
                           const ExperimentConfig& cfg, double wall_time_s) {
  nlohmann::json sampling{{"measure", "hilbert-schmidt (normalized G G^dagger)"},
                          {"rng", "mt19937_64 per-sample streams, Box-Muller"}};
  if (cfg.mode == ExperimentMode::QfSweep) {
    sampling["rho"] = "ginibre";
    sampling["sigma"] = std::string(to_string(cfg.sigma));
  } else {
    sampling["sigma"] = "sigma_A, sigma_B resampled per sample";
    sampling["rho"] = cfg.mode == ExperimentMode::General
                          ? "ginibre"
                          : "perturbed product of random eta_A, eta_B, lambda_AB";
  }
  return {{"config", config_to_json(cfg)},
          {"summary", summary_to_json(summary)},
          {"sampling", sampling},
          {"wall_time_s", wall_time_s},
          {"library_version", kLibraryVersion}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace bsqf
