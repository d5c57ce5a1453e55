#include "lab_cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bsqf/error.hpp"
#include "bsqf/experiment.hpp"

namespace bsqf::cli {

namespace {

struct Flags {
  std::string mode;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::int64_t d_a = 0;
  std::int64_t d_b = 0;
  double epsilon = 0.0;
  std::string out_csv;
  std::string out_json;
  double tol = 0.0;
  std::string sigma;
  int threads = 1;
  std::string config;
};

struct BoundOptions {
  CLI::Option* mode;
  CLI::Option* n;
  CLI::Option* seed;
  CLI::Option* d_a;
  CLI::Option* d_b;
  CLI::Option* epsilon;
  CLI::Option* out_csv;
  CLI::Option* out_json;
  CLI::Option* tol;
  CLI::Option* sigma;
  CLI::Option* threads;
  CLI::Option* config;
};

BoundOptions add_experiment_options(CLI::App& sub, Flags& f) {
  BoundOptions o{};
  o.mode = sub.add_option("--mode", f.mode, "general | perturbed | qf-sweep");
  o.n = sub.add_option("--n", f.n, "number of samples");
  o.seed = sub.add_option("--seed", f.seed, "64-bit RNG seed");
  o.d_a = sub.add_option("--dim-a", f.d_a, "dimension of subsystem A");
  o.d_b = sub.add_option("--dim-b", f.d_b, "dimension of subsystem B");
  o.epsilon = sub.add_option("--epsilon", f.epsilon, "perturbation strength");
  o.out_csv = sub.add_option("--out-csv", f.out_csv, "per-sample CSV output");
  o.out_json = sub.add_option("--out-json", f.out_json, "JSON report output");
  o.tol = sub.add_option("--tol", f.tol, "violation tolerance");
  o.sigma = sub.add_option("--sigma", f.sigma,
                           "qf-sweep reference sampling: ginibre | product | perturbed");
  o.threads = sub.add_option("--threads", f.threads, "worker threads");
  o.config = sub.add_option("--config", f.config, "JSON config file");
  return o;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("config: ") + e.what());
  }
  return config_from_json(j);
}

// File values first, explicit flags on top.
ExperimentConfig resolve(const Flags& f, const BoundOptions& o,
                         ExperimentMode default_mode) {
  ExperimentConfig cfg;
  cfg.mode = default_mode;
  if (o.config->count() > 0) cfg = load_config(f.config);
  if (o.mode->count() > 0) cfg.mode = mode_from_string(f.mode);
  if (o.n->count() > 0) cfg.n = f.n;
  if (o.seed->count() > 0) cfg.seed = f.seed;
  if (o.d_a->count() > 0) cfg.d_a = f.d_a;
  if (o.d_b->count() > 0) cfg.d_b = f.d_b;
  if (o.epsilon->count() > 0) cfg.epsilon = f.epsilon;
  if (o.out_csv->count() > 0) cfg.out_csv = f.out_csv;
  if (o.out_json->count() > 0) cfg.out_json = f.out_json;
  if (o.tol->count() > 0) cfg.violation_tol = f.tol;
  if (o.sigma->count() > 0) cfg.sigma = sigma_sampling_from_string(f.sigma);
  if (o.threads->count() > 0) cfg.threads = f.threads;
  cfg.validate();
  return cfg;
}

void finish(const ExperimentConfig& cfg, const ExperimentSummary& summary,
            const std::string& csv, double seconds, std::ostream& out) {
  if (!cfg.out_csv.empty()) write_text_file(cfg.out_csv, csv);
  const std::string report = emit_report(summary, cfg, seconds).dump(2) + "\n";
  if (!cfg.out_json.empty()) write_text_file(cfg.out_json, report);
  out << report;
}

}  // namespace

int run_lab(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Belavkin-Staszewski relative entropy laboratory", "bsqf-lab"};
  app.require_subcommand(1);

  Flags fig_flags;
  Flags qf_flags;
  CLI::App* figure1 = app.add_subcommand(
      "figure1", "superadditivity experiment: joint vs summed marginal BS-entropy");
  CLI::App* sweep = app.add_subcommand(
      "qf-sweep", "check both weak quasi-factorization bounds on random pairs");
  const BoundOptions fig_opts = add_experiment_options(*figure1, fig_flags);
  const BoundOptions qf_opts = add_experiment_options(*sweep, qf_flags);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    const int code = app.exit(e, out, msg);
    err << msg.str();
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
    };
    std::ostringstream csv;
    if (figure1->parsed()) {
      const ExperimentConfig cfg =
          resolve(fig_flags, fig_opts, ExperimentMode::General);
      if (cfg.mode == ExperimentMode::QfSweep) {
        throw Error(ErrorCode::InvalidArgument,
                    "figure1 takes --mode general or perturbed");
      }
      const Figure1Result result = run_figure1(cfg);
      write_figure1_csv(csv, result.rows);
      finish(cfg, result.summary, csv.str(), elapsed(), out);
    } else {
      const ExperimentConfig cfg =
          resolve(qf_flags, qf_opts, ExperimentMode::QfSweep);
      if (cfg.mode != ExperimentMode::QfSweep) {
        throw Error(ErrorCode::InvalidArgument, "qf-sweep takes --mode qf-sweep");
      }
      const QfSweepResult result = run_qf_sweep(cfg);
      write_qf_csv(csv, result.rows);
      finish(cfg, result.summary, csv.str(), elapsed(), out);
    }
  } catch (const Error& e) {
    err << "bsqf-lab: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::IoError: return kExitIoError;
      case ErrorCode::InvalidArgument:
      case ErrorCode::ParseError: return kExitConfigError;
      default: return kExitFailure;
    }
  }
  return kExitOk;
}

}  // namespace bsqf::cli
