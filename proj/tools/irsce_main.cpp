// irsce: batch runner for the IRS combined-channel estimation experiments.
//
//   irsce nmse-sweep   [--config F] [--seed S] [--trials E] [--snr LIST] [--out DIR] [--full-profile]
//   irsce convergence  [...] [--vary path_products|reflector_counts]
//   irsce complexity   [...] [--als-iter I]
//   irsce single-run   [...]
//
// On failure a single JSON line {"error": <code>, "message": <text>} is
// written to stderr and the exit status is nonzero.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "irsce/config.hpp"
#include "irsce/error.hpp"
#include "irsce/format.hpp"
#include "irsce/harness.hpp"
#include "irsce/report.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> workers;
  std::string snr;
  std::string out_dir = "results";
  bool full_profile = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "key = value config file");
  cmd->add_option("--seed", f.seed, "master RNG seed");
  cmd->add_option("--trials", f.trials, "Monte-Carlo trials per point");
  cmd->add_option("--snr", f.snr, "comma-separated SNR grid in dB (inf = noise-free)");
  cmd->add_option("--out", f.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--workers", f.workers, "worker threads (0 = all cores)");
  cmd->add_flag("--full-profile", f.full_profile, "start from the 10^4-trial profile");
}

irsce::ExperimentConfig resolve(const CommonFlags& f) {
  auto cfg = f.full_profile ? irsce::ExperimentConfig::full_profile() : irsce::ExperimentConfig::desk_profile();
  if (!f.config_path.empty()) cfg = irsce::load_config(f.config_path, cfg);
  if (f.seed) cfg.seed = *f.seed;
  if (f.trials) cfg.trials = *f.trials;
  if (f.workers) cfg.workers = *f.workers;
  if (!f.snr.empty()) {
    try {
      cfg.snr_grid_db = irsce::parse_real_list(f.snr);
    } catch (const irsce::Error& e) {
      throw irsce::Error(irsce::ErrorCode::ConfigError, std::string("--snr: ") + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

void print_rows(const irsce::RunReport& report) {
  for (const auto& r : report.rows) {
    std::printf("%-16s snr=%6s dB  nmse=%10.3e (%7.2f dB)", r.algorithm.c_str(), irsce::format_real(r.snr_db).c_str(),
                r.nmse, r.nmse_db);
    if (r.algorithm.starts_with("ALS")) {
      std::printf("  iters median=%.1f mean=%.1f nonconv=%.3f", r.iterations_median, r.iterations_mean,
                  r.nonconverged_frac);
    }
    std::printf("\n");
  }
  for (const auto& c : report.complexity) {
    std::printf("N=%-5zu LS=%.6g  KRF=%.6g (+LS %.6g)  ALS=%.6g (+LS %.6g)  [ALS_iter=%zu]\n", c.N, c.ls, c.krf,
                c.krf_total, c.als, c.als_total, c.als_iter);
  }
  for (const auto& s : report.skipped) std::printf("skipped %s: %s\n", s.label.c_str(), s.reason.c_str());
}

void finish(const irsce::RunReport& report, const std::string& out_dir) {
  print_rows(report);
  for (const auto& path : irsce::emit_results(report, out_dir)) std::printf("wrote %s\n", path.string().c_str());
  std::printf("wall-clock %.2f s\n", report.wall_seconds);
}

void report_error(std::string_view code, std::string_view message) {
  nlohmann::json j;
  j["error"] = code;
  j["message"] = message;
  std::cerr << j.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-assisted MIMO combined-channel estimation: LS, KRF and PARAFAC-ALS experiments"};
  app.require_subcommand(1);

  CommonFlags sweep_flags, conv_flags, cx_flags, single_flags;
  std::string vary = "path_products";
  std::optional<std::size_t> als_iter;

  auto* sweep = app.add_subcommand("nmse-sweep", "Monte-Carlo NMSE versus SNR for LS, KRF and ALS");
  add_common(sweep, sweep_flags);
  auto* conv = app.add_subcommand("convergence", "ALS iteration counts versus SNR");
  add_common(conv, conv_flags);
  conv->add_option("--vary", vary, "grid axis")
      ->check(CLI::IsMember({"path_products", "reflector_counts"}))
      ->capture_default_str();
  auto* cx = app.add_subcommand("complexity", "closed-form flop orders versus N");
  add_common(cx, cx_flags);
  cx->add_option("--als-iter", als_iter, "ALS iteration count used in the ALS order");
  auto* single = app.add_subcommand("single-run", "one realization at every SNR of the grid");
  add_common(single, single_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what());
    return 2;
  }

  try {
    if (sweep->parsed()) {
      finish(irsce::run_nmse_sweep(resolve(sweep_flags)), sweep_flags.out_dir);
    } else if (conv->parsed()) {
      const auto axis =
          vary == "path_products" ? irsce::ConvergenceAxis::PathProducts : irsce::ConvergenceAxis::ReflectorCounts;
      finish(irsce::run_convergence_study(resolve(conv_flags), axis), conv_flags.out_dir);
    } else if (cx->parsed()) {
      auto cfg = resolve(cx_flags);
      if (als_iter) cfg.als_iter = *als_iter;
      finish(irsce::complexity_report(cfg), cx_flags.out_dir);
    } else if (single->parsed()) {
      finish(irsce::run_single(resolve(single_flags)), single_flags.out_dir);
    }
  } catch (const irsce::Error& e) {
    report_error(irsce::to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("InternalError", e.what());
    return 1;
  }
  return 0;
}
