#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "irsce/channel.hpp"
#include "irsce/config.hpp"

namespace irsce {

/// One CSV row: a (curve, SNR) point averaged over the Monte-Carlo trials.
/// Non-iterative algorithms report zero iteration statistics.
struct ResultRow {
  std::string algorithm;
  double snr_db = 0.0;
  double nmse = 0.0;
  double nmse_db = 0.0;
  double iterations_median = 0.0;
  double nonconverged_frac = 0.0;
  std::uint64_t seed = 0;
  double iterations_mean = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Grid point that failed a precondition and was not run.
struct SkippedPoint {
  std::string label;
  std::string reason;
};

/// Closed-form flop orders. The *_total fields add the shared LS front end.
struct ComplexityRow {
  std::size_t N = 0;
  std::size_t als_iter = 0;
  double ls = 0.0;
  double krf = 0.0;
  double als = 0.0;
  double krf_total = 0.0;
  double als_total = 0.0;

  friend bool operator==(const ComplexityRow&, const ComplexityRow&) = default;
};

struct RunReport {
  std::string experiment;
  ExperimentConfig config;
  std::vector<ResultRow> rows;
  std::vector<SkippedPoint> skipped;
  std::vector<ComplexityRow> complexity;
  /// Every ALS error trace of the run, in trial order (only when requested).
  std::vector<std::vector<double>> als_traces;
  double wall_seconds = 0.0;
};

enum class ConvergenceAxis { PathProducts, ReflectorCounts };

struct RunOptions {
  /// Keep each ALS error trace in RunReport::als_traces.
  bool keep_als_traces = false;
};

/// Independent generator for (seed, trial, stream); no state is shared between trials.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream);

/// Most-square split of a path product into (L1, L2) with L1 >= L2.
std::pair<std::size_t, std::size_t> split_path_product(std::size_t product);

/**
 * Monte-Carlo NMSE of LS, KRF and ALS versus training SNR.
 *
 * Per trial: draw geometry and gains, age the IRS-UE gains over K blocks,
 * then for every SNR simulate the K received blocks and run all three
 * estimators on the same data. Rows: "LS", "KRF", "ALS" (whole tensor) and
 * "ALS-block" (mean of per-block NMSE). Throws IdentifiabilityError or
 * ConfigError before any computation.
 */
RunReport run_nmse_sweep(const ExperimentConfig& cfg, const RunOptions& opts = {});

/**
 * ALS iteration statistics over a grid of path products (L1L2) or IRS sizes
 * (N, with T = QN). Points failing identifiability or pilot constraints are
 * listed in RunReport::skipped. Row labels are "ALS[L1L2=p]" or "ALS[N=n]".
 */
RunReport run_convergence_study(const ExperimentConfig& cfg, ConvergenceAxis axis, const RunOptions& opts = {});

/// Flop orders for one scenario.
ComplexityRow complexity_row(std::size_t M, std::size_t Q, std::size_t N, std::size_t K, std::size_t L1,
                             std::size_t L2, std::size_t als_iter);

/// complexity_row over cfg.complexity_n_grid with cfg.als_iter.
RunReport complexity_report(const ExperimentConfig& cfg);

/// One trial (cfg.trials is ignored) of the NMSE sweep.
RunReport run_single(const ExperimentConfig& cfg);

}  // namespace irsce
