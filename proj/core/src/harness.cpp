#include "irsce/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "irsce/error.hpp"
#include "irsce/estimation.hpp"
#include "irsce/pilot.hpp"

namespace irsce {

namespace {

struct Scenario {
  std::size_t M, Q, N, T, K, L1, L2;
  double ar_lambda;
  AlsOptions als;
};

struct SnrOutcome {
  double ls = 0.0;
  double krf = 0.0;
  double als = 0.0;
  double als_block = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

using TrialOutcome = std::vector<SnrOutcome>;

Scenario scenario_from(const ExperimentConfig& cfg) {
  Scenario s{cfg.M, cfg.Q, cfg.N, cfg.T, cfg.K, cfg.L1, cfg.L2, cfg.ar_lambda, {}};
  s.als.rank = cfg.L1 * cfg.L2;
  s.als.eps = cfg.eps;
  s.als.max_iters = cfg.i_max;
  return s;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested != 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) on `workers` threads. Results must go to
// pre-allocated slots indexed by i; the first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t count, std::size_t workers, Body&& body) {
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

TrialOutcome run_trial(const Scenario& sc, const PilotDesign& design, const LsEstimator& ls,
                       const std::vector<double>& snr_grid, std::uint64_t seed, std::size_t trial,
                       bool with_baselines, bool keep_trace) {
  Rng channel_rng = trial_rng(seed, trial, 0);
  const ChannelRealization ch =
      draw_realization(channel_rng, sc.M, sc.Q, sc.N, sc.L1, sc.L2, ArFadingConfig{sc.ar_lambda, sc.K});
  const ComplexTensor3 truth = ch.combined_tensor();

  TrialOutcome out(snr_grid.size());
  for (std::size_t s = 0; s < snr_grid.size(); ++s) {
    Rng rng = trial_rng(seed, trial, 1 + s);
    std::vector<ComplexMatrix> ls_blocks;
    std::vector<ComplexMatrix> krf_blocks;
    ls_blocks.reserve(sc.K);
    for (std::size_t k = 0; k < sc.K; ++k) {
      const ReceivedBlock block = simulate_block(ch.G, ch.H[k], design, snr_grid[s], rng, k);
      ls_blocks.push_back(ls.estimate(block.y).R);
      if (with_baselines) krf_blocks.push_back(krf_baseline(ls_blocks.back(), sc.M, sc.Q, sc.N).R_hat);
    }
    const ComplexTensor3 ls_tensor = stack_blocks(ls_blocks);
    SnrOutcome& o = out[s];
    if (with_baselines) {
      o.ls = nmse(truth, ls_tensor);
      o.krf = nmse(truth, stack_blocks(krf_blocks));
    }
    AlsReport als = als_fit_normalized(ls_tensor, sc.als, rng);
    const ComplexTensor3 fit = cp_build(als.factors);
    o.als = nmse(truth, fit);
    double per_block = 0.0;
    for (std::size_t k = 0; k < sc.K; ++k) per_block += nmse(truth.slice(k), fit.slice(k));
    o.als_block = per_block / static_cast<double>(sc.K);
    o.iterations = als.iterations;
    o.converged = als.converged;
    if (keep_trace) o.trace = std::move(als.error_trace);
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double to_db(double x) { return 10.0 * std::log10(x); }

ResultRow nmse_row(std::string name, double snr, double mean_nmse, std::uint64_t seed) {
  ResultRow r;
  r.algorithm = std::move(name);
  r.snr_db = snr;
  r.nmse = mean_nmse;
  r.nmse_db = to_db(mean_nmse);
  r.seed = seed;
  return r;
}

// Reduces per-trial outcomes in trial order, so the result does not depend on
// which worker produced which slot.
void aggregate(const std::vector<TrialOutcome>& trials, const std::vector<double>& snr_grid, std::uint64_t seed,
               const std::string& als_label, bool with_baselines, RunReport& report) {
  const auto count = static_cast<double>(trials.size());
  for (std::size_t s = 0; s < snr_grid.size(); ++s) {
    double ls = 0.0, krf = 0.0, als = 0.0, als_block = 0.0, nonconv = 0.0;
    std::vector<double> iters;
    iters.reserve(trials.size());
    for (const auto& t : trials) {
      ls += t[s].ls;
      krf += t[s].krf;
      als += t[s].als;
      als_block += t[s].als_block;
      iters.push_back(static_cast<double>(t[s].iterations));
      if (!t[s].converged) nonconv += 1.0;
    }
    const double snr = snr_grid[s];
    if (with_baselines) {
      report.rows.push_back(nmse_row("LS", snr, ls / count, seed));
      report.rows.push_back(nmse_row("KRF", snr, krf / count, seed));
    }
    ResultRow row = nmse_row(als_label, snr, als / count, seed);
    row.iterations_median = median(iters);
    row.iterations_mean = std::accumulate(iters.begin(), iters.end(), 0.0) / count;
    row.nonconverged_frac = nonconv / count;
    report.rows.push_back(row);
    if (with_baselines) {
      ResultRow block = row;
      block.algorithm = als_label + "-block";
      block.nmse = als_block / count;
      block.nmse_db = to_db(block.nmse);
      report.rows.push_back(block);
    }
  }
}

void collect_traces(const std::vector<TrialOutcome>& trials, RunReport& report) {
  for (const auto& t : trials) {
    for (const auto& s : t) report.als_traces.push_back(s.trace);
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

std::pair<std::size_t, std::size_t> split_path_product(std::size_t product) {
  const UraShape s = default_ura_shape(product);
  return {s.n2, s.n1};
}

RunReport run_nmse_sweep(const ExperimentConfig& cfg, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  require_identifiable(cfg.M, cfg.Q, cfg.N, cfg.K, cfg.T, cfg.L1, cfg.L2);

  const Scenario sc = scenario_from(cfg);
  const PilotDesign design = make_design(cfg.M, cfg.Q, cfg.N, cfg.T);
  const LsEstimator ls(design);

  std::vector<TrialOutcome> trials(cfg.trials);
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t e) {
    trials[e] = run_trial(sc, design, ls, cfg.snr_grid_db, cfg.seed, e, true, opts.keep_als_traces);
  });

  RunReport report;
  report.experiment = "nmse-sweep";
  report.config = cfg;
  aggregate(trials, cfg.snr_grid_db, cfg.seed, "ALS", true, report);
  if (opts.keep_als_traces) collect_traces(trials, report);
  report.wall_seconds = seconds_since(start);
  return report;
}

RunReport run_convergence_study(const ExperimentConfig& cfg, ConvergenceAxis axis, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();

  RunReport report;
  report.experiment = axis == ConvergenceAxis::PathProducts ? "convergence-paths" : "convergence-reflectors";
  report.config = cfg;

  const auto& grid = axis == ConvergenceAxis::PathProducts ? cfg.path_products : cfg.reflector_counts;
  for (std::size_t value : grid) {
    ExperimentConfig point = cfg;
    std::string label;
    if (axis == ConvergenceAxis::PathProducts) {
      std::tie(point.L1, point.L2) = split_path_product(value);
      label = "ALS[L1L2=" + std::to_string(value) + "]";
    } else {
      point.N = value;
      point.T = cfg.Q * value;
      label = "ALS[N=" + std::to_string(value) + "]";
      if (!is_power_of_two(point.T)) {
        report.skipped.push_back({label, "T=QN=" + std::to_string(point.T) + " is not a power of two"});
        continue;
      }
    }
    try {
      require_identifiable(point.M, point.Q, point.N, point.K, point.T, point.L1, point.L2);
    } catch (const Error& e) {
      report.skipped.push_back({label, e.what()});
      continue;
    }

    const Scenario sc = scenario_from(point);
    const PilotDesign design = make_design(point.M, point.Q, point.N, point.T);
    const LsEstimator ls(design);
    std::vector<TrialOutcome> trials(point.trials);
    parallel_for(point.trials, point.workers, [&](std::size_t e) {
      trials[e] = run_trial(sc, design, ls, point.snr_grid_db, point.seed, e, false, opts.keep_als_traces);
    });
    aggregate(trials, point.snr_grid_db, point.seed, label, false, report);
    if (opts.keep_als_traces) collect_traces(trials, report);
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

ComplexityRow complexity_row(std::size_t M, std::size_t Q, std::size_t N, std::size_t K, std::size_t L1,
                             std::size_t L2, std::size_t als_iter) {
  const double k = static_cast<double>(K);
  const double mq = static_cast<double>(M * Q);
  const double n = static_cast<double>(N);
  const double mqn = mq * n;
  const double rank = static_cast<double>(L1 * L2);

  ComplexityRow row;
  row.N = N;
  row.als_iter = als_iter;
  row.ls = k * mqn * mqn * mqn;
  row.krf = k * mqn;
  row.als = k * mqn * static_cast<double>(als_iter) * rank * rank * (1.0 + k / n + k / mq);
  row.krf_total = row.krf + row.ls;
  row.als_total = row.als + row.ls;
  return row;
}

RunReport complexity_report(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  RunReport report;
  report.experiment = "complexity";
  report.config = cfg;
  for (std::size_t n : cfg.complexity_n_grid) {
    report.complexity.push_back(complexity_row(cfg.M, cfg.Q, n, cfg.K, cfg.L1, cfg.L2, cfg.als_iter));
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

RunReport run_single(const ExperimentConfig& cfg) {
  ExperimentConfig one = cfg;
  one.trials = 1;
  RunReport report = run_nmse_sweep(one);
  report.experiment = "single-run";
  return report;
}

}  // namespace irsce
