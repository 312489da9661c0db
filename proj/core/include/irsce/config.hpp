#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace irsce {

/// Scenario scalars shared by all experiments.
///
/// The config file format is one `key = value` pair per line; `#` starts a
/// comment; list values are comma-separated. Keys match the field names
/// below. An SNR of `inf` means noise-free training.
struct ExperimentConfig {
  std::size_t M = 4;
  std::size_t Q = 4;
  std::size_t N = 16;
  std::size_t T = 64;
  std::size_t K = 5;
  std::size_t L1 = 2;
  std::size_t L2 = 2;
  std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30};
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  double eps = 1e-5;
  std::size_t i_max = 100;
  double ar_lambda = 0.75;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t workers = 1;

  std::vector<std::size_t> path_products{2, 4, 8, 16};
  std::vector<std::size_t> reflector_counts{16, 32, 64};
  std::vector<std::size_t> complexity_n_grid{16, 32, 64, 128, 256};
  /// Iteration count fed into the ALS complexity order.
  std::size_t als_iter = 10;

  /// Desk-scale defaults (500 trials).
  static ExperimentConfig desk_profile() { return {}; }
  /// Full Monte-Carlo scale (10^4 trials).
  static ExperimentConfig full_profile();

  /// Range checks on every field; throws ConfigError. Identifiability is
  /// checked separately by the runners.
  void validate() const;
};

/// Applies `key = value` lines on top of `base`. Throws ConfigError on unknown
/// keys or malformed values, with the offending line number.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

/// Reads and parses a config file; throws IoError if it cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Parses a comma-separated list of reals ("inf" allowed).
std::vector<double> parse_real_list(std::string_view text);

/// Serializes every field in the same `key = value` format parse_config accepts.
std::string to_config_text(const ExperimentConfig& cfg);

}  // namespace irsce
