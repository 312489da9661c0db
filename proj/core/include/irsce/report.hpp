#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "irsce/harness.hpp"

namespace irsce {

/// Header of the result CSV. The trailing iterations_mean column follows the
/// fixed seven; readers may rely on column order.
inline constexpr std::string_view kResultCsvHeader =
    "algorithm,snr_db,nmse,nmse_db,iterations_median,nonconverged_frac,seed,iterations_mean";

inline constexpr std::string_view kComplexityCsvHeader = "N,als_iter,ls,krf,als,krf_total,als_total";

/// Rows as CSV text (UTF-8, '\n' line ends). Reals use the shortest
/// representation that parses back exactly, so output is byte-stable.
std::string results_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_results_csv(std::string_view text);

std::string complexity_csv(const std::vector<ComplexityRow>& rows);
std::vector<ComplexityRow> parse_complexity_csv(std::string_view text);

/// Line plot: NMSE (dB) or median iterations versus SNR per curve, or the
/// complexity orders versus N on a log axis.
std::string render_svg(const RunReport& report);

/// Full config, seed, skipped points and timing as JSON.
std::string manifest_json(const RunReport& report);

/**
 * Writes <experiment>.csv, <experiment>.svg and <experiment>_manifest.json
 * into out_dir (created if missing) and returns the paths written.
 * Throws IoError on any filesystem failure.
 */
std::vector<std::filesystem::path> emit_results(const RunReport& report, const std::filesystem::path& out_dir);

}  // namespace irsce
