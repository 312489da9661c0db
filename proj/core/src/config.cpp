#include "irsce/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "irsce/error.hpp"
#include "irsce/format.hpp"

namespace irsce {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::ConfigError, "invalid value '" + std::string(value) + "' for " + std::string(key));
}

double parse_real(std::string_view key, std::string_view v) {
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || std::isnan(out)) bad_value(key, v);
  return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

std::size_t parse_count(std::string_view key, std::string_view v) {
  return static_cast<std::size_t>(parse_uint(key, v));
}

std::vector<std::size_t> parse_count_list(std::string_view key, std::string_view v) {
  std::vector<std::size_t> out;
  for (auto item : split(v, ',')) out.push_back(parse_count(key, item));
  return out;
}

void apply(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "M") cfg.M = parse_count(key, value);
  else if (key == "Q") cfg.Q = parse_count(key, value);
  else if (key == "N") cfg.N = parse_count(key, value);
  else if (key == "T") cfg.T = parse_count(key, value);
  else if (key == "K") cfg.K = parse_count(key, value);
  else if (key == "L1") cfg.L1 = parse_count(key, value);
  else if (key == "L2") cfg.L2 = parse_count(key, value);
  else if (key == "snr_grid_db") cfg.snr_grid_db = parse_real_list(value);
  else if (key == "trials") cfg.trials = parse_count(key, value);
  else if (key == "seed") cfg.seed = parse_uint(key, value);
  else if (key == "eps") cfg.eps = parse_real(key, value);
  else if (key == "i_max") cfg.i_max = parse_count(key, value);
  else if (key == "ar_lambda") cfg.ar_lambda = parse_real(key, value);
  else if (key == "workers") cfg.workers = parse_count(key, value);
  else if (key == "path_products") cfg.path_products = parse_count_list(key, value);
  else if (key == "reflector_counts") cfg.reflector_counts = parse_count_list(key, value);
  else if (key == "complexity_n_grid") cfg.complexity_n_grid = parse_count_list(key, value);
  else if (key == "als_iter") cfg.als_iter = parse_count(key, value);
  else throw Error(ErrorCode::ConfigError, "unknown config key '" + std::string(key) + "'");
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_real(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::full_profile() {
  ExperimentConfig cfg;
  cfg.trials = 10000;
  return cfg;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigError, what); };
  if (M == 0 || Q == 0 || N == 0 || T == 0 || K == 0 || L1 == 0 || L2 == 0) {
    fail("M, Q, N, T, K, L1, L2 must all be >= 1");
  }
  if (trials == 0) fail("trials must be >= 1");
  if (snr_grid_db.empty()) fail("snr_grid_db must not be empty");
  for (double s : snr_grid_db) {
    if (std::isnan(s) || (std::isinf(s) && s < 0)) fail("snr_grid_db entries must be finite or +inf");
  }
  if (!(eps >= 0.0)) fail("eps must be >= 0");
  if (i_max == 0) fail("i_max must be >= 1");
  if (!(ar_lambda >= 0.0 && ar_lambda <= 1.0)) fail("ar_lambda must lie in [0, 1]");
  for (auto p : path_products) {
    if (p == 0) fail("path_products entries must be >= 1");
  }
  for (auto n : reflector_counts) {
    if (n == 0) fail("reflector_counts entries must be >= 1");
  }
  for (auto n : complexity_n_grid) {
    if (n == 0) fail("complexity_n_grid entries must be >= 1");
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      apply(base, key, value);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split(text, ',')) out.push_back(parse_real("list", item));
  return out;
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "M = " << cfg.M << "\n"
     << "Q = " << cfg.Q << "\n"
     << "N = " << cfg.N << "\n"
     << "T = " << cfg.T << "\n"
     << "K = " << cfg.K << "\n"
     << "L1 = " << cfg.L1 << "\n"
     << "L2 = " << cfg.L2 << "\n"
     << "snr_grid_db = " << join(cfg.snr_grid_db) << "\n"
     << "trials = " << cfg.trials << "\n"
     << "seed = " << cfg.seed << "\n"
     << "eps = " << format_real(cfg.eps) << "\n"
     << "i_max = " << cfg.i_max << "\n"
     << "ar_lambda = " << format_real(cfg.ar_lambda) << "\n"
     << "workers = " << cfg.workers << "\n"
     << "path_products = " << join(cfg.path_products) << "\n"
     << "reflector_counts = " << join(cfg.reflector_counts) << "\n"
     << "complexity_n_grid = " << join(cfg.complexity_n_grid) << "\n"
     << "als_iter = " << cfg.als_iter << "\n";
  return os.str();
}

}  // namespace irsce
