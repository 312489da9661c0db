#include "irsce/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "irsce/error.hpp"
#include "irsce/format.hpp"

namespace irsce {

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    auto line = text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
    start = pos + 1;
  }
  return out;
}

double read_real(std::string_view v) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  if (v == "nan") return std::numeric_limits<double>::quiet_NaN();
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::IoError, "malformed number '" + std::string(v) + "' in CSV");
  }
  return out;
}

template <typename U>
U read_uint(std::string_view v) {
  U out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::IoError, "malformed integer '" + std::string(v) + "' in CSV");
  }
  return out;
}

void check_header(const std::vector<std::string_view>& lines, std::string_view header) {
  if (lines.empty() || lines.front() != header) {
    throw Error(ErrorCode::IoError, "CSV header mismatch, expected '" + std::string(header) + "'");
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series, bool log_y) {
  constexpr double width = 640, height = 420, left = 70, right = 170, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y) || (log_y && y <= 0)) continue;
      const double yy = log_y ? std::log10(y) : y;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, yy);
      y_max = std::max(y_max, yy);
    }
  }
  if (!std::isfinite(x_min)) x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">" << escape_xml(title) << "</text>\n"
     << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 4.0;
    const double yv = y_min + (y_max - y_min) * i / 4.0;
    os << "<text x=\"" << fixed(px(xv), 1) << "\" y=\"" << height - bottom + 16
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fixed(xv, 1) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << fixed(py(yv) + 4, 1) << "\" font-size=\"11\" text-anchor=\"end\">"
       << (log_y ? "1e" + fixed(yv, 1) : fixed(yv, 1)) << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12 << "\" font-size=\"12\" text-anchor=\"middle\">"
     << escape_xml(x_label) << "</text>\n"
     << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << top + plot_h / 2 << ")\">" << escape_xml(y_label) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = palette[i % std::size(palette)];
    std::string pts;
    for (auto [x, y] : series[i].points) {
      if (!std::isfinite(x) || !std::isfinite(y) || (log_y && y <= 0)) continue;
      pts += fixed(px(x), 2) + "," + fixed(py(log_y ? std::log10(y) : y), 2) + " ";
    }
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << pts << "\"/>\n";
    const double ly = top + 14 + 18.0 * static_cast<double>(i);
    os << "<line x1=\"" << width - right + 12 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 34 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << width - right + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
       << escape_xml(series[i].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::string out(kResultCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.algorithm + ',' + format_real(r.snr_db) + ',' + format_real(r.nmse) + ',' + format_real(r.nmse_db) + ',' +
           format_real(r.iterations_median) + ',' + format_real(r.nonconverged_frac) + ',' + std::to_string(r.seed) +
           ',' + format_real(r.iterations_mean) + '\n';
  }
  return out;
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  const auto lines = lines_of(text);
  check_header(lines, kResultCsvHeader);
  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_line(lines[i]);
    if (f.size() != 8) throw Error(ErrorCode::IoError, "CSV line " + std::to_string(i + 1) + ": expected 8 fields");
    ResultRow r;
    r.algorithm = std::string(f[0]);
    r.snr_db = read_real(f[1]);
    r.nmse = read_real(f[2]);
    r.nmse_db = read_real(f[3]);
    r.iterations_median = read_real(f[4]);
    r.nonconverged_frac = read_real(f[5]);
    r.seed = read_uint<std::uint64_t>(f[6]);
    r.iterations_mean = read_real(f[7]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string complexity_csv(const std::vector<ComplexityRow>& rows) {
  std::string out(kComplexityCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.N) + ',' + std::to_string(r.als_iter) + ',' + format_real(r.ls) + ',' +
           format_real(r.krf) + ',' + format_real(r.als) + ',' + format_real(r.krf_total) + ',' +
           format_real(r.als_total) + '\n';
  }
  return out;
}

std::vector<ComplexityRow> parse_complexity_csv(std::string_view text) {
  const auto lines = lines_of(text);
  check_header(lines, kComplexityCsvHeader);
  std::vector<ComplexityRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_line(lines[i]);
    if (f.size() != 7) throw Error(ErrorCode::IoError, "CSV line " + std::to_string(i + 1) + ": expected 7 fields");
    ComplexityRow r;
    r.N = read_uint<std::size_t>(f[0]);
    r.als_iter = read_uint<std::size_t>(f[1]);
    r.ls = read_real(f[2]);
    r.krf = read_real(f[3]);
    r.als = read_real(f[4]);
    r.krf_total = read_real(f[5]);
    r.als_total = read_real(f[6]);
    rows.push_back(r);
  }
  return rows;
}

std::string render_svg(const RunReport& report) {
  if (report.experiment == "complexity") {
    std::vector<Series> series(3);
    series[0].name = "LS";
    series[1].name = "KRF (+LS)";
    series[2].name = "ALS (+LS)";
    for (const auto& r : report.complexity) {
      const auto n = static_cast<double>(r.N);
      series[0].points.emplace_back(n, r.ls);
      series[1].points.emplace_back(n, r.krf_total);
      series[2].points.emplace_back(n, r.als_total);
    }
    return line_plot("Complexity order vs IRS size", "N", "flops (order)", series, true);
  }

  const bool iterations = report.experiment.starts_with("convergence");
  std::vector<Series> series;
  std::map<std::string, std::size_t> index;
  for (const auto& r : report.rows) {
    auto [it, inserted] = index.try_emplace(r.algorithm, series.size());
    if (inserted) series.push_back({r.algorithm, {}});
    series[it->second].points.emplace_back(r.snr_db, iterations ? r.iterations_median : r.nmse_db);
  }
  if (iterations) return line_plot("ALS iterations to converge", "SNR (dB)", "median iterations", series, false);
  return line_plot("Combined-channel NMSE", "SNR (dB)", "NMSE (dB)", series, false);
}

std::string manifest_json(const RunReport& report) {
  const auto& c = report.config;
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  j["seed"] = c.seed;
  nlohmann::ordered_json cfg;
  cfg["M"] = c.M;
  cfg["Q"] = c.Q;
  cfg["N"] = c.N;
  cfg["T"] = c.T;
  cfg["K"] = c.K;
  cfg["L1"] = c.L1;
  cfg["L2"] = c.L2;
  std::vector<std::string> snr;
  for (double s : c.snr_grid_db) snr.push_back(format_real(s));
  cfg["snr_grid_db"] = snr;
  cfg["trials"] = c.trials;
  cfg["seed"] = c.seed;
  cfg["eps"] = c.eps;
  cfg["i_max"] = c.i_max;
  cfg["ar_lambda"] = c.ar_lambda;
  cfg["workers"] = c.workers;
  cfg["path_products"] = c.path_products;
  cfg["reflector_counts"] = c.reflector_counts;
  cfg["complexity_n_grid"] = c.complexity_n_grid;
  cfg["als_iter"] = c.als_iter;
  j["config"] = cfg;
  j["config_text"] = to_config_text(c);
  auto skipped = nlohmann::ordered_json::array();
  for (const auto& s : report.skipped) skipped.push_back({{"label", s.label}, {"reason", s.reason}});
  j["skipped"] = skipped;
  j["rows"] = report.rows.size() + report.complexity.size();
  j["wall_seconds"] = report.wall_seconds;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_results(const RunReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  const auto csv_path = out_dir / (report.experiment + ".csv");
  write_file(csv_path, report.experiment == "complexity" ? complexity_csv(report.complexity) : results_csv(report.rows));
  written.push_back(csv_path);

  const auto svg_path = out_dir / (report.experiment + ".svg");
  write_file(svg_path, render_svg(report));
  written.push_back(svg_path);

  const auto manifest_path = out_dir / (report.experiment + "_manifest.json");
  write_file(manifest_path, manifest_json(report));
  written.push_back(manifest_path);
  return written;
}

}  // namespace irsce
