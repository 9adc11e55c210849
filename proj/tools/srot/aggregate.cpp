#include "aggregate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "srot/csv.hpp"
#include "srot/error.hpp"

namespace srot::cli {

namespace {

constexpr const char* kRunsHeader =
    "method,label,lambda,seed,epoch,wall_seconds,objective,gap,marginal_error,sparsity,matrix_error,value_error";

double panel_value(const MetricRecord& r, std::size_t panel) {
  switch (panel) {
    case 0: return r.objective;
    case 1: return r.gap;
    case 2: return r.marginal_error;
    case 3: return r.sparsity;
    case 4: return r.matrix_error;
    case 5: return r.value_error;
    default: return r.wall_seconds;
  }
}

// Linear interpolation between order statistics; NaN entries are ignored.
double quantile(std::vector<double> values, double q) {
  values.erase(std::remove_if(values.begin(), values.end(), [](double v) { return std::isnan(v); }), values.end());
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::string fixed(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, r.ptr);
}

}  // namespace

const std::vector<std::string>& panel_names() {
  static const std::vector<std::string> names = {"objective",    "gap",         "marginal_error", "sparsity",
                                                 "matrix_error", "value_error", "wall_seconds"};
  return names;
}

void write_runs_csv(std::ostream& out, const std::vector<RunRows>& runs) {
  out << "# schema: " << kRunsSchema << '\n' << kRunsHeader << '\n';
  for (const RunRows& run : runs) {
    for (const MetricRecord& r : run.records) {
      out << run.method << ',' << run.label << ',' << format_double(run.lambda) << ',' << run.seed << ',' << r.epoch
          << ',' << format_double(r.wall_seconds) << ',' << format_double(r.objective) << ','
          << format_double(r.gap) << ',' << format_double(r.marginal_error) << ',' << format_double(r.sparsity)
          << ',' << format_double(r.matrix_error) << ',' << format_double(r.value_error) << '\n';
    }
  }
}

std::vector<RunRows> read_runs_csv(std::istream& in) {
  std::string line;
  bool header = false;
  std::vector<RunRows> runs;
  std::map<std::tuple<std::string, double, std::uint64_t>, std::size_t> index;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kRunsHeader) throw InputError("runs.csv: unexpected header");
      header = true;
      continue;
    }
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 12) throw InputError("runs.csv: line " + std::to_string(line_no) + " has wrong field count");
    const double lambda = parse_double(f[2]);
    const std::uint64_t seed = std::stoull(f[3]);
    const auto key = std::make_tuple(f[0], lambda, seed);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, runs.size()).first;
      runs.push_back({f[0], f[1], lambda, seed, {}});
    }
    MetricRecord r;
    r.epoch = std::stol(f[4]);
    r.wall_seconds = parse_double(f[5]);
    r.objective = parse_double(f[6]);
    r.gap = parse_double(f[7]);
    r.marginal_error = parse_double(f[8]);
    r.sparsity = parse_double(f[9]);
    r.matrix_error = parse_double(f[10]);
    r.value_error = parse_double(f[11]);
    runs[it->second].records.push_back(r);
  }
  if (!header) throw InputError("runs.csv: missing header");
  return runs;
}

std::vector<AggregateRow> aggregate(const std::vector<RunRows>& runs) {
  // Configurations in order of first appearance.
  std::vector<std::pair<std::string, double>> configs;
  for (const RunRows& run : runs) {
    const auto key = std::make_pair(run.method, run.lambda);
    if (std::find(configs.begin(), configs.end(), key) == configs.end()) configs.push_back(key);
  }
  std::vector<AggregateRow> rows;
  for (const auto& [method, lambda] : configs) {
    std::vector<const RunRows*> members;
    std::vector<long> epochs;
    for (const RunRows& run : runs) {
      if (run.method != method || run.lambda != lambda || run.records.empty()) continue;
      members.push_back(&run);
      for (const MetricRecord& r : run.records) epochs.push_back(r.epoch);
    }
    if (members.empty()) continue;
    std::sort(epochs.begin(), epochs.end());
    epochs.erase(std::unique(epochs.begin(), epochs.end()), epochs.end());
    for (long epoch : epochs) {
      AggregateRow row{method, members.front()->label, lambda, epoch, 0, {}};
      std::vector<std::vector<double>> values(panel_names().size());
      for (const RunRows* run : members) {
        // Last record at or before this epoch.
        const MetricRecord* last = nullptr;
        for (const MetricRecord& r : run->records) {
          if (r.epoch > epoch) break;
          last = &r;
        }
        if (last == nullptr) continue;
        ++row.runs;
        for (std::size_t p = 0; p < values.size(); ++p) values[p].push_back(panel_value(*last, p));
      }
      for (const auto& v : values) row.panels.push_back({quantile(v, 0.5), quantile(v, 0.25), quantile(v, 0.75)});
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "# schema: " << kAggregateSchema << '\n' << "method,label,lambda,epoch,runs";
  for (const std::string& name : panel_names()) out << ',' << name << "_median," << name << "_q1," << name << "_q3";
  out << '\n';
  for (const AggregateRow& row : rows) {
    out << row.method << ',' << row.label << ',' << format_double(row.lambda) << ',' << row.epoch << ',' << row.runs;
    for (const auto& p : row.panels) {
      out << ',' << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(p[2]);
    }
    out << '\n';
  }
}

void write_svg(std::ostream& out, const std::vector<AggregateRow>& rows) {
  constexpr int kPanelW = 320;
  constexpr int kPanelH = 220;
  constexpr int kColumns = 4;
  constexpr int kMargin = 40;
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                        "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  const std::size_t panels = panel_names().size();
  const int grid_rows = static_cast<int>((panels + kColumns - 1) / kColumns);

  std::vector<std::pair<std::string, double>> configs;
  for (const AggregateRow& r : rows) {
    const auto key = std::make_pair(r.label, r.lambda);
    if (std::find(configs.begin(), configs.end(), key) == configs.end()) configs.push_back(key);
  }
  const int legend_h = 18 * static_cast<int>(configs.size()) + 10;
  const int width = kColumns * kPanelW;
  const int height = grid_rows * kPanelH + legend_h;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t p = 0; p < panels; ++p) {
    const int ox = static_cast<int>(p % kColumns) * kPanelW;
    const int oy = static_cast<int>(p / kColumns) * kPanelH;
    // Log scale when every finite value is positive.
    double xmax = 1.0;
    double ymin = INFINITY;
    double ymax = -INFINITY;
    bool log_scale = true;
    for (const AggregateRow& r : rows) {
      xmax = std::max(xmax, static_cast<double>(r.epoch));
      for (double v : r.panels[p]) {
        if (!std::isfinite(v)) continue;
        if (v <= 0.0) log_scale = false;
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
    out << "<g transform=\"translate(" << ox << ',' << oy << ")\">\n";
    out << "<text x=\"" << kPanelW / 2 << "\" y=\"14\" text-anchor=\"middle\">" << panel_names()[p]
        << (log_scale ? " (log10)" : "") << "</text>\n";
    const int x0 = kMargin;
    const int x1 = kPanelW - 10;
    const int y0 = kPanelH - 25;
    const int y1 = 22;
    out << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    if (!std::isfinite(ymin)) {
      out << "</g>\n";
      continue;
    }
    auto ty = [&](double v) { return log_scale ? std::log10(v) : v; };
    double lo = ty(ymin);
    double hi = ty(ymax);
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    auto px = [&](double e) { return x0 + (x1 - x0) * e / xmax; };
    auto py = [&](double v) { return y0 - (y0 - y1) * (ty(v) - lo) / (hi - lo); };
    out << "<text x=\"" << x0 - 3 << "\" y=\"" << y0 << "\" text-anchor=\"end\">" << fixed(lo) << "</text>\n";
    out << "<text x=\"" << x0 - 3 << "\" y=\"" << y1 + 8 << "\" text-anchor=\"end\">" << fixed(hi) << "</text>\n";
    out << "<text x=\"" << x1 << "\" y=\"" << y0 + 14 << "\" text-anchor=\"end\">epoch " << fixed(xmax)
        << "</text>\n";
    for (std::size_t c = 0; c < configs.size(); ++c) {
      const char* color = kColors[c % std::size(kColors)];
      std::string median;
      std::string upper;
      std::string lower;
      for (const AggregateRow& r : rows) {
        if (r.label != configs[c].first || r.lambda != configs[c].second) continue;
        const auto& v = r.panels[p];
        if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2])) continue;
        const std::string x = fixed(px(static_cast<double>(r.epoch)));
        median += x + ',' + fixed(py(v[0])) + ' ';
        upper += x + ',' + fixed(py(v[2])) + ' ';
        lower.insert(0, x + ',' + fixed(py(v[1])) + ' ');
      }
      if (median.empty()) continue;
      out << "<polygon points=\"" << upper << lower << "\" fill=\"" << color
          << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
      out << "<polyline points=\"" << median << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
    }
    out << "</g>\n";
  }
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const int y = grid_rows * kPanelH + 14 + 18 * static_cast<int>(c);
    out << "<rect x=\"10\" y=\"" << y - 9 << "\" width=\"12\" height=\"10\" fill=\""
        << kColors[c % std::size(kColors)] << "\"/>\n<text x=\"28\" y=\"" << y << "\">" << configs[c].first
        << " lambda=" << format_double(configs[c].second) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace srot::cli
