#include "common.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "srot/csv.hpp"
#include "srot/error.hpp"

namespace srot::cli {

void add_solver_flags(CLI::App& app, SolverFlags& flags) {
  app.add_option("--algo", flags.algo, "fw or bcfw")->check(CLI::IsMember({"fw", "bcfw"}))->capture_default_str();
  app.add_option("--sampling", flags.sampling, "uniform, permutation or gap")
      ->check(CLI::IsMember({"uniform", "permutation", "gap"}))
      ->capture_default_str();
  app.add_option("--step", flags.step, "dec or els")->check(CLI::IsMember({"dec", "els"}))->capture_default_str();
  app.add_option("--variant", flags.variant, "plain, away or pairwise")
      ->check(CLI::IsMember({"plain", "away", "pairwise"}))
      ->capture_default_str();
  app.add_option("--eps", flags.eps, "stopping gap")->capture_default_str();
  app.add_option("--max-epochs", flags.max_epochs, "epoch budget")->capture_default_str();
  app.add_option("--gap-period", flags.gap_period, "epochs between gap checks")->capture_default_str();
  app.add_option("--refresh-m", flags.refresh_m, "gap-adaptive global refresh every M*n steps")
      ->capture_default_str();
  app.add_option("--seed", flags.seed, "random seed")->capture_default_str();
}

SolverOptions to_options(const SolverFlags& flags) {
  SolverOptions o;
  o.algorithm = flags.algo == "fw" ? Algorithm::FrankWolfe : Algorithm::BlockCoordinate;
  if (flags.sampling == "uniform") {
    o.sampling = Sampling::Uniform;
  } else if (flags.sampling == "permutation") {
    o.sampling = Sampling::Permutation;
  } else if (flags.sampling == "gap") {
    o.sampling = Sampling::GapAdaptive;
  } else {
    throw ConfigError("unknown sampling '" + flags.sampling + "'");
  }
  o.step_rule = flags.step == "dec" ? StepRule::Decay : StepRule::ExactLineSearch;
  if (flags.variant == "away") {
    o.variant = Variant::Away;
  } else if (flags.variant == "pairwise") {
    o.variant = Variant::Pairwise;
  } else {
    o.variant = Variant::Plain;
  }
  o.epsilon = flags.eps;
  o.max_epochs = flags.max_epochs;
  o.gap_check_period = flags.gap_period;
  o.global_refresh_m = flags.refresh_m;
  o.rng_seed = flags.seed;
  o.validate();
  return o;
}

MethodSpec parse_method(const std::string& raw) {
  std::string name = raw;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  MethodSpec spec;
  spec.name = name;
  if (name == "pgd" || name == "fista") {
    spec.accelerated = name == "fista";
    return spec;
  }
  const std::vector<std::string> parts = split(name, '-');
  SolverOptions o;
  auto step = [&](const std::string& s) {
    if (s == "dec") return StepRule::Decay;
    if (s == "els") return StepRule::ExactLineSearch;
    throw ConfigError("unknown step rule in method '" + raw + "'");
  };
  if (parts.size() == 2 && parts[0] == "fw") {
    o.algorithm = Algorithm::FrankWolfe;
    o.step_rule = step(parts[1]);
  } else if (parts.size() == 3 && parts[0] == "bcfw") {
    if (parts[1] == "u") {
      o.sampling = Sampling::Uniform;
    } else if (parts[1] == "p") {
      o.sampling = Sampling::Permutation;
    } else if (parts[1] == "ga") {
      o.sampling = Sampling::GapAdaptive;
    } else {
      throw ConfigError("unknown sampling in method '" + raw + "'");
    }
    o.step_rule = step(parts[2]);
  } else if (parts.size() == 2 && (parts[0] == "bcafw" || parts[0] == "bcpfw")) {
    o.variant = parts[0] == "bcafw" ? Variant::Away : Variant::Pairwise;
    o.step_rule = step(parts[1]);
  } else {
    throw ConfigError("unknown method '" + raw + "'");
  }
  o.validate();
  spec.solver = o;
  return spec;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) {
    if (!item.empty()) out.push_back(parse_double(item));
  }
  if (out.empty()) throw ConfigError("empty list '" + text + "'");
  return out;
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ConfigError("not an integer: '" + item + "'");
    out.push_back(value);
  }
  if (out.empty()) throw ConfigError("empty list '" + text + "'");
  return out;
}

std::pair<long, long> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const long v = std::stol(text);
      return {v, v};
    }
    const long lo = std::stol(text.substr(0, dots));
    const long hi = std::stol(text.substr(dots + 2));
    if (lo > hi) throw ConfigError("empty range '" + text + "'");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad range '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ConfigError("bad range '" + text + "'");
  }
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw InputError("cannot create directory " + dir.string());
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const SolverTrace& trace) {
  std::ofstream out = open_output(path);
  out << "# schema: " << kTraceSchema << '\n' << kTraceHeader << '\n';
  for (const MetricRecord& r : trace.records) {
    out << r.epoch << ',' << format_double(r.wall_seconds) << ',' << format_double(r.objective) << ','
        << format_double(r.gap) << ',' << format_double(r.marginal_error) << ',' << format_double(r.sparsity) << ','
        << format_double(r.matrix_error) << ',' << format_double(r.value_error) << '\n';
  }
  if (!out) throw InputError("write failed for " + path.string());
}

void write_plan(const std::filesystem::path& path, const Matrix& plan) {
  std::ofstream out = open_output(path);
  write_matrix(out, plan);
  if (!out) throw InputError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& value) {
  std::ofstream out = open_output(path);
  out << value.dump(2) << '\n';
  if (!out) throw InputError("write failed for " + path.string());
}

nlohmann::ordered_json json_number(double value) {
  if (std::isfinite(value)) return value;
  return format_double(value);
}

nlohmann::ordered_json trace_summary(const Problem& problem, const Solution& solution, const SolverOptions& options) {
  nlohmann::ordered_json j;
  j["schema"] = "srot.summary/1";
  j["label"] = options.label();
  j["m"] = problem.rows();
  j["n"] = problem.cols();
  j["lambda"] = problem.lambda();
  j["seed"] = options.rng_seed;
  j["epsilon"] = options.epsilon;
  j["max_epochs"] = options.max_epochs;
  j["converged"] = solution.converged;
  j["epochs"] = solution.epochs;
  j["final_gap"] = json_number(solution.final_gap);
  if (!solution.trace.records.empty()) {
    const MetricRecord& r = solution.trace.records.back();
    j["objective"] = json_number(r.objective);
    j["marginal_error"] = json_number(r.marginal_error);
    j["sparsity"] = json_number(r.sparsity);
    j["matrix_error"] = json_number(r.matrix_error);
    j["value_error"] = json_number(r.value_error);
    j["wall_seconds"] = json_number(r.wall_seconds);
  }
  nlohmann::ordered_json meta;
  for (const auto& [k, v] : solution.trace.meta) meta[k] = v;
  j["meta"] = meta;
  return j;
}

}  // namespace srot::cli
