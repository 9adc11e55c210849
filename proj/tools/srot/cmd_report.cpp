#include <fstream>
#include <memory>
#include <ostream>

#include "aggregate.hpp"
#include "cli.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "srot/error.hpp"

namespace srot::cli {

namespace {

struct ReportArgs {
  std::string runs;
  std::string out = "srot-report";
};

int run_report(const ReportArgs& args, std::ostream& out) {
  std::ifstream in(args.runs);
  if (!in) throw InputError("cannot open " + args.runs);
  const std::vector<AggregateRow> rows = aggregate(read_runs_csv(in));
  const std::filesystem::path dir(args.out);
  ensure_directory(dir);
  std::ofstream csv(dir / "aggregate.csv", std::ios::binary);
  std::ofstream svg(dir / "figure.svg", std::ios::binary);
  if (!csv || !svg) throw InputError("cannot write to " + dir.string());
  write_aggregate_csv(csv, rows);
  write_svg(svg, rows);
  out << rows.size() << " aggregate rows; chart at " << (dir / "figure.svg").string() << '\n';
  return kExitOk;
}

}  // namespace

Action setup_report(CLI::App& app, std::ostream& out, std::ostream&) {
  auto args = std::make_shared<ReportArgs>();
  app.add_option("--runs", args->runs, "runs.csv written by bench")->required();
  app.add_option("--out", args->out, "output directory")->capture_default_str();
  return [args, &out] { return run_report(*args, out); };
}

}  // namespace srot::cli
