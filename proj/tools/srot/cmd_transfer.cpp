#include <memory>
#include <ostream>
#include <set>

#include "cli.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "srot/colortransfer.hpp"
#include "srot/csv.hpp"
#include "srot/error.hpp"

namespace srot::cli {

namespace {

struct TransferArgs {
  std::string src;
  std::string ref;
  bool synthetic = false;
  int k = 32;
  int k_ref = 0;
  double lambda = 0.0;
  std::string out = "srot-transfer";
  std::string snapshots;
  bool timing = false;
  bool no_lp = false;
  SolverFlags solver;
};

nlohmann::ordered_json palette_json(const std::vector<Color>& colors) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const Color& c : colors) j.push_back({c[0], c[1], c[2]});
  return j;
}

nlohmann::ordered_json vector_json(const Vector& v) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (Index k = 0; k < v.size(); ++k) j.push_back(v[k]);
  return j;
}

int run_transfer(const TransferArgs& args, std::ostream& out) {
  const SolverOptions options = to_options(args.solver);
  if (args.k < 1) throw ConfigError("--k must be at least 1");
  const std::filesystem::path dir(args.out);

  RGBImage source;
  RGBImage reference;
  if (args.synthetic) {
    SyntheticPair pair = synth_three_color();
    source = std::move(pair.source);
    reference = std::move(pair.reference);
  } else {
    if (args.src.empty() || args.ref.empty()) throw ConfigError("--src and --ref are required without --synthetic");
    source = read_ppm(std::filesystem::path(args.src));
    reference = read_ppm(std::filesystem::path(args.ref));
  }
  ensure_directory(dir);
  if (args.synthetic) {
    write_ppm(dir / "source.ppm", source);
    write_ppm(dir / "reference.ppm", reference);
  }

  const QuantizedImage qs = kmeans_quantize(source, args.k, args.solver.seed);
  const QuantizedImage qr = kmeans_quantize(reference, args.k_ref > 0 ? args.k_ref : args.k, args.solver.seed);
  const Problem problem(build_cost(qs, qr), qs.histogram, qr.histogram, args.lambda);

  std::optional<LPPlan> lp;
  if (!args.no_lp) lp = lp_transport_solve(problem.cost(), problem.source(), problem.target());

  std::set<long> snapshots;
  if (!args.snapshots.empty()) {
    for (long k : parse_long_list(args.snapshots)) {
      if (k < 0) throw ConfigError("snapshot epochs must be nonnegative");
      snapshots.insert(k);
    }
  }
  auto render = [&](const Matrix& plan) {
    return recolor(qs, barycentric_project(plan, qr.centroids, qs.centroids).centroids);
  };

  SolveContext ctx;
  ctx.record_time = args.timing;
  ctx.lp_plan = lp ? &lp->plan : nullptr;
  if (!snapshots.empty()) {
    ctx.on_epoch = [&](long epoch, const TransportPlan& plan) {
      if (snapshots.count(epoch)) write_ppm(dir / ("snapshot_" + std::to_string(epoch) + ".ppm"), render(plan.values()));
    };
  }
  const Solution solution = solve(problem, options, ctx);

  const Projection projection = barycentric_project(solution.plan.values(), qr.centroids, qs.centroids);
  write_ppm(dir / "output.ppm", recolor(qs, projection.centroids));
  write_ppm(dir / "quantized_source.ppm", recolor(qs, qs.centroids));
  if (lp) write_ppm(dir / "lp.ppm", render(lp->plan));
  write_plan(dir / "plan.txt", solution.plan.values());
  write_trace_csv(dir / "trace.csv", solution.trace);

  nlohmann::ordered_json summary = trace_summary(problem, solution, options);
  summary["source_palette"] = palette_json(qs.centroids);
  summary["reference_palette"] = palette_json(qr.centroids);
  summary["source_histogram"] = vector_json(qs.histogram);
  summary["reference_histogram"] = vector_json(qr.histogram);
  summary["projected_palette"] = palette_json(projection.centroids);
  nlohmann::ordered_json starved = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < projection.starved.size(); ++i) {
    if (projection.starved[i]) starved.push_back(i);
  }
  summary["starved_rows"] = starved;
  summary["source_k_reduced"] = qs.reduced_k;
  summary["reference_k_reduced"] = qr.reduced_k;
  if (lp) summary["lp_cost"] = lp->cost;
  write_json(dir / "summary.json", summary);

  out << "transfer " << options.label() << ": m=" << problem.rows() << " n=" << problem.cols() << ", "
      << solution.epochs << " epochs, gap " << format_double(solution.final_gap) << ", output "
      << (dir / "output.ppm").string() << '\n';
  if (!starved.empty()) out << "note: " << starved.size() << " source colors received no mass and were kept\n";
  return kExitOk;
}

}  // namespace

Action setup_transfer(CLI::App& app, std::ostream& out, std::ostream&) {
  auto args = std::make_shared<TransferArgs>();
  auto* src = app.add_option("--src", args->src, "source image (binary PPM)");
  auto* ref = app.add_option("--ref", args->ref, "reference image (binary PPM)");
  auto* synth = app.add_flag("--synthetic", args->synthetic, "use the built-in 3-color pair");
  synth->excludes(src)->excludes(ref);
  app.add_option("--k", args->k, "palette size")->capture_default_str();
  app.add_option("--k-ref", args->k_ref, "reference palette size (default: --k)");
  app.add_option("--lambda", args->lambda, "relaxation parameter")->required();
  app.add_option("--out", args->out, "output directory")->capture_default_str();
  app.add_option("--snapshots", args->snapshots, "comma-separated epochs at which to write intermediate images");
  app.add_flag("--timing", args->timing, "record wall-clock seconds");
  app.add_flag("--no-lp", args->no_lp, "skip the LP reference and lp.ppm");
  add_solver_flags(app, args->solver);
  return [args, &out] { return run_transfer(*args, out); };
}

}  // namespace srot::cli
