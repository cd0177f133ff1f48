#include "qdisc/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "qdisc/cli/artifacts.hpp"
#include "qdisc/cli/scene_io.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/verify/verify.hpp"

namespace qdisc::cli {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CapacityError*>(&e)) return kExitCapacity;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const EmptyFeasibleRegionError*>(&e) ||
      dynamic_cast<const DomainError*>(&e) || dynamic_cast<const InsufficientDataError*>(&e))
    return kExitUsage;
  return kExitFailure;
}

namespace {

void make_out_dir(const fs::path& dir) {
  if (dir.empty()) throw UsageError("--out is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

}  // namespace

grover::SampleRun cmd_sample(const SampleOptions& opt, std::ostream& log) {
  if (opt.points == 0) throw UsageError("--points must be at least 1");
  const auto scene = load_scene(opt.scene);
  make_out_dir(opt.out);

  RunSummary summary;
  summary.backend = opt.backend;
  if (scene.n <= geo::kMaxEnumerableBits)
    summary.p_exact = grover::estimate_feasible_fraction(scene, grover::EstimateMethod::exact).p;

  grover::SampleRun run;
  if (opt.backend == grover::SamplerBackend::quantum) {
    const auto estimate = grover::estimate_feasible_fraction(scene, opt.method, opt.samples, opt.seed);
    const grover::QuantumSampler sampler(scene, grover::plan_iterations(estimate.p));
    run = sampler.sample(opt.points, opt.seed);
    summary.p_estimate = estimate.p;
    summary.iterations = sampler.plan().iterations;
  } else {
    run = grover::classical_rejection_sample(scene, opt.points, opt.seed);
    summary.p_estimate = static_cast<double>(run.stats.accepted_points) / static_cast<double>(run.stats.shots);
  }
  summary.stats = run.stats;

  for (const auto& p : run.points)
    if (!geo::is_feasible(scene, p.point))
      throw ValidationError("sampler returned infeasible point (" + std::to_string(p.point.x) + "," +
                            std::to_string(p.point.y) + ")");

  const auto points = run.grid_points();
  write_file_atomic(opt.out / "points.csv", points_csv(run));
  write_file_atomic(opt.out / "stats.csv", stats_csv(summary));
  write_file_atomic(opt.out / "scene.svg", scene_svg(scene, points));
  Manifest m;
  m.command = "sample";
  m.backend = grover::to_string(opt.backend);
  m.seed = opt.seed;
  m.points = opt.points;
  m.scene_hashes = {scene_hash(scene)};
  m.scenes = {dump_scene(scene)};
  m.files = {"points.csv", "stats.csv", "scene.svg"};
  write_file_atomic(opt.out / "manifest.json", manifest_json(m));

  log << grover::to_string(opt.backend) << ": " << run.points.size() << " points, " << run.stats.oracle_calls
      << " oracle calls (" << run.stats.mean_calls_per_point << " per point), R = " << summary.iterations
      << "\nwrote " << (opt.out / "points.csv").string() << ", stats.csv, scene.svg, manifest.json\n";
  return run;
}

std::vector<fs::path> read_scene_list(const fs::path& list) {
  std::ifstream in(list);
  if (!in) throw IoError("cannot read scene list " + list.string());
  std::vector<fs::path> out;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const auto b = line.find_last_not_of(" \t\r");
    fs::path p = line.substr(a, b - a + 1);
    out.push_back(p.is_relative() ? list.parent_path() / p : p);
  }
  return out;
}

std::vector<grover::SweepRow> cmd_bench(const BenchOptions& opt, std::ostream& log) {
  if (opt.scenes.size() < 2) throw UsageError("bench needs at least two scenes");
  if (opt.points == 0) throw UsageError("--points must be at least 1");
  if (opt.seeds == 0) throw UsageError("--seeds must be at least 1");
  std::vector<geo::Scene> scenes;
  for (const auto& path : opt.scenes) scenes.push_back(load_scene(path));
  std::vector<double> ps;
  for (const auto& s : scenes) ps.push_back(grover::estimate_feasible_fraction(s, grover::EstimateMethod::exact).p);
  std::sort(ps.begin(), ps.end());
  if (std::unique(ps.begin(), ps.end()) - ps.begin() < 2)
    throw UsageError("bench scenes must span at least two distinct feasible fractions");
  make_out_dir(opt.out);

  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < opt.seeds; ++i) seeds.push_back(opt.seed + i);
  const auto rows = grover::sweep_complexity(scenes, opt.points, seeds);

  write_file_atomic(opt.out / "bench.csv", bench_csv(rows));
  write_file_atomic(opt.out / "bench.svg", bench_svg(rows, opt.points));
  Manifest m;
  m.command = "bench";
  m.seed = opt.seed;
  m.points = opt.points;
  m.seeds = seeds;
  for (const auto& s : scenes) {
    m.scene_hashes.push_back(scene_hash(s));
    m.scenes.push_back(dump_scene(s));
  }
  m.files = {"bench.csv", "bench.svg"};
  write_file_atomic(opt.out / "manifest.json", manifest_json(m));

  for (const auto& r : rows)
    log << "p=" << r.p << " R=" << r.iterations << " classical=" << r.classical_mean_calls
        << " quantum=" << r.quantum_mean_calls << " (M/p=" << r.classical_analytic
        << ", (R+1)M=" << r.quantum_analytic << ")\n";
  log << "wrote " << (opt.out / "bench.csv").string() << ", bench.svg, manifest.json\n";
  return rows;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feasible-point sampling on a discretized workspace with Grover amplification", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  const std::map<std::string, grover::SamplerBackend> backends{{"quantum", grover::SamplerBackend::quantum},
                                                               {"classical", grover::SamplerBackend::classical}};
  const std::map<std::string, grover::EstimateMethod> methods{{"exact", grover::EstimateMethod::exact},
                                                              {"monte-carlo", grover::EstimateMethod::monte_carlo}};

  SampleOptions sample;
  auto* sample_cmd = app.add_subcommand("sample", "Sample feasible points and write CSV, SVG and a manifest");
  sample_cmd->add_option("--scene", sample.scene, "Scene document")->required();
  sample_cmd->add_option("--points", sample.points, "Number of points to return")->required();
  sample_cmd->add_option("--seed", sample.seed, "Master seed");
  sample_cmd->add_option("--backend", sample.backend, "quantum or classical")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
  sample_cmd->add_option("--out", sample.out, "Output directory")->required();
  sample_cmd->add_option("--method", sample.method, "How the quantum backend estimates p: exact or monte-carlo")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  sample_cmd->add_option("--samples", sample.samples, "Draws for the monte-carlo estimate");

  int verify_bits = 3;
  std::optional<std::string> mutate;
  int trials = 100;
  auto* verify_cmd = app.add_subcommand("verify", "Check every arithmetic and oracle operator exhaustively");
  verify_cmd->add_option("-n,--bits", verify_bits, "Bits per register")->capture_default_str();
  verify_cmd->add_option("--trials", trials, "Random states per round-trip check")->capture_default_str();
  verify_cmd->add_option("--mutate", mutate, "Corrupt one operator")->group("");

  BenchOptions bench;
  std::vector<fs::path> bench_scenes;
  fs::path scene_list;
  auto* bench_cmd = app.add_subcommand("bench", "Compare oracle calls of both backends across scenes");
  bench_cmd->add_option("--scene", bench_scenes, "Scene documents (repeatable)");
  bench_cmd->add_option("--scene-list", scene_list, "File listing scene documents");
  bench_cmd->add_option("--points", bench.points, "Points per run (M)")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "First seed")->capture_default_str();
  bench_cmd->add_option("--seeds", bench.seeds, "Number of seeds")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Output directory")->required();

  fs::path estimate_scene;
  grover::EstimateMethod estimate_method = grover::EstimateMethod::exact;
  std::uint64_t estimate_samples = 100000;
  std::uint64_t estimate_seed = 0;
  auto* estimate_cmd = app.add_subcommand("estimate-p", "Estimate the feasible fraction of a scene");
  estimate_cmd->add_option("--scene", estimate_scene, "Scene document")->required();
  estimate_cmd->add_option("--method", estimate_method, "exact or monte-carlo")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  estimate_cmd->add_option("--samples", estimate_samples, "Draws for monte-carlo")->capture_default_str();
  estimate_cmd->add_option("--seed", estimate_seed, "Seed for monte-carlo");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample_cmd) {
      cmd_sample(sample, out);
    } else if (*verify_cmd) {
      verify::VerifyOptions options;
      options.n = verify_bits;
      options.mutate = mutate;
      options.reversibility_trials = trials;
      const auto report = verify::run_verify(options);
      out << report.format();
      return report.passed() ? kExitOk : kExitFailure;
    } else if (*bench_cmd) {
      bench.scenes = bench_scenes;
      if (!scene_list.empty())
        for (auto& p : read_scene_list(scene_list)) bench.scenes.push_back(p);
      cmd_bench(bench, out);
    } else if (*estimate_cmd) {
      const auto scene = load_scene(estimate_scene);
      const auto e = grover::estimate_feasible_fraction(scene, estimate_method, estimate_samples, estimate_seed);
      out << "method,p,standard_error,samples\n"
          << (estimate_method == grover::EstimateMethod::exact ? "exact" : "monte-carlo") << ','
          << format_double(e.p) << ',' << format_double(e.standard_error) << ',' << e.samples << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}

}  // namespace qdisc::cli
