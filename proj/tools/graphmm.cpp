// Command-line front end: enumeration, scoring, simulation, evaluation,
// the two-pair toy model, and permutation utilities.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphmm/baselines.hpp"
#include "graphmm/engine.hpp"
#include "graphmm/errors.hpp"
#include "graphmm/estimate.hpp"
#include "graphmm/io.hpp"
#include "graphmm/model.hpp"
#include "graphmm/partition.hpp"
#include "graphmm/sim.hpp"
#include "graphmm/toy.hpp"

namespace fs = std::filesystem;
using namespace graphmm;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct LatticeSpec {
  int rows = 0;
  int cols = 0;
};

LatticeSpec parse_lattice(const std::string& text) {
  LatticeSpec spec;
  const auto x = text.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--lattice", "expected ROWSxCOLS");
  try {
    spec.rows = std::stoi(text.substr(0, x));
    spec.cols = std::stoi(text.substr(x + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--lattice", "expected ROWSxCOLS");
  }
  if (spec.rows < 1 || spec.cols < 1)
    throw CLI::ValidationError("--lattice", "dimensions must be positive");
  return spec;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GRAPHMM_SEED")) return std::strtoull(env, nullptr, 10);
  return 12345;
}

std::string format_threshold(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", c);
  return buf;
}

// ----------------------------------------------------------------- enumerate

struct EnumerateArgs {
  std::string lattice;
  std::string edges;
  std::string list_path;
  int cap = kDefaultEnumerationCap;
};

int run_enumerate(const EnumerateArgs& args) {
  Graph g = args.edges.empty()
                ? [&] { const auto spec = parse_lattice(args.lattice);
                        return lattice_graph(spec.rows, spec.cols); }()
                : read_edge_list(args.edges);
  const auto partitions = enumerate_graph_respecting(g, args.cap);
  std::cout << partitions.size() << '\n';
  if (!args.list_path.empty()) {
    std::ofstream out(args.list_path);
    if (!out) throw DataError("cannot write partition list: " + args.list_path);
    for (const auto& p : partitions) out << to_string(p) << '\n';
  }
  return 0;
}

// --------------------------------------------------------------------- score

struct ScoreArgs {
  std::string x_path, y_path;
  std::string lattice;
  std::string edges;
  std::string patch = "2x2";
  int radius = 1;
  std::vector<double> thresholds{0.01, 0.05, 0.1, 0.2};
  std::string hyper_path;
  std::string save_hyper_path;
  std::string out_dir = ".";
  int threads = 1;
  int cap = kDefaultEnumerationCap;
  std::optional<double> mu0, tau2, delta0, sigma2, df, p0;
};

int run_score(const ScoreArgs& args) {
  const DataMatrices data(read_data_csv(args.x_path), read_data_csv(args.y_path));

  const bool lattice_mode = !args.lattice.empty();
  LatticeSpec lattice_spec;
  std::optional<Graph> edge_graph;
  if (lattice_mode) {
    lattice_spec = parse_lattice(args.lattice);
    if (lattice_spec.rows * lattice_spec.cols != data.n_vertices())
      throw DataError("lattice size " + std::to_string(lattice_spec.rows * lattice_spec.cols) +
                      " != data rows " + std::to_string(data.n_vertices()));
  } else {
    edge_graph = read_edge_list(args.edges);
    if (edge_graph->n_vertices() != data.n_vertices())
      throw DataError("graph vertex count != data rows");
  }
  const auto patch_spec = parse_lattice(args.patch);

  Hyperparams hp;
  if (!args.hyper_path.empty()) {
    hp = read_hyperparams(args.hyper_path);
  } else if (lattice_mode) {
    EstimationOptions est;
    est.patch_rows = patch_spec.rows;
    est.patch_cols = patch_spec.cols;
    est.mu0 = args.mu0;
    est.tau2 = args.tau2;
    est.delta0 = args.delta0;
    est.sigma2 = args.sigma2;
    est.df = args.df;
    est.p0 = args.p0;
    hp = estimate_hyperparams(data, lattice_spec.rows, lattice_spec.cols, est);
  } else {
    throw DataError("scoring an edge-list graph requires --hyper (estimation is lattice-only)");
  }
  if (args.mu0) hp.mu0 = *args.mu0;
  if (args.tau2) hp.tau2 = *args.tau2;
  if (args.delta0) hp.delta0 = *args.delta0;
  if (args.sigma2) hp.sigma2 = *args.sigma2;
  if (args.df) hp.df = *args.df;
  if (args.p0) hp.p0 = *args.p0;

  fs::create_directories(args.out_dir);
  if (!args.save_hyper_path.empty()) write_hyperparams(hp, args.save_hyper_path);

  EngineOptions engine;
  engine.patch_rows = patch_spec.rows;
  engine.patch_cols = patch_spec.cols;
  engine.threads = args.threads;
  engine.enumeration_cap = args.cap;

  const LfdrResult result =
      lattice_mode ? lfdr_all(data, lattice_spec.rows, lattice_spec.cols, hp, engine)
                   : lfdr_all_graph(data, *edge_graph, args.radius, hp, engine);

  const int out_cols = lattice_mode ? lattice_spec.cols : 0;
  write_lfdr_csv(result, out_cols, (fs::path(args.out_dir) / "lfdr.csv").string());

  const Graph graph =
      lattice_mode ? lattice_graph(lattice_spec.rows, lattice_spec.cols) : *edge_graph;
  std::ofstream report(fs::path(args.out_dir) / "report.txt");
  if (!report) throw DataError("cannot write report.txt");
  report << "vertices=" << data.n_vertices() << " failed_patches=" << result.n_failed() << '\n';
  for (double c : args.thresholds) {
    const auto list = discovery_list(result, c);
    const auto name = "discoveries_" + format_threshold(c) + ".csv";
    std::ofstream disc(fs::path(args.out_dir) / name);
    if (!disc) throw DataError("cannot write " + name);
    disc << "vertex,row,col,lfdr\n";
    char buf[32];
    for (int v : list.vertices) {
      std::snprintf(buf, sizeof buf, "%.8g", result.lfdr[v]);
      disc << v << ',' << (out_cols > 0 ? v / out_cols : -1) << ','
           << (out_cols > 0 ? v % out_cols : -1) << ',' << buf << '\n';
    }
    report << "threshold=" << format_threshold(c) << " discoveries=" << list.vertices.size();
    if (!list.empty) {
      char fdr_buf[32];
      std::snprintf(fdr_buf, sizeof fdr_buf, "%.8g", list.controlled_fdr);
      report << " controlled_fdr=" << fdr_buf;
      const auto clusters = discovery_clusters(graph, list.vertices);
      report << " clusters=";
      for (std::size_t i = 0; i < clusters.size(); ++i)
        report << (i ? "," : "") << clusters[i];
    } else {
      report << " controlled_fdr=na";
    }
    report << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------ simulate

struct SimulateArgs {
  std::string config_path;
  int replicates = 3;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> non_respecting_target;
};

int run_simulate(const SimulateArgs& args) {
  ScenarioConfig config = scenario_from_key_value(read_key_value(args.config_path));
  if (args.seed) config.seed = *args.seed;
  for (int rep = 0; rep < args.replicates; ++rep) {
    auto rng = replicate_rng(config.seed, rep);
    const SyntheticDataset dataset =
        args.non_respecting_target
            ? generate_non_respecting_scenario(config, *args.non_respecting_target, rng)
            : generate_scenario(config, rng);
    const fs::path dir = fs::path(args.out_dir) / ("rep" + std::to_string(rep));
    fs::create_directories(dir);
    write_data_csv(dataset.data.x, (dir / "X.csv").string());
    write_data_csv(dataset.data.y, (dir / "Y.csv").string());
    write_truth_csv(dataset, (dir / "truth.csv").string());
    std::ofstream part(dir / "partition.txt");
    part << to_string(dataset.truth_partition) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------ evaluate

struct EvaluateArgs {
  std::string truth_path;
  std::vector<std::string> score_specs;  // name=path
  std::string x_path, y_path;
  std::vector<std::string> baselines;
  std::vector<double> thresholds{0.01, 0.05, 0.1, 0.2};
  std::string out_path;
};

int run_evaluate(const EvaluateArgs& args) {
  const TruthTable truth = read_truth_csv(args.truth_path);
  const int n = static_cast<int>(truth.truth_null.size());

  std::vector<std::pair<std::string, Vector>> methods;
  for (const auto& spec : args.score_specs) {
    const auto eq = spec.find('=');
    const std::string name = eq == std::string::npos ? spec : spec.substr(0, eq);
    const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    Vector scores = read_score_csv(path);
    if (scores.size() != n)
      throw DataError("score file " + path + " has " + std::to_string(scores.size()) +
                      " rows, truth has " + std::to_string(n));
    methods.emplace_back(name, std::move(scores));
  }

  if (!args.baselines.empty()) {
    if (args.x_path.empty() || args.y_path.empty())
      throw DataError("built-in baselines require --x and --y");
    const DataMatrices data(read_data_csv(args.x_path), read_data_csv(args.y_path));
    if (data.n_vertices() != n) throw DataError("data rows != truth rows");
    const VertexTests tests = vertex_t_tests(data);
    for (const auto& name : args.baselines) {
      if (name == "bh") {
        methods.emplace_back("bh", bh_adjust(tests.p).score);
      } else if (name == "qvalue") {
        methods.emplace_back("qvalue", storey_qvalue(tests.p).score);
      } else if (name == "locfdr") {
        methods.emplace_back("locfdr",
                             kernel_locfdr(tests.t, data.mx() + data.my() - 2).score);
      } else {
        throw CLI::ValidationError("--baselines", "unknown baseline '" + name + "'");
      }
    }
  }
  if (methods.empty()) throw DataError("no score sources given");

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw DataError("cannot write " + args.out_path);
    out = &file;
  }
  *out << "method,threshold,n_listed,empirical_fdr,tpr,controlled_fdr\n";
  char buf[160];
  for (const auto& [name, scores] : methods) {
    const auto points = evaluate(truth.truth_null, scores, args.thresholds);
    for (const auto& pt : points) {
      std::snprintf(buf, sizeof buf, "%s,%g,%d,%.8g,%.8g,%.8g", name.c_str(), pt.threshold,
                    pt.n_listed, pt.empirical_fdr, pt.tpr, pt.mean_score);
      *out << buf << '\n';
    }
  }
  return 0;
}

// ----------------------------------------------------------------------- toy

struct ToyArgs {
  ToyConfig config;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

int run_toy(const ToyArgs& args) {
  ToyConfig config = args.config;
  config.seed = resolve_seed(args.seed);
  std::mt19937_64 rng(config.seed);
  const ToyCurve curve = toy_fdr_curve(config, rng);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw DataError("cannot write " + args.out_path);
    out = &file;
  }
  *out << "list_size,fdr_lfdr1,fdr_lfdr2,mean_lfdr1,mean_lfdr2\n";
  char buf[160];
  for (std::size_t m = 0; m < curve.fdr1.size(); ++m) {
    std::snprintf(buf, sizeof buf, "%zu,%.8g,%.8g,%.8g,%.8g", m + 1, curve.fdr1[m],
                  curve.fdr2[m], curve.mean_score1[m], curve.mean_score2[m]);
    *out << buf << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------- permute

struct PermuteArgs {
  std::string x_path, y_path;
  bool samples = false;
  bool vertices = false;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

int run_permute(const PermuteArgs& args) {
  const DataMatrices data(read_data_csv(args.x_path), read_data_csv(args.y_path));
  std::mt19937_64 rng(resolve_seed(args.seed));
  const DataMatrices permuted =
      args.samples ? permute_sample_labels(data, rng) : permute_vertices(data, rng);
  fs::create_directories(args.out_dir);
  write_data_csv(permuted.x, (fs::path(args.out_dir) / "X.csv").string());
  write_data_csv(permuted.y, (fs::path(args.out_dir) / "Y.csv").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GraphMM: graph-based mixture-model scoring of local false-discovery rates"};
  app.require_subcommand(1);

  EnumerateArgs enum_args;
  auto* cmd_enum = app.add_subcommand("enumerate", "Count graph-respecting partitions");
  auto* enum_lattice = cmd_enum->add_option("--lattice", enum_args.lattice, "lattice ROWSxCOLS");
  cmd_enum->add_option("--edges", enum_args.edges, "edge-list file")->excludes(enum_lattice);
  cmd_enum->add_option("--list", enum_args.list_path, "write partitions to this file");
  cmd_enum->add_option("--cap", enum_args.cap, "enumeration vertex cap");

  ScoreArgs score_args;
  auto* cmd_score = app.add_subcommand("score", "Score per-vertex local false-discovery rates");
  cmd_score->add_option("--x", score_args.x_path, "group-1 data CSV")->required();
  cmd_score->add_option("--y", score_args.y_path, "group-2 data CSV")->required();
  auto* score_lattice = cmd_score->add_option("--lattice", score_args.lattice, "lattice ROWSxCOLS");
  cmd_score->add_option("--edges", score_args.edges, "edge-list file")->excludes(score_lattice);
  cmd_score->add_option("--patch", score_args.patch, "patch window ROWSxCOLS (lattice mode)");
  cmd_score->add_option("--radius", score_args.radius, "patch ball radius (edge mode)");
  cmd_score->add_option("--thresholds", score_args.thresholds, "discovery thresholds")
      ->delimiter(',');
  cmd_score->add_option("--hyper", score_args.hyper_path, "hyperparameter file (skips estimation)");
  cmd_score->add_option("--save-hyper", score_args.save_hyper_path, "write hyperparameters here");
  cmd_score->add_option("--out", score_args.out_dir, "output directory");
  cmd_score->add_option("--threads", score_args.threads, "worker count");
  cmd_score->add_option("--cap", score_args.cap, "enumeration vertex cap");
  cmd_score->add_option("--mu0", score_args.mu0, "override mu0");
  cmd_score->add_option("--tau2", score_args.tau2, "override tau2");
  cmd_score->add_option("--delta0", score_args.delta0, "override delta0");
  cmd_score->add_option("--sigma2", score_args.sigma2, "override sigma2");
  cmd_score->add_option("--df", score_args.df, "override df");
  cmd_score->add_option("--p0", score_args.p0, "override p0");

  SimulateArgs sim_args;
  auto* cmd_sim = app.add_subcommand("simulate", "Generate synthetic scenario datasets");
  cmd_sim->add_option("--config", sim_args.config_path, "scenario key=value file")->required();
  cmd_sim->add_option("--replicates", sim_args.replicates, "replicate datasets");
  cmd_sim->add_option("--out", sim_args.out_dir, "output directory");
  cmd_sim->add_option("--seed", sim_args.seed, "master seed (overrides config)");
  cmd_sim->add_option("--non-respecting", sim_args.non_respecting_target,
                      "corrupt the truth partition to this Rand index");

  EvaluateArgs eval_args;
  auto* cmd_eval = app.add_subcommand("evaluate", "Operating characteristics against truth");
  cmd_eval->add_option("--truth", eval_args.truth_path, "truth CSV")->required();
  cmd_eval->add_option("--scores", eval_args.score_specs, "score files as name=path")
      ->delimiter(',');
  cmd_eval->add_option("--x", eval_args.x_path, "group-1 data CSV (for built-in baselines)");
  cmd_eval->add_option("--y", eval_args.y_path, "group-2 data CSV");
  cmd_eval->add_option("--baselines", eval_args.baselines, "built-ins: bh,qvalue,locfdr")
      ->delimiter(',');
  cmd_eval->add_option("--thresholds", eval_args.thresholds, "thresholds")->delimiter(',');
  cmd_eval->add_option("--out", eval_args.out_path, "output CSV (default stdout)");

  ToyArgs toy_args;
  auto* cmd_toy = app.add_subcommand("toy", "Two-pair toy model FDR curves");
  cmd_toy->add_option("--n", toy_args.config.n_pairs, "number of variable pairs");
  cmd_toy->add_option("--p0", toy_args.config.p0, "marginal null frequency");
  cmd_toy->add_option("--sigma2", toy_args.config.sigma2, "observation noise variance");
  cmd_toy->add_option("--p-block", toy_args.config.p_block, "blocking rate");
  cmd_toy->add_option("--seed", toy_args.seed, "seed");
  cmd_toy->add_option("--out", toy_args.out_path, "curve CSV (default stdout)");

  PermuteArgs perm_args;
  auto* cmd_perm = app.add_subcommand("permute", "Permute sample labels or vertices");
  cmd_perm->add_option("--x", perm_args.x_path, "group-1 data CSV")->required();
  cmd_perm->add_option("--y", perm_args.y_path, "group-2 data CSV")->required();
  auto* flag_samples = cmd_perm->add_flag("--samples", perm_args.samples, "permute sample labels");
  cmd_perm->add_flag("--vertices", perm_args.vertices, "permute vertex rows")
      ->excludes(flag_samples);
  cmd_perm->add_option("--seed", perm_args.seed, "seed");
  cmd_perm->add_option("--out", perm_args.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_enum->parsed()) {
      if (enum_args.lattice.empty() == enum_args.edges.empty())
        throw CLI::ValidationError("enumerate", "specify exactly one of --lattice/--edges");
      return run_enumerate(enum_args);
    }
    if (cmd_score->parsed()) {
      if (score_args.lattice.empty() == score_args.edges.empty())
        throw CLI::ValidationError("score", "specify exactly one of --lattice/--edges");
      for (double c : score_args.thresholds)
        if (!(c >= 0.0 && c <= 1.0))
          throw CLI::ValidationError("--thresholds", "thresholds must be in [0,1]");
      return run_score(score_args);
    }
    if (cmd_sim->parsed()) return run_simulate(sim_args);
    if (cmd_eval->parsed()) return run_evaluate(eval_args);
    if (cmd_toy->parsed()) return run_toy(toy_args);
    if (cmd_perm->parsed()) {
      if (perm_args.samples == perm_args.vertices)
        throw CLI::ValidationError("permute", "specify exactly one of --samples/--vertices");
      return run_permute(perm_args);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
