#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pgain/baselines.hpp"
#include "pgain/error.hpp"
#include "pgain/export.hpp"
#include "pgain/gain_series.hpp"
#include "pgain/graph.hpp"
#include "pgain/oracle.hpp"
#include "pgain/rank_analysis.hpp"
#include "pgain/spectral.hpp"

namespace pgain::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kManifestName = "manifest.json";
constexpr const char* kCacheEnv = "PGAIN_CACHE_DIR";

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::empty_graph:
      return 2;
    case ErrorKind::non_convergence:
    case ErrorKind::unreliable_reference:
      return 4;
    case ErrorKind::resource_cap:
      return 5;
    case ErrorKind::io:
      return 1;
    default:
      return 3;
  }
}

std::string hex(std::uint64_t x) {
  char buf[17];
  auto [end, ec] = std::to_chars(buf, buf + 16, x, 16);
  std::string s(buf, end);
  return std::string(16 - s.size(), '0') + s;
}

double parse_number(std::string_view text) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::domain, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string slurp_or_empty(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::io, "cannot write " + p.string());
}

fs::path cache_path(const std::string& input, std::uint64_t fingerprint) {
  const std::string name = hex(fingerprint) + ".lambda1.json";
  if (const char* dir = std::getenv(kCacheEnv); dir && *dir) {
    return fs::path(dir) / name;
  }
  return fs::path(input + "." + name);
}

// lambda1 keyed by graph fingerprint and solver settings. Unreadable or
// stale cache files are ignored, and so is a failed write.
SpectralEstimate spectral_for(const Graph& g, const std::string& input,
                              double tol, std::size_t max_iters,
                              unsigned threads) {
  const fs::path path = cache_path(input, g.fingerprint());
  const std::string text = slurp_or_empty(path);
  if (!text.empty()) {
    const json j = json::parse(text, nullptr, false);
    if (j.is_object() && j.value("fingerprint", "") == hex(g.fingerprint()) &&
        j.value("tol", 0.0) == tol && j.value("max_iters", 0ull) == max_iters &&
        j.value("converged", false)) {
      SpectralEstimate est;
      est.lambda1 = j.value("lambda1", 0.0);
      est.iterations = j.value("iterations", 0ull);
      est.residual = j.value("residual", 0.0);
      est.converged = true;
      if (est.lambda1 > 0.0) return est;
    }
  }
  const SpectralEstimate est = estimate_spectral_radius(g, tol, max_iters, threads);
  if (est.converged) {
    const json j = {{"fingerprint", hex(g.fingerprint())},
                    {"tol", tol},
                    {"max_iters", max_iters},
                    {"lambda1", est.lambda1},
                    {"iterations", est.iterations},
                    {"residual", est.residual},
                    {"converged", est.converged}};
    try {
      if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
      std::ofstream(path, std::ios::trunc) << j.dump(2) << '\n';
    } catch (const std::exception&) {
    }
  }
  return est;
}

SpectralEstimate require_spectral(const Graph& g, const std::string& input,
                                  unsigned threads) {
  auto est = spectral_for(g, input, kDefaultSpectralTol,
                          kDefaultSpectralMaxIters, threads);
  if (!est.converged) {
    throw Error(ErrorKind::non_convergence,
                "spectral radius estimate did not converge");
  }
  return est;
}

json spectral_json(const SpectralEstimate& est) {
  return {{"lambda1", est.lambda1},
          {"iterations", est.iterations},
          {"residual", est.residual},
          {"converged", est.converged}};
}

// Collects outputs of one run and writes the manifest that ties them to the
// input graph.
class RunContext {
 public:
  RunContext(std::string command, std::string input, std::string out_dir)
      : command_(std::move(command)),
        input_(std::move(input)),
        out_dir_(std::move(out_dir)),
        start_(std::chrono::steady_clock::now()) {}

  json& parameters() { return parameters_; }

  fs::path prepare() {
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    if (ec || !fs::is_directory(out_dir_)) {
      throw Error(ErrorKind::io, "cannot create output directory " + out_dir_);
    }
    return out_dir_;
  }

  void emit(const std::string& name, const std::string& text) {
    write_file(fs::path(out_dir_) / name, text);
    outputs_.push_back(name);
  }

  void finish(const Graph* g) {
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
    json m = {{"tool", "pgain"},
              {"version", PGAIN_VERSION},
              {"command", command_},
              {"input", input_}};
    if (g) {
      m["graph_fingerprint"] = hex(g->fingerprint());
      m["nodes"] = g->num_nodes();
      m["edges"] = g->num_edges();
    }
    m["parameters"] = parameters_;
    m["outputs"] = outputs_;
    m["duration_seconds"] = secs;
    write_file(fs::path(out_dir_) / kManifestName, m.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::string input_;
  std::string out_dir_;
  std::chrono::steady_clock::time_point start_;
  json parameters_ = json::object();
  std::vector<std::string> outputs_;
};

std::string scores_csv(const Graph& g, const ScoreVector& s) {
  std::ostringstream os;
  write_scores_csv(g, s, os);
  return os.str();
}

std::string id_map_csv(const Graph& g) {
  std::ostringstream os;
  write_id_map_csv(g, os);
  return os.str();
}

json sidecar(const Graph& g, const ScoreVector& s) {
  json params = json::object();
  for (const auto& [k, v] : s.metric.parameters) params[k] = v;
  return {{"metric", s.metric.name},
          {"parameters", params},
          {"graph_fingerprint", hex(g.fingerprint())},
          {"converged", s.converged},
          {"warnings", s.warnings},
          {"manifest", kManifestName}};
}

Graph load(const std::string& input, LoadSummary& summary) {
  return load_edge_list_file(input, &summary);
}

json summary_json(const LoadSummary& s) {
  return {{"lines_read", s.lines_read},
          {"edges_read", s.edges_read},
          {"self_loops_dropped", s.self_loops_dropped},
          {"duplicates_collapsed", s.duplicates_collapsed},
          {"isolated_dropped", s.isolated_dropped},
          {"nodes", s.nodes},
          {"edges", s.edges}};
}

void report_warnings(const ScoreVector& s, std::ostream& err) {
  for (const auto& w : s.warnings) err << "pgain: warning: " << w << '\n';
}

struct CentralityArgs {
  std::string input;
  std::string metric;
  std::optional<std::string> delta;
  double alpha = kDefaultPageRankAlpha;
  std::optional<double> tol;
  std::size_t k_max = 0;
  std::size_t max_iters = 0;
  std::string output;
};

int cmd_centrality(const CentralityArgs& a, unsigned threads,
                   std::ostream& err) {
  RunContext run("centrality", a.input, a.output);
  LoadSummary summary;
  const Graph g = load(a.input, summary);
  auto& p = run.parameters();
  p["metric"] = a.metric;
  p["threads"] = threads;

  const auto needs_delta = [&](const SpectralEstimate& spec) {
    if (!a.delta) {
      throw Error(ErrorKind::domain, "--delta is required for metric " + a.metric);
    }
    const double d = parse_delta(*a.delta, spec.lambda1);
    p["delta"] = d;
    p["delta_spec"] = *a.delta;
    p["lambda1"] = spec.lambda1;
    return d;
  };
  const double series_tol = a.tol.value_or(kDefaultSeriesTol);

  ScoreVector scores;
  if (a.metric == "degree") {
    scores = degree_centrality(g);
  } else if (a.metric == "gpg" || a.metric == "katz") {
    const auto spec = require_spectral(g, a.input, threads);
    SeriesConfig cfg;
    cfg.delta = needs_delta(spec);
    cfg.k_max = a.k_max;
    cfg.tol = series_tol;
    cfg.threads = threads;
    p["tol"] = cfg.tol;
    p["k_max"] = a.k_max;
    if (a.metric == "gpg") {
      auto res = geometric_potential_gain(g, cfg, spec);
      p["terms"] = res.report.records.size();
      p["stop_reason"] = to_string(res.report.stop_reason);
      scores = std::move(res.scores);
    } else {
      scores = katz(g, cfg.delta, spec, cfg.tol, cfg.k_max, threads);
    }
  } else if (a.metric == "epg" || a.metric == "communicability") {
    const auto spec = require_spectral(g, a.input, threads);
    p["tol"] = series_tol;
    p["k_max"] = a.k_max;
    p["lambda1"] = spec.lambda1;
    if (a.metric == "epg") {
      SeriesConfig cfg;
      cfg.k_max = a.k_max;
      cfg.tol = series_tol;
      cfg.threads = threads;
      auto res = exponential_potential_gain(g, cfg, spec);
      p["terms"] = res.report.records.size();
      p["stop_reason"] = to_string(res.report.stop_reason);
      scores = std::move(res.scores);
    } else {
      scores = communicability_centrality(g, spec, series_tol, a.k_max, threads);
    }
  } else if (a.metric == "eigenvector") {
    const double tol = a.tol.value_or(kDefaultSpectralTol);
    const std::size_t iters = a.max_iters ? a.max_iters : kDefaultSpectralMaxIters;
    p["tol"] = tol;
    p["max_iters"] = iters;
    scores = eigenvector_centrality(g, tol, iters, threads);
  } else if (a.metric == "pagerank") {
    const double tol = a.tol.value_or(kDefaultPageRankTol);
    const std::size_t iters = a.max_iters ? a.max_iters : kDefaultPageRankMaxIters;
    p["alpha"] = a.alpha;
    p["tol"] = tol;
    p["max_iters"] = iters;
    scores = pagerank(g, a.alpha, tol, iters, threads);
  } else {
    throw Error(ErrorKind::domain, "unknown metric '" + a.metric + "'");
  }

  run.prepare();
  run.parameters()["load"] = summary_json(summary);
  run.emit("scores.csv", scores_csv(g, scores));
  run.emit("scores.json", sidecar(g, scores).dump(2) + "\n");
  run.emit("id_map.csv", id_map_csv(g));
  run.finish(&g);
  report_warnings(scores, err);
  return scores.converged ? 0 : 4;
}

struct ConvergenceArgs {
  std::string input;
  std::string variant = "geometric";
  std::optional<std::string> delta;
  double tol = kDefaultSeriesTol;
  std::size_t k_max = 0;
  std::size_t k_ref = 0;
  std::string output;
};

int cmd_convergence(const ConvergenceArgs& a, unsigned threads) {
  RunContext run("convergence", a.input, a.output);
  LoadSummary summary;
  const Graph g = load(a.input, summary);
  const auto spec = require_spectral(g, a.input, threads);
  SeriesVariant variant;
  if (a.variant == "geometric") {
    variant = SeriesVariant::geometric;
  } else if (a.variant == "exponential") {
    variant = SeriesVariant::exponential;
  } else {
    throw Error(ErrorKind::domain, "unknown variant '" + a.variant + "'");
  }
  SeriesConfig cfg;
  cfg.tol = a.tol;
  cfg.k_max = a.k_max;
  cfg.k_ref = a.k_ref;
  cfg.threads = threads;
  if (variant == SeriesVariant::geometric) {
    if (!a.delta) throw Error(ErrorKind::domain, "--delta is required for the geometric variant");
    cfg.delta = parse_delta(*a.delta, spec.lambda1);
    // Same admissibility check as a plain run.
    if (cfg.delta * spec.lambda1 >= kDeltaSafetyMargin) {
      geometric_potential_gain(g, cfg, spec);
    }
  } else if (spec.lambda1 > kMaxExponentialLambda) {
    exponential_potential_gain(g, cfg, spec);
  }
  const ConvergenceReport rep = convergence_curve(g, cfg, variant, spec);

  auto& p = run.parameters();
  p["variant"] = a.variant;
  if (a.delta) p["delta_spec"] = *a.delta;
  p["delta"] = cfg.delta;
  p["k_max"] = a.k_max;
  p["k_ref"] = a.k_ref;
  p["threads"] = threads;
  p["lambda1"] = spec.lambda1;
  p["load"] = summary_json(summary);

  std::ostringstream csv;
  write_convergence_csv(rep, csv);
  const json header = {{"variant", to_string(rep.variant)},
                       {"delta", variant == SeriesVariant::geometric
                                     ? json(rep.delta)
                                     : json(nullptr)},
                       {"lambda1", rep.lambda1},
                       {"rate_estimate", rep.rate_estimate},
                       {"stop_reason", to_string(rep.stop_reason)},
                       {"records", rep.records.size()},
                       {"graph_fingerprint", hex(g.fingerprint())},
                       {"manifest", kManifestName}};
  run.prepare();
  run.emit("convergence.csv", csv.str());
  run.emit("convergence.json", header.dump(2) + "\n");
  run.finish(&g);
  return 0;
}

struct SweepArgs {
  std::string input;
  std::vector<std::string> deltas;
  std::size_t points = 20;
  std::vector<std::string> metrics;
  double alpha = kDefaultPageRankAlpha;
  std::string output;
};

int cmd_sweep(const SweepArgs& a, unsigned threads) {
  RunContext run("sweep", a.input, a.output);
  LoadSummary summary;
  const Graph g = load(a.input, summary);
  const auto spec = require_spectral(g, a.input, threads);
  std::vector<double> grid;
  if (a.deltas.empty()) {
    grid = default_delta_grid(spec.lambda1, a.points);
  } else {
    for (const auto& d : a.deltas) grid.push_back(parse_delta(d, spec.lambda1));
  }
  const std::vector<std::string> metrics =
      a.metrics.empty() ? kSweepMetrics : a.metrics;
  AnalysisOptions opts;
  opts.alpha = a.alpha;
  opts.threads = threads;
  const SweepResult sweep = delta_sweep(g, grid, metrics, spec, opts);

  auto& p = run.parameters();
  p["grid"] = grid;
  p["metrics"] = metrics;
  p["alpha"] = a.alpha;
  p["tol"] = opts.tol;
  p["threads"] = threads;
  p["lambda1"] = spec.lambda1;
  p["load"] = summary_json(summary);
  std::ostringstream csv;
  write_sweep_csv(sweep, csv);
  run.prepare();
  run.emit("sweep.csv", csv.str());
  run.finish(&g);
  return 0;
}

struct CorrelateArgs {
  std::string input;
  std::string delta;
  double alpha = kDefaultPageRankAlpha;
  std::string output;
};

int cmd_correlate(const CorrelateArgs& a, unsigned threads) {
  RunContext run("correlate", a.input, a.output);
  LoadSummary summary;
  const Graph g = load(a.input, summary);
  const auto spec = require_spectral(g, a.input, threads);
  const double delta = parse_delta(a.delta, spec.lambda1);
  AnalysisOptions opts;
  opts.alpha = a.alpha;
  opts.threads = threads;
  const CorrelationTable table = correlation_table(g, delta, spec, opts);

  auto& p = run.parameters();
  p["delta_spec"] = a.delta;
  p["delta"] = delta;
  p["alpha"] = a.alpha;
  p["tol"] = opts.tol;
  p["threads"] = threads;
  p["lambda1"] = spec.lambda1;
  p["load"] = summary_json(summary);
  std::ostringstream csv;
  write_correlation_csv(table, csv);
  run.prepare();
  run.emit("correlation.csv", csv.str());
  run.finish(&g);
  return 0;
}

int cmd_spectral(const std::string& input, double tol, std::size_t max_iters,
                 unsigned threads, std::ostream& out) {
  LoadSummary summary;
  const Graph g = load(input, summary);
  const auto est = spectral_for(g, input, tol, max_iters, threads);
  out << spectral_json(est).dump(2) << '\n';
  return est.converged ? 0 : 4;
}

int cmd_crossover(double lambda, std::ostream& out) {
  const Crossover c = crossover_delta(lambda);
  const json j = {{"lambda", lambda},
                  {"delta_c", c.delta_c},
                  {"admissible", c.admissible}};
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_verify(std::uint64_t seed, std::size_t count, double tolerance,
               std::ostream& out) {
  const auto report = oracle::verify_against_oracle(seed, count, tolerance);
  out << "graphs " << report.graphs << ", tolerance "
      << format_double(report.tolerance) << '\n';
  for (const auto& row : report.rows) {
    out << (row.pass ? "PASS " : "FAIL ") << row.metric
        << " max_relative_deviation=" << format_double(row.max_relative_deviation)
        << '\n';
  }
  out << (report.pass ? "verify: PASS" : "verify: FAIL") << '\n';
  return report.pass ? 0 : 1;
}

}  // namespace

double parse_delta(const std::string& text, double lambda1) {
  constexpr std::string_view suffix = "/lambda1";
  std::string_view s = text;
  if (s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix) {
    if (!(lambda1 > 0.0)) {
      throw Error(ErrorKind::domain, "relative delta needs a positive lambda1");
    }
    return parse_number(s.substr(0, s.size() - suffix.size())) / lambda1;
  }
  return parse_number(s);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Potential-gain centralities for undirected graphs", "pgain"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for sparse products")
      ->check(CLI::Range(1u, 1024u));
  app.set_version_flag("--version", PGAIN_VERSION);

  const std::string delta_help =
      "Decay: absolute value or r/lambda1 (relative to the spectral radius)";

  auto* spectral = app.add_subcommand("spectral", "Estimate the spectral radius");
  std::string spectral_input;
  double spectral_tol = kDefaultSpectralTol;
  std::size_t spectral_iters = kDefaultSpectralMaxIters;
  spectral->add_option("input", spectral_input, "Edge list")->required();
  spectral->add_option("--tol", spectral_tol, "Relative Rayleigh-quotient tolerance");
  spectral->add_option("--max-iters", spectral_iters, "Iteration cap");

  auto* centrality = app.add_subcommand("centrality", "Score every node");
  CentralityArgs ca;
  centrality->add_option("input", ca.input, "Edge list")->required();
  centrality->add_option("--metric", ca.metric, "Centrality")
      ->required()
      ->check(CLI::IsMember({"gpg", "epg", "degree", "katz", "eigenvector",
                             "pagerank", "communicability"}));
  centrality->add_option("--delta", ca.delta, delta_help);
  centrality->add_option("--alpha", ca.alpha, "PageRank damping");
  centrality->add_option("--tol", ca.tol, "Stopping tolerance");
  centrality->add_option("--k-max", ca.k_max, "Walk-length cap (0 = default)");
  centrality->add_option("--max-iters", ca.max_iters, "Iteration cap for iterative metrics");
  centrality->add_option("--output,-o", ca.output, "Output directory")->required();

  auto* convergence = app.add_subcommand("convergence", "Truncation error curve");
  ConvergenceArgs cv;
  convergence->add_option("input", cv.input, "Edge list")->required();
  convergence->add_option("--variant", cv.variant, "geometric or exponential")
      ->check(CLI::IsMember({"geometric", "exponential"}));
  convergence->add_option("--delta", cv.delta, delta_help);
  convergence->add_option("--tol", cv.tol, "Series tolerance");
  convergence->add_option("--k-max", cv.k_max, "Curve length (0 = default)");
  convergence->add_option("--k-ref", cv.k_ref, "Reference length (0 = automatic)");
  convergence->add_option("--output,-o", cv.output, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Rank correlation against GPG over a delta grid");
  SweepArgs sa;
  sweep->add_option("input", sa.input, "Edge list")->required();
  sweep->add_option("--deltas", sa.deltas, "Explicit grid, comma separated")
      ->delimiter(',');
  sweep->add_option("--points", sa.points, "Log-spaced grid size when --deltas is absent")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  sweep->add_option("--metrics", sa.metrics, "Metrics to compare, comma separated")
      ->delimiter(',');
  sweep->add_option("--alpha", sa.alpha, "PageRank damping");
  sweep->add_option("--output,-o", sa.output, "Output directory")->required();

  auto* correlate = app.add_subcommand("correlate", "Pairwise rank correlation table");
  CorrelateArgs co;
  correlate->add_option("input", co.input, "Edge list")->required();
  correlate->add_option("--delta", co.delta, delta_help)->required();
  correlate->add_option("--alpha", co.alpha, "PageRank damping");
  correlate->add_option("--output,-o", co.output, "Output directory")->required();

  auto* crossover = app.add_subcommand("crossover", "Decay where both eigenvalue transforms agree");
  double lambda = 0.0;
  crossover->add_option("--lambda", lambda, "Eigenvalue")->required();

  auto* verify = app.add_subcommand("verify", "Compare sparse metrics with dense references");
  std::uint64_t seed = 1;
  std::size_t count = 50;
  double tolerance = 1e-9;
  verify->add_option("--seed", seed, "Corpus seed");
  verify->add_option("--count", count, "Number of random graphs");
  verify->add_option("--tolerance", tolerance, "Max relative deviation");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("pgain");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectral->parsed()) {
      return cmd_spectral(spectral_input, spectral_tol, spectral_iters, threads, out);
    }
    if (centrality->parsed()) return cmd_centrality(ca, threads, err);
    if (convergence->parsed()) return cmd_convergence(cv, threads);
    if (sweep->parsed()) return cmd_sweep(sa, threads);
    if (correlate->parsed()) return cmd_correlate(co, threads);
    if (crossover->parsed()) return cmd_crossover(lambda, out);
    if (verify->parsed()) return cmd_verify(seed, count, tolerance, out);
  } catch (const Error& e) {
    err << "pgain: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "pgain: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace pgain::cli
