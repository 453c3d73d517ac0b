// Command-line surface for the ranking / active-sampling toolkit.
//
// Exit codes: 0 success, 1 usage or parse error, 2 domain error
// (disconnected input, degenerate dataset, isolated vertices).

#include <CLI11.hpp>
#include <Eigen/Core>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <random>
#include <string>

#include "lsrank/bounds.hpp"
#include "lsrank/design.hpp"
#include "lsrank/errors.hpp"
#include "lsrank/experiments.hpp"
#include "lsrank/ingest.hpp"
#include "lsrank/ranking.hpp"
#include "lsrank/spectral.hpp"
#include "lsrank/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lsrank;

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("GRAPHRANK_OUT_DIR");
  return env ? env : ".";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Every text output starts with a version line and a one-line config echo so
// runs are reproducible from the artifact alone.
void write_header(std::ostream& out, const json& config) {
  out << "# graphrank v" << kVersion << "\n";
  out << "# config: " << config.dump() << "\n";
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

json meta(const json& config) {
  return json{{"version", kVersion}, {"config", config}};
}

std::unordered_set<std::int64_t> load_forbidden(const std::string& path,
                                                const LabeledPairwiseData& d) {
  std::unordered_set<std::int64_t> out;
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open forbid file " + path);
  std::unordered_map<std::string, int> table;
  for (std::size_t i = 0; i < d.labels.size(); ++i)
    table[d.labels[i]] = static_cast<int>(i);
  std::string line;
  int lineno = 0;
  int n = d.data.graph.n();
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected two tab-separated labels at line " +
                           std::to_string(lineno),
                       lineno);
    auto a = table.find(line.substr(0, tab));
    auto b = table.find(line.substr(tab + 1));
    if (a == table.end() || b == table.end())
      throw ParseError("unknown label in forbid file at line " +
                           std::to_string(lineno),
                       lineno);
    out.insert(edge_index(a->second, b->second, n).k);
  }
  return out;
}

std::vector<int> load_subset(const std::string& path,
                             const LabeledPairwiseData& d) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open subset file " + path);
  std::unordered_map<std::string, int> table;
  for (std::size_t i = 0; i < d.labels.size(); ++i)
    table[d.labels[i]] = static_cast<int>(i);
  std::vector<int> subset;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto it = table.find(line);
    if (it == table.end())
      throw ParseError("unknown label '" + line + "' at line " +
                           std::to_string(lineno),
                       lineno);
    subset.push_back(it->second);
  }
  return subset;
}

json criteria_json(const CriteriaReport& c) {
  return json{{"j_e", c.j_e},   {"j_a", c.j_a},     {"j_d", c.j_d},
              {"t", c.t},       {"trace", c.trace}, {"defined", c.defined}};
}

int cmd_rank(const std::string& input, double tol, int bins,
             const std::string& out_dir) {
  json config{{"subcommand", "rank"}, {"input", input}, {"tol", tol},
              {"bins", bins}};
  auto data = read_edge_list(input);
  auto est = lsq_rank(data.data, tol);

  std::vector<int> order(data.labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return est.phi[a] > est.phi[b];
  });

  fs::create_directories(out_dir);
  {
    auto out = open_out(fs::path(out_dir) / "ranking.csv");
    write_header(out, config);
    out << "# relative_residual: " << fmt(est.relative_residual) << "\n";
    out << "label,score\n";
    for (int i : order) out << data.labels[i] << ',' << fmt(est.phi[i]) << '\n';
  }
  {
    auto hist = residual_histogram(data.data, est, bins);
    auto out = open_out(fs::path(out_dir) / "residuals.csv");
    write_header(out, config);
    out << "# weighted_residual_norm: " << fmt(hist.weighted_residual_norm)
        << "\n";
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < hist.counts.size(); ++b)
      out << fmt(hist.bin_edges[b]) << ',' << fmt(hist.bin_edges[b + 1]) << ','
          << hist.counts[b] << '\n';
  }
  return 0;
}

int cmd_augment(const std::string& input, std::int64_t xi,
                const std::string& strategy, const std::string& forbid_path,
                std::uint64_t seed, double tol, const std::string& out_dir) {
  json config{{"subcommand", "augment"}, {"input", input},       {"xi", xi},
              {"strategy", strategy},    {"forbid", forbid_path}, {"seed", seed},
              {"tol", tol}};
  auto data = read_edge_list(input);
  auto forbidden = load_forbidden(forbid_path, data);
  DesignResult res =
      strategy == "greedy"
          ? greedy_augment(data.data.graph, xi, forbidden, true, tol)
          : random_augment(data.data.graph, xi, forbidden, seed, tol);

  fs::create_directories(out_dir);
  {
    json added = json::array();
    for (const auto& [e, mult] : res.added)
      added.push_back(json{{"i", data.labels[e.i]},
                           {"j", data.labels[e.j]},
                           {"multiplicity", mult}});
    json doc{{"meta", meta(config)},
             {"strategy", strategy},
             {"added", added},
             {"lambda2_trajectory", res.lambda2_trajectory},
             {"criteria_before", criteria_json(res.criteria_before)},
             {"criteria_after", criteria_json(res.criteria_after)}};
    auto out = open_out(fs::path(out_dir) / "design.json");
    out << doc.dump(2) << '\n';
  }
  {
    // Freshly added pairs have no observed comparison yet; their y is 0.
    LabeledPairwiseData aug{PairwiseData{res.augmented, {}}, data.labels,
                            input};
    for (const auto& [k, w] : res.augmented.edges()) {
      auto it = data.data.y.find(k);
      aug.data.y[k] = it != data.data.y.end() ? it->second : 0.0;
    }
    auto out = open_out(fs::path(out_dir) / "augmented.tsv");
    write_header(out, config);
    write_edge_list(aug, out);
  }
  {
    auto out = open_out(fs::path(out_dir) / "trajectory.csv");
    write_header(out, config);
    out << "xi,lambda2\n";
    for (std::size_t i = 0; i < res.lambda2_trajectory.size(); ++i)
      out << i << ',' << fmt(res.lambda2_trajectory[i]) << '\n';
  }
  return 0;
}

int cmd_criteria(const std::string& input, const std::string& out_dir) {
  json config{{"subcommand", "criteria"}, {"input", input}};
  auto data = read_edge_list(input);
  auto rep = criteria(data.data.graph);
  fs::create_directories(out_dir);
  json doc{{"meta", meta(config)}, {"criteria", criteria_json(rep)}};
  auto out = open_out(fs::path(out_dir) / "criteria.json");
  out << doc.dump(2) << '\n';
  return 0;
}

int cmd_bounds(const std::string& input, const std::string& subset_path,
               bool exhaustive, bool edge_conn,
               const std::vector<double>& er_args, const std::string& out_dir) {
  json config{{"subcommand", "bounds"},
              {"input", input},
              {"subset", subset_path},
              {"exhaustive", exhaustive},
              {"edge_connectivity", edge_conn},
              {"er_bound", er_args}};
  json reports = json::array();
  if (!input.empty()) {
    auto data = read_edge_list(input);
    auto db = degree_bound(data.data.graph);
    reports.push_back(json{{"name", "degree"},
                           {"tight", db.tight},
                           {"loose", db.loose}});
    if (!subset_path.empty()) {
      auto rep = cut_bound(data.data.graph, load_subset(subset_path, data));
      json cert = json::array();
      for (int v : *rep.certificate) cert.push_back(data.labels[v]);
      reports.push_back(
          json{{"name", rep.name}, {"value", rep.value}, {"subset", cert}});
    }
    if (exhaustive) {
      auto rep = best_cut_bound_exhaustive(data.data.graph);
      json cert = json::array();
      for (int v : *rep.certificate) cert.push_back(data.labels[v]);
      reports.push_back(
          json{{"name", "cut_exhaustive"}, {"value", rep.value}, {"subset", cert}});
    }
    if (edge_conn) {
      auto rep = edge_connectivity_bound(data.data.graph);
      reports.push_back(json{{"name", rep.name},
                             {"value", rep.value},
                             {"warning_nonunit_weights", rep.warning}});
    }
  }
  if (er_args.size() == 3) {
    double val = er_bound(static_cast<int>(er_args[0]), er_args[1], er_args[2]);
    reports.push_back(json{{"name", "er_probabilistic"},
                           {"n", static_cast<int>(er_args[0])},
                           {"p", er_args[1]},
                           {"eps", er_args[2]},
                           {"value", val}});
  }
  fs::create_directories(out_dir);
  json doc{{"meta", meta(config)}, {"bounds", reports}};
  auto out = open_out(fs::path(out_dir) / "bounds.json");
  out << doc.dump(2) << '\n';
  return 0;
}

int cmd_cluster(const std::string& input, int k, std::uint64_t seed,
                const std::string& out_dir) {
  json config{{"subcommand", "cluster"}, {"input", input}, {"k", k},
              {"seed", seed}};
  auto data = read_edge_list(input);
  auto res = spectral_cluster(data.data.graph, k, seed);
  fs::create_directories(out_dir);
  {
    auto out = open_out(fs::path(out_dir) / "assignments.csv");
    write_header(out, config);
    out << "# within_cluster_sum: " << fmt(res.within_cluster_sum) << "\n";
    out << "# lambda2: " << fmt(res.lambda2)
        << (res.disconnected ? " (disconnected)" : "") << "\n";
    out << "label,cluster\n";
    for (std::size_t i = 0; i < data.labels.size(); ++i)
      out << data.labels[i] << ',' << res.assignments[i] << '\n';
  }
  {
    auto out = open_out(fs::path(out_dir) / "graph.dot");
    write_header(out, config);
    out << "graph comparisons {\n";
    for (std::size_t i = 0; i < data.labels.size(); ++i)
      out << "  n" << i << " [label=\"" << data.labels[i] << "\" cluster="
          << res.assignments[i] << "];\n";
    int n = data.data.graph.n();
    for (const auto& [kk, w] : data.data.graph.edges()) {
      EdgeKey e = edge_from_index(kk, n);
      out << "  n" << e.i << " -- n" << e.j << " [weight=" << w << "];\n";
    }
    out << "}\n";
  }
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) throw ParseError("cannot open config " + config_path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  json config{{"subcommand", "simulate"}, {"config_file", config_path},
              {"config", cfg}};

  auto require = [&](const char* key) -> const json& {
    if (!cfg.contains(key))
      throw ParseError(std::string("config missing field '") + key + "'");
    return cfg.at(key);
  };

  const json& fx = require("fixture");
  std::string type = fx.value("type", "");
  std::unique_ptr<MultiGraph> g0;
  if (type == "bridged_cliques") {
    g0 = std::make_unique<MultiGraph>(
        bridged_cliques(fx.at("clique_size").get<int>(),
                        fx.at("bridges").get<int>()));
  } else if (type == "er") {
    g0 = std::make_unique<MultiGraph>(er_sample(
        fx.at("n").get<int>(), fx.at("p").get<double>(),
        fx.contains("graph_seed") ? fx.at("graph_seed").get<std::uint64_t>() : 0));
  } else if (type == "edge_list") {
    g0 = std::make_unique<MultiGraph>(
        read_edge_list(fx.at("path").get<std::string>()).data.graph);
  } else {
    throw ParseError("config fixture.type must be bridged_cliques, er, or edge_list");
  }

  SyntheticModel model;
  model.sigma2 = require("sigma2").get<double>();
  model.seed = require("seed").get<std::uint64_t>();
  double phi_sigma2 = cfg.value("phi_sigma2", 1.0);
  std::mt19937_64 rng(model.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, std::sqrt(phi_sigma2));
  model.phi_true.resize(g0->n());
  for (double& v : model.phi_true) v = gauss(rng);

  std::int64_t xi_max = require("xi_max").get<std::int64_t>();
  int trials = require("trials").get<int>();
  std::vector<std::int64_t> checkpoints =
      cfg.value("checkpoints", std::vector<std::int64_t>{});
  bool regenerate = cfg.value("regenerate", false);
  int eval_redraws = cfg.value("eval_redraws", 1);

  auto rep = active_vs_random(*g0, model, xi_max, trials, checkpoints,
                              regenerate, eval_redraws);

  fs::create_directories(out_dir);
  {
    auto out = open_out(fs::path(out_dir) / "report.csv");
    write_header(out, config);
    out << "strategy,trial,xi,l2,ktau,lambda2\n";
    for (const auto& r : rep.rows)
      out << r.strategy << ',' << r.trial << ',' << r.xi << ',' << fmt(r.l2)
          << ',' << fmt(r.ktau) << ',' << fmt(r.lambda2) << '\n';
  }
  {
    json aggs = json::array();
    for (const auto& a : rep.aggregates)
      aggs.push_back(json{{"strategy", a.strategy},
                          {"xi", a.xi},
                          {"l2_mean", a.l2_mean},
                          {"l2_std", a.l2_std},
                          {"ktau_mean", a.ktau_mean},
                          {"ktau_std", a.ktau_std},
                          {"lambda2_mean", a.lambda2_mean},
                          {"lambda2_std", a.lambda2_std}});
    json doc{{"meta", meta(config)},
             {"xi_max", rep.xi_max},
             {"trials", rep.trials},
             {"aggregates", aggs}};
    auto out = open_out(fs::path(out_dir) / "summary.json");
    out << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_ingest_ratings(const std::string& input, int min_reviews,
                       const std::string& out_path) {
  json config{{"subcommand", "ingest-ratings"},
              {"input", input},
              {"min_reviews", min_reviews}};
  auto triplets = read_ratings_csv(input);
  auto data = ratings_to_pairwise(triplets, min_reviews);
  fs::path out_file = out_path;
  if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
  auto out = open_out(out_file);
  write_header(out, config);
  write_edge_list(data, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-squares ranking and active comparison design toolkit"};
  app.require_subcommand(1);
  std::string out_dir = default_out_dir();
  int threads = 1;
  app.add_option("--out-dir", out_dir, "Output directory");
  app.add_option("--threads", threads, "Cap on internal parallelism");

  std::string input, forbid_path, subset_path, config_path, out_path;
  double tol_rank = 1e-10, tol_eig = 1e-8;
  int bins = 20, k_clusters = 2, min_reviews = 0;
  std::int64_t xi = 0;
  std::uint64_t seed = 0;
  std::string strategy = "greedy";
  bool exhaustive = false, edge_conn = false;
  std::vector<double> er_args;

  auto* rank = app.add_subcommand("rank", "Least-squares ranking of an edge list");
  rank->add_option("input", input)->required();
  rank->add_option("--tol", tol_rank);
  rank->add_option("--bins", bins);

  auto* augment = app.add_subcommand("augment", "Add xi targeted or random comparisons");
  augment->add_option("input", input)->required();
  augment->add_option("--xi", xi)->required();
  augment->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"greedy", "random"}));
  augment->add_option("--forbid", forbid_path);
  augment->add_option("--seed", seed);
  augment->add_option("--tol", tol_eig);

  auto* crit = app.add_subcommand("criteria", "E/A/D/T criteria report");
  crit->add_option("input", input)->required();

  auto* bounds = app.add_subcommand("bounds", "Upper bounds on lambda2");
  bounds->add_option("input", input);
  bounds->add_option("--subset", subset_path);
  bounds->add_flag("--exhaustive-cut", exhaustive);
  bounds->add_flag("--edge-connectivity", edge_conn);
  bounds->add_option("--er-bound", er_args)->expected(3);

  auto* cluster = app.add_subcommand("cluster", "Normalized spectral clustering");
  cluster->add_option("input", input)->required();
  cluster->add_option("--k", k_clusters)->required();
  cluster->add_option("--seed", seed);

  auto* simulate = app.add_subcommand("simulate", "Active-vs-random experiment");
  simulate->add_option("--config", config_path)->required();

  auto* ingest = app.add_subcommand("ingest-ratings", "Ratings CSV to edge list");
  ingest->add_option("input", input)->required();
  ingest->add_option("--min-reviews", min_reviews);
  ingest->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Collapse CLI11's fine-grained exit codes onto the documented 0/1 split.
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  Eigen::setNbThreads(threads);
  if (out_path.empty()) out_path = (fs::path(out_dir) / "edges.tsv").string();

  try {
    if (rank->parsed()) return cmd_rank(input, tol_rank, bins, out_dir);
    if (augment->parsed())
      return cmd_augment(input, xi, strategy, forbid_path, seed, tol_eig, out_dir);
    if (crit->parsed()) return cmd_criteria(input, out_dir);
    if (bounds->parsed())
      return cmd_bounds(input, subset_path, exhaustive, edge_conn, er_args, out_dir);
    if (cluster->parsed()) return cmd_cluster(input, k_clusters, seed, out_dir);
    if (simulate->parsed()) return cmd_simulate(config_path, out_dir);
    if (ingest->parsed()) return cmd_ingest_ratings(input, min_reviews, out_path);
  } catch (const NotConnectedError& e) {
    std::cerr << "error: " << e.what() << "\ncomponents:\n";
    for (const auto& comp : e.components()) {
      std::cerr << " ";
      for (int v : comp) std::cerr << ' ' << v;
      std::cerr << '\n';
    }
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
