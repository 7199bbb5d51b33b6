#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "rtglab/continuum.hpp"
#include "rtglab/graph.hpp"
#include "rtglab/linebreak.hpp"
#include "rtglab/path_codes.hpp"
#include "rtglab/report_io.hpp"
#include "rtglab/samplers.hpp"
#include "rtglab/stats.hpp"
#include "rtglab/tree.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out;       // empty: stdout, no manifest
  int threads = 0;
  bool csv = false;
  bool svg = false;
};

std::string resolve_out(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv("RTGLAB_OUT_DIR");
  if (dir && *dir && path.front() != '/' && path.find('/') == std::string::npos)
    return std::string(dir) + "/" + path;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Data file plus a sidecar manifest recording how it was produced.
void deliver(const GlobalOpts& g, const std::string& content, const nlohmann::json& params,
             const std::string& command) {
  std::string out = resolve_out(g.out);
  if (out.empty()) {
    std::cout << content;
    return;
  }
  rtg::write_text_file(out, content);
  nlohmann::json manifest;
  manifest["tool"] = "rtglab";
  manifest["version"] = kVersion;
  manifest["command"] = command;
  manifest["seed"] = g.seed;
  manifest["params"] = params;
  rtg::write_text_file(out + ".manifest.json", manifest.dump(2) + "\n");
}

rtg::OffspringSpec preset_by_name(const std::string& name) {
  if (name == "geometric") return rtg::OffspringSpec::geometric_half();
  if (name == "binary") return rtg::OffspringSpec::binary();
  if (name == "poisson1") return rtg::OffspringSpec::poisson1();
  throw std::invalid_argument("unknown offspring preset: " + name);
}

std::string components_text(const rtg::ComponentSummary& cs) {
  std::ostringstream os;
  os << "size surplus\n";
  for (std::size_t i = 0; i < cs.sizes.size(); ++i)
    os << cs.sizes[i] << ' ' << cs.surpluses[i] << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rtglab: exact samplers and scaling-limit experiments for random trees and graphs"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value file with option defaults");
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed (expanded into per-task streams)")
      ->capture_default_str();
  app.add_option("--out", g.out, "output path (default stdout; manifest written alongside)");
  app.add_option("--threads", g.threads, "worker threads for experiments (0 = auto)");
  app.add_flag("--csv", g.csv, "also emit raw observation CSVs (experiments)");
  app.add_flag("--svg", g.svg, "also emit SVG histograms (experiments)");

  std::string full_command;
  for (int i = 0; i < argc; ++i) {
    if (i) full_command += ' ';
    full_command += argv[i];
  }

  // --- sample-tree ---------------------------------------------------------
  auto* sample_tree = app.add_subcommand("sample-tree", "conditioned Bienayme / uniform labelled trees");
  std::string st_preset = "poisson1";
  std::int64_t st_n = 100;
  std::string st_format = "parent";
  std::string st_childseq;
  bool st_labelled = false;
  sample_tree->add_option("--preset", st_preset, "geometric|binary|poisson1");
  sample_tree->add_option("--n", st_n, "vertex count");
  sample_tree->add_option("--format", st_format, "parent|edges|dfq|contour|word");
  sample_tree->add_option("--child-sequence", st_childseq,
                          "explicit child counts c_1..c_n (overrides --preset)");
  sample_tree->add_flag("--labelled", st_labelled,
                        "attach uniform labels (parent/edges formats label in dfs order otherwise)");

  // --- encode / decode -------------------------------------------------------
  auto* encode_cmd = app.add_subcommand("encode", "tree file -> contour | dfq | coding word");
  std::string en_in, en_kind = "word";
  encode_cmd->add_option("--in", en_in, "parent-array tree file")->required();
  encode_cmd->add_option("--kind", en_kind, "contour|dfq|word");

  auto* decode_cmd = app.add_subcommand("decode", "coding word / path -> tree");
  std::string de_word, de_dfq, de_contour, de_format = "edges";
  decode_cmd->add_option("--word", de_word, "coding word symbols");
  decode_cmd->add_option("--dfq", de_dfq, "dfq path values");
  decode_cmd->add_option("--contour", de_contour, "contour path values");
  decode_cmd->add_option("--format", de_format, "parent|edges");

  // --- sample-graph ----------------------------------------------------------
  auto* sample_graph = app.add_subcommand("sample-graph", "uniform connected graph with fixed surplus");
  std::int64_t sg_n = 100;
  std::int64_t sg_surplus = 1;
  std::int64_t sg_pool = 0;
  sample_graph->add_option("--n", sg_n, "vertex count");
  sample_graph->add_option("--surplus", sg_surplus, "surplus s >= 0");
  sample_graph->add_option("--pool-size", sg_pool, "resampling pool size (0 = default)");

  // --- core-kernel -----------------------------------------------------------
  auto* core_kernel = app.add_subcommand("core-kernel", "surplus, core and kernel of a graph");
  std::string ck_in;
  core_kernel->add_option("--in", ck_in, "edge-list graph file")->required();

  // --- er ---------------------------------------------------------------------
  auto* er = app.add_subcommand("er", "critical Erdos-Renyi components");
  std::int64_t er_n = 10000;
  double er_lambda = 0.0;
  std::string er_mode = "markov";
  bool er_edges = false;
  er->add_option("--n", er_n, "vertex count");
  er->add_option("--lambda", er_lambda, "critical window parameter");
  er->add_option("--mode", er_mode, "graph|markov");
  er->add_flag("--edges", er_edges, "emit the edge list too (graph mode)");

  // --- limit-process -----------------------------------------------------------
  auto* limit = app.add_subcommand("limit-process", "reflected drifted Brownian motion with marks");
  double lp_lambda = 0.0, lp_horizon = 10.0, lp_dt = 1e-3;
  std::string lp_model = "er";
  double lp_mu = 1.5, lp_beta = 1.5;
  limit->add_option("--lambda", lp_lambda, "drift parameter (er model)");
  limit->add_option("--horizon", lp_horizon, "time horizon");
  limit->add_option("--dt", lp_dt, "Euler step");
  limit->add_option("--model", lp_model, "er|degree");
  limit->add_option("--mu", lp_mu, "E[D] (degree model)");
  limit->add_option("--beta", lp_beta, "E[D(D-1)(D-2)] (degree model)");

  // --- crt ---------------------------------------------------------------------
  auto* crt = app.add_subcommand("crt", "line-breaking CRT approximant");
  std::int64_t crt_k = 8;
  crt->add_option("--branches", crt_k, "number of branches k");

  // --- marchal -------------------------------------------------------------------
  auto* marchal = app.add_subcommand("marchal", "Marchal/Remy growth sequence");
  double ma_alpha = 2.0;
  std::int64_t ma_steps = 10;
  marchal->add_option("--alpha", ma_alpha, "parameter in (1,2]");
  marchal->add_option("--steps", ma_steps, "growth steps");

  // --- continuum-graph -------------------------------------------------------------
  auto* cont = app.add_subcommand("continuum-graph", "fixed-surplus continuum approximants");
  std::int64_t cg_s = 2, cg_k = 0, cg_grid = 20000, cg_dists = 0;
  std::string cg_mode = "box";
  cont->add_option("--surplus", cg_s, "surplus s");
  cont->add_option("--branches", cg_k, "line-breaking attachments (box mode)");
  cont->add_option("--mode", cg_mode, "box|glue");
  cont->add_option("--gridsize", cg_grid, "excursion grid (glue mode)");
  cont->add_option("--distances", cg_dists,
                   "append a distance-matrix CSV over this many sampled points");

  // --- experiment -------------------------------------------------------------------
  auto* experiment = app.add_subcommand("experiment", "statistical verification experiments");
  std::string ex_name;
  experiment->add_option("name", ex_name,
                         "subtree-sizes|crt-distance|core-size|critical-er|degree-model|metric-s")
      ->required();
  std::int64_t ex_n = 10000, ex_draws = 1000, ex_k = 3;
  std::int64_t ex_s = 1;
  double ex_lambda = 0.0, ex_dt = 1e-3;
  experiment->add_option("--n", ex_n, "size parameter");
  experiment->add_option("--draws", ex_draws, "Monte Carlo draws");
  experiment->add_option("--k", ex_k, "coordinate count (subtree-sizes)");
  experiment->add_option("--s", ex_s, "surplus (core-size / metric-s)");
  experiment->add_option("--lambda", ex_lambda, "critical window parameter");
  experiment->add_option("--dt", ex_dt, "Euler step (critical-er)");

  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    rtg::Rng rng = rtg::Rng::stream(g.seed, 0);

    if (*sample_tree) {
      nlohmann::json params{{"n", st_n}, {"preset", st_preset}, {"format", st_format}};
      rtg::OrderedTree tree = [&] {
        if (!st_childseq.empty()) {
          rtg::ChildSequence c;
          c.c.push_back(0);
          std::istringstream is(st_childseq);
          std::int32_t x;
          while (is >> x) c.c.push_back(x);
          rtg::LabelledTree lt = rtg::sample_with_child_sequence(c, rng);
          return lt.ordered_view().tree;
        }
        return rtg::bienayme_conditioned(preset_by_name(st_preset), st_n, rng);
      }();
      std::string content;
      if (st_format == "dfq")
        content = rtg::to_path_text(rtg::dfq_of(tree));
      else if (st_format == "contour")
        content = rtg::to_path_text(rtg::contour_of(tree));
      else {
        std::vector<std::int32_t> labels(tree.size());
        std::iota(labels.begin(), labels.end(), 1);
        if (st_labelled) rng.shuffle(labels);
        rtg::LabelledTree lt = rtg::forget_order(tree, labels);
        if (st_format == "word")
          content = rtg::to_word_text(rtg::encode(lt));
        else if (st_format == "edges")
          content = rtg::to_edge_text(lt);
        else
          content = rtg::to_parent_text(lt);
      }
      deliver(g, content, params, full_command);
    } else if (*encode_cmd) {
      rtg::LabelledTree t = rtg::parse_parent_text(read_file(en_in));
      std::string content;
      if (en_kind == "word")
        content = rtg::to_word_text(rtg::encode(t));
      else if (en_kind == "dfq")
        content = rtg::to_path_text(rtg::dfq_of(t.ordered_view().tree));
      else if (en_kind == "contour")
        content = rtg::to_path_text(rtg::contour_of(t.ordered_view().tree));
      else
        throw std::invalid_argument("encode: unknown kind " + en_kind);
      deliver(g, content, {{"in", en_in}, {"kind", en_kind}}, full_command);
    } else if (*decode_cmd) {
      rtg::LabelledTree t;
      if (!de_word.empty()) {
        t = rtg::decode(rtg::parse_word_text(de_word));
      } else if (!de_dfq.empty()) {
        rtg::OrderedTree ot = rtg::tree_from_dfq(
            rtg::parse_path_text(de_dfq, rtg::DiscreteExcursion::Flavor::dfq));
        std::vector<std::int32_t> labels(ot.size());
        std::iota(labels.begin(), labels.end(), 1);
        t = rtg::forget_order(ot, labels);
      } else if (!de_contour.empty()) {
        rtg::OrderedTree ot = rtg::tree_from_contour(
            rtg::parse_path_text(de_contour, rtg::DiscreteExcursion::Flavor::contour));
        std::vector<std::int32_t> labels(ot.size());
        std::iota(labels.begin(), labels.end(), 1);
        t = rtg::forget_order(ot, labels);
      } else {
        throw std::invalid_argument("decode: pass one of --word/--dfq/--contour");
      }
      std::string content = (de_format == "parent") ? rtg::to_parent_text(t) : rtg::to_edge_text(t);
      deliver(g, content, {{"format", de_format}}, full_command);
    } else if (*sample_graph) {
      rtg::AreaBiasedSampler trees(static_cast<std::int32_t>(sg_n),
                                   static_cast<std::int32_t>(sg_surplus), g.seed ^ 0xab1a5ull,
                                   sg_pool);
      rtg::ConnectedGraph graph = rtg::uniform_graph_fixed_surplus(
          static_cast<std::int32_t>(sg_n), static_cast<std::int32_t>(sg_surplus), rng, trees);
      deliver(g, rtg::to_graph_text(graph), {{"n", sg_n}, {"surplus", sg_surplus}}, full_command);
    } else if (*core_kernel) {
      rtg::ConnectedGraph graph = rtg::parse_graph_text(read_file(ck_in));
      std::ostringstream os;
      os << "surplus " << rtg::surplus(graph) << '\n';
      rtg::MultiGraph c = rtg::core(graph);
      os << "core\n" << rtg::to_multigraph_text(c);
      rtg::KernelDecomp k = rtg::kernel(graph);
      os << "kernel\n" << rtg::to_multigraph_text(k.kernel);
      if (!k.cycle.empty()) {
        os << "cycle";
        for (auto v : k.cycle) os << ' ' << v;
        os << '\n';
      }
      for (const auto& path : k.paths) {
        os << "path";
        for (auto v : path) os << ' ' << v;
        os << '\n';
      }
      deliver(g, os.str(), {{"in", ck_in}}, full_command);
    } else if (*er) {
      rtg::ErParams params{er_n, er_lambda};
      std::string content;
      if (er_mode == "markov") {
        content = components_text(rtg::er_explore_markov(params, rng));
      } else if (er_mode == "graph") {
        rtg::ErGraphResult res = rtg::er_graph(params, rng);
        content = components_text(res.components);
        if (er_edges) {
          std::ostringstream os;
          os << content << "edges\n";
          for (auto [u, v] : res.edges) os << u << ' ' << v << '\n';
          content = os.str();
        }
      } else {
        throw std::invalid_argument("er: unknown mode " + er_mode);
      }
      deliver(g, content, {{"n", er_n}, {"lambda", er_lambda}, {"mode", er_mode}}, full_command);
    } else if (*limit) {
      rtg::LimitProcessParams params;
      if (lp_model == "er") {
        params = rtg::er_limit_params(lp_lambda, lp_horizon, lp_dt);
      } else if (lp_model == "degree") {
        params.horizon = lp_horizon;
        params.dt = lp_dt;
        params.diffusivity = std::sqrt(lp_beta / lp_mu);
        params.drift_linear = 0.0;
        params.drift_curvature = -lp_beta / (lp_mu * lp_mu);
      } else {
        throw std::invalid_argument("limit-process: unknown model " + lp_model);
      }
      rtg::ReflectedPath path = rtg::reflected_limit_process(params, rng);
      std::ostringstream os;
      os << "excursion_length marks\n";
      os.precision(17);
      for (std::size_t i = 0; i < path.excursion_lengths.size(); ++i)
        os << path.excursion_lengths[i] << ' ' << path.excursion_marks[i] << '\n';
      deliver(g, os.str(),
              {{"lambda", lp_lambda}, {"horizon", lp_horizon}, {"dt", lp_dt}, {"model", lp_model}},
              full_command);
    } else if (*crt) {
      rtg::MetricTreeApprox t = rtg::crt_linebreak(crt_k, rng);
      deliver(g, rtg::to_metric_tree_text(t), {{"branches", crt_k}}, full_command);
    } else if (*marchal) {
      rtg::MarchalRun run(ma_alpha);
      for (std::int64_t i = 0; i < ma_steps; ++i) run.step(rng);
      const rtg::GrowthTree& t = run.tree();
      std::ostringstream os;
      os << "vertex parent leaf_label\n";
      for (std::int64_t v = 0; v < t.vertex_count(); ++v)
        os << v << ' ' << t.parent[v] << ' ' << t.leaf_label[v] << '\n';
      os << "rescaled_01_distance " << run.rescaled_01_distance() << '\n';
      deliver(g, os.str(), {{"alpha", ma_alpha}, {"steps", ma_steps}}, full_command);
    } else if (*cont) {
      std::string content;
      if (cg_mode == "box") {
        rtg::ContinuumGraph cgr =
            rtg::continuum_graph_construct(static_cast<std::int32_t>(cg_s), cg_k, rng);
        std::ostringstream os;
        os << "core_length " << cgr.core_length << '\n';
        os << "kernel\n" << rtg::to_multigraph_text(cgr.kernel);
        os << rtg::to_segment_text(cgr.graph);
        if (cg_dists > 0) os << rtg::distance_matrix_csv(cgr.graph, cg_dists, rng);
        content = os.str();
      } else if (cg_mode == "glue") {
        rtg::TiltedExcursionSample e = rtg::tilted_excursion(
            static_cast<std::int32_t>(cg_s), cg_grid, rng, g.seed ^ 0x91aeull);
        rtg::GluedGraph gg = rtg::glue_surplus_points(e, static_cast<std::int32_t>(cg_s), rng);
        std::ostringstream os;
        os << rtg::to_segment_text(gg.graph);
        if (cg_dists > 0) os << rtg::distance_matrix_csv(gg.graph, cg_dists, rng);
        content = os.str();
      } else {
        throw std::invalid_argument("continuum-graph: unknown mode " + cg_mode);
      }
      deliver(g, content, {{"surplus", cg_s}, {"mode", cg_mode}, {"branches", cg_k}},
              full_command);
    } else if (*experiment) {
      rtg::Report rep;
      if (ex_name == "subtree-sizes")
        rep = rtg::experiment_subtree_sizes(ex_n, static_cast<std::int32_t>(ex_k), ex_draws,
                                            g.seed, g.threads);
      else if (ex_name == "crt-distance")
        rep = rtg::experiment_crt_distance(ex_n, ex_draws, g.seed, g.threads);
      else if (ex_name == "core-size")
        rep = rtg::experiment_core_size(static_cast<std::int32_t>(ex_n),
                                        static_cast<std::int32_t>(ex_s), ex_draws, g.seed,
                                        g.threads);
      else if (ex_name == "critical-er") {
        rtg::CriticalErConfig cfg;
        cfg.n = ex_n;
        cfg.lambda = ex_lambda;
        cfg.draws = ex_draws;
        cfg.dt = ex_dt;
        rep = rtg::experiment_critical_er(cfg, g.seed, g.threads);
      } else if (ex_name == "degree-model") {
        rtg::DegreeModelParams params;
        params.pmf = {0.75, 0.0, 0.25};
        rep = rtg::experiment_degree_model(params, ex_n, ex_draws, g.seed, g.threads);
      } else if (ex_name == "metric-s") {
        rep = rtg::experiment_fixed_surplus_metric(static_cast<std::int32_t>(ex_n),
                                                   static_cast<std::int32_t>(ex_s), ex_draws,
                                                   g.seed, g.threads);
      } else {
        throw std::invalid_argument("experiment: unknown name " + ex_name);
      }
      std::string out = resolve_out(g.out);
      if (out.empty()) {
        std::cout << rep.to_json().dump(2) << '\n';
      } else {
        rtg::emit_report(rep, out, {g.csv, g.svg});
      }
      for (const auto& c : rep.checks)
        if (c.status == rtg::CheckStatus::fail) return 1;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
