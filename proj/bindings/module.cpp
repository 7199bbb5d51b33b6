#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numeric>

#include "rtglab/continuum.hpp"
#include "rtglab/graph.hpp"
#include "rtglab/linebreak.hpp"
#include "rtglab/path_codes.hpp"
#include "rtglab/samplers.hpp"
#include "rtglab/stats.hpp"
#include "rtglab/tree.hpp"

namespace py = pybind11;
using namespace rtg;

namespace {

// (root, parents) with 1-based labels; parents[0] unused and set to 0.
using PyTree = std::pair<std::int32_t, std::vector<std::int32_t>>;

PyTree to_py(const LabelledTree& t) { return {t.root, t.parent}; }

LabelledTree from_py(const PyTree& p) {
  LabelledTree t;
  t.n = static_cast<std::int32_t>(p.second.size()) - 1;
  t.root = p.first;
  t.parent = p.second;
  t.validate();
  return t;
}

OffspringSpec spec_by_name(const std::string& name) {
  if (name == "geometric") return OffspringSpec::geometric_half();
  if (name == "binary") return OffspringSpec::binary();
  if (name == "poisson1") return OffspringSpec::poisson1();
  throw std::invalid_argument("unknown offspring preset: " + name);
}

py::dict report_to_dict(const Report& rep) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(rep.to_json().dump());
}

}  // namespace

PYBIND11_MODULE(_rtglab, m) {
  m.doc() = "exact samplers and scaling-limit experiments for random trees and graphs";
  m.attr("__version__") = "0.1.0";

  m.def(
      "sample_tree",
      [](const std::string& preset, std::int64_t n, std::uint64_t seed) {
        Rng rng = Rng::stream(seed, 0);
        OrderedTree t = bienayme_conditioned(spec_by_name(preset), n, rng);
        std::vector<std::int32_t> labels(t.size());
        std::iota(labels.begin(), labels.end(), 1);
        return to_py(forget_order(t, labels));
      },
      py::arg("preset"), py::arg("n"), py::arg("seed") = 1,
      "Size-conditioned Bienayme tree; returns (root, parents[1..n]) with labels in dfs order.");

  m.def(
      "uniform_labelled_tree",
      [](std::int32_t n, std::uint64_t seed) {
        Rng rng = Rng::stream(seed, 0);
        return to_py(uniform_rooted_labelled_tree(n, rng));
      },
      py::arg("n"), py::arg("seed") = 1);

  m.def(
      "encode_word",
      [](const PyTree& tree) { return encode(from_py(tree)).w; },
      py::arg("tree"), "Line-breaking coding word of a rooted labelled tree.");

  m.def(
      "decode_word",
      [](const std::vector<std::int32_t>& word) {
        CodingWord w;
        w.n = static_cast<std::int32_t>(word.size()) + 1;
        w.w = word;
        return to_py(decode(w));
      },
      py::arg("word"));

  m.def(
      "dfq_path",
      [](const PyTree& tree) { return dfq_of(from_py(tree).ordered_view().tree).q; },
      py::arg("tree"), "Depth-first queue path, children ordered by increasing label.");

  m.def(
      "contour_path",
      [](const PyTree& tree) { return contour_of(from_py(tree).ordered_view().tree).q; },
      py::arg("tree"));

  m.def(
      "tree_from_dfq",
      [](const std::vector<std::int64_t>& q) {
        DiscreteExcursion e;
        e.flavor = DiscreteExcursion::Flavor::dfq;
        e.q = q;
        OrderedTree t = tree_from_dfq(e);
        std::vector<std::int32_t> labels(t.size());
        std::iota(labels.begin(), labels.end(), 1);
        return to_py(forget_order(t, labels));
      },
      py::arg("q"));

  m.def(
      "sample_graph",
      [](std::int32_t n, std::int32_t s, std::uint64_t seed, std::int64_t pool_size) {
        AreaBiasedSampler trees(n, s, seed ^ 0xab1a5ull, pool_size);
        Rng rng = Rng::stream(seed, 0);
        return uniform_graph_fixed_surplus(n, s, rng, trees).edges;
      },
      py::arg("n"), py::arg("s"), py::arg("seed") = 1, py::arg("pool_size") = 0,
      "Uniform connected graph on [n] with surplus s, as an edge list.");

  m.def(
      "core_kernel",
      [](std::int32_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& edges) {
        ConnectedGraph g;
        g.n = n;
        g.edges = edges;
        for (auto& [u, v] : g.edges)
          if (u > v) std::swap(u, v);
        std::sort(g.edges.begin(), g.edges.end());
        py::dict out;
        out["surplus"] = surplus(g);
        MultiGraph c = core(g);
        std::vector<std::tuple<std::int32_t, std::int32_t, std::int32_t>> core_edges;
        for (const auto& e : c.edges) core_edges.emplace_back(e.u, e.v, e.mult);
        out["core"] = core_edges;
        KernelDecomp k = kernel(g);
        std::vector<std::tuple<std::int32_t, std::int32_t, std::int32_t>> kernel_edges;
        for (const auto& e : k.kernel.edges) kernel_edges.emplace_back(e.u, e.v, e.mult);
        out["kernel"] = kernel_edges;
        out["cycle"] = k.cycle;
        out["paths"] = k.paths;
        return out;
      },
      py::arg("n"), py::arg("edges"));

  m.def(
      "er_components",
      [](std::int64_t n, double lambda, std::uint64_t seed, const std::string& mode) {
        Rng rng = Rng::stream(seed, 0);
        ErParams params{n, lambda};
        ComponentSummary cs = (mode == "graph") ? er_graph(params, rng).components
                                                : er_explore_markov(params, rng);
        py::dict out;
        out["sizes"] = cs.sizes;
        out["surpluses"] = cs.surpluses;
        return out;
      },
      py::arg("n"), py::arg("lambda_"), py::arg("seed") = 1, py::arg("mode") = "markov");

  m.def(
      "limit_process",
      [](double lambda, double horizon, double dt, std::uint64_t seed) {
        Rng rng = Rng::stream(seed, 0);
        ReflectedPath p = reflected_limit_process(er_limit_params(lambda, horizon, dt), rng);
        py::dict out;
        out["excursion_lengths"] = p.excursion_lengths;
        out["excursion_marks"] = p.excursion_marks;
        return out;
      },
      py::arg("lambda_") = 0.0, py::arg("horizon") = 10.0, py::arg("dt") = 1e-3,
      py::arg("seed") = 1);

  m.def(
      "crt_segments",
      [](std::int64_t k, std::uint64_t seed) {
        Rng rng = Rng::stream(seed, 0);
        MetricTreeApprox t = crt_linebreak(k, rng);
        std::vector<std::tuple<std::int32_t, std::int32_t, double>> segs;
        for (std::int32_t i = 0; i < t.graph.segment_count(); ++i) {
          const auto& s = t.graph.segment(i);
          segs.emplace_back(t.graph.resolve(s.u), t.graph.resolve(s.v), s.len);
        }
        return segs;
      },
      py::arg("k"), py::arg("seed") = 1, "Weighted edges of the line-breaking CRT approximant.");

  m.def(
      "root_distance_pmf", &root_distance_pmf, py::arg("n"), py::arg("d"),
      "P(dist(root, 1) = d) for a uniform rooted labelled tree on [n].");

  m.def("kappa", [](std::int32_t s) { return kappa(s).value(); }, py::arg("s"));

  m.def(
      "run_experiment",
      [](const std::string& name, py::kwargs kwargs) {
        std::uint64_t seed = kwargs.contains("seed") ? kwargs["seed"].cast<std::uint64_t>() : 1;
        int threads = kwargs.contains("threads") ? kwargs["threads"].cast<int>() : 0;
        auto geti = [&](const char* key, std::int64_t dflt) {
          return kwargs.contains(key) ? kwargs[key].cast<std::int64_t>() : dflt;
        };
        Report rep;
        if (name == "subtree-sizes")
          rep = experiment_subtree_sizes(geti("n", 2000), static_cast<std::int32_t>(geti("k", 2)),
                                         geti("draws", 400), seed, threads);
        else if (name == "crt-distance")
          rep = experiment_crt_distance(geti("n", 1001), geti("draws", 400), seed, threads);
        else if (name == "core-size")
          rep = experiment_core_size(static_cast<std::int32_t>(geti("n", 500)),
                                     static_cast<std::int32_t>(geti("s", 1)), geti("draws", 400),
                                     seed, threads);
        else if (name == "critical-er") {
          CriticalErConfig cfg;
          cfg.n = geti("n", 20000);
          cfg.draws = geti("draws", 300);
          cfg.metric_n = geti("metric_n", 8000);
          cfg.metric_draws = geti("metric_draws", 200);
          cfg.run_metric = geti("run_metric", 1) != 0;
          rep = experiment_critical_er(cfg, seed, threads);
        } else if (name == "degree-model") {
          DegreeModelParams params;
          params.pmf = {0.75, 0.0, 0.25};
          rep = experiment_degree_model(params, geti("n", 20000), geti("draws", 300), seed,
                                        threads);
        } else if (name == "metric-s") {
          rep = experiment_fixed_surplus_metric(static_cast<std::int32_t>(geti("n", 500)),
                                                static_cast<std::int32_t>(geti("s", 1)),
                                                geti("draws", 200), seed, threads);
        } else {
          throw std::invalid_argument("unknown experiment: " + name);
        }
        return report_to_dict(rep);
      },
      py::arg("name"), "Run a verification experiment; returns the JSON report as a dict.");
}
