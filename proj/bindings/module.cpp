// Python bindings for the class generators, dimension tools, game solver,
// symmetry checker, and experiment harness.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "eqlab/adversary.hpp"
#include "eqlab/concept.hpp"
#include "eqlab/errors.hpp"
#include "eqlab/harness.hpp"
#include "eqlab/littlestone.hpp"
#include "eqlab/minimax.hpp"
#include "eqlab/rng.hpp"

namespace py = pybind11;

namespace {

using namespace eqlab;

// Classes cross the boundary in the JSON interchange shape: a dict with
// domain_size, num_labels, and the hypothesis rows.
py::dict class_dict(const HypothesisClass& cls) {
  py::dict d;
  d["domain_size"] = cls.domain_size();
  d["num_labels"] = cls.num_labels();
  d["hypotheses"] = cls.matrix();
  return d;
}

HypothesisClass class_from(const std::vector<std::vector<int>>& hypotheses,
                           int num_labels) {
  return build_class(hypotheses, num_labels);
}

PayoffMatrix matrix_from(const std::vector<std::vector<double>>& entries) {
  PayoffMatrix m;
  m.dim = int(entries.size());
  for (const auto& row : entries) {
    if (int(row.size()) != m.dim) throw NonSquare("payoff matrix rows must be square");
    for (double v : row) m.entries.push_back(v);
  }
  return m;
}

std::unique_ptr<Adversary> adversary_from(const std::string& name,
                                          const HypothesisClass& cls) {
  if (name == "random")
    return std::make_unique<RandomCEAdversary>(
        RandomCEAdversary::uniform(cls.domain_size()));
  if (name == "order") {
    std::vector<int> seq(cls.domain_size());
    for (int x = 0; x < cls.domain_size(); ++x) seq[x] = x;
    return std::make_unique<OrderInducedAdversary>(seq);
  }
  if (name == "dtree") {
    AdversarySpec spec;
    spec.kind = AdversarySpec::Kind::kDtree;
    return spec.make(cls);
  }
  if (name == "ldim_tree") return std::make_unique<LdimTreeAdversary>(cls);
  if (name == "min_index_positive") return std::make_unique<MinIndexPositiveAdversary>();
  throw ConfigError("unknown adversary name: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "equivalence-query learning laboratory";

  py::register_exception<Error>(m, "Error");

  m.def(
      "gen_singletons", [](int n) { return class_dict(gen_singletons(n)); },
      py::arg("n"), "One positive instance per hypothesis over n instances.");
  m.def(
      "gen_linear_functionals",
      [](int p, int d) { return class_dict(gen_linear_functionals(p, d)); },
      py::arg("p"), py::arg("d"),
      "Linear functionals over the d-dimensional vector space mod prime p.");
  m.def(
      "gen_random_class",
      [](int n, int k, int m_, std::uint64_t seed) {
        return class_dict(gen_random_class(n, k, m_, seed));
      },
      py::arg("n"), py::arg("k"), py::arg("m"), py::arg("seed"),
      "m distinct uniformly random hypotheses on n instances with k labels.");

  m.def(
      "ldim",
      [](const std::vector<std::vector<int>>& hypotheses, int num_labels) {
        return ldim(full_space(class_from(hypotheses, num_labels)));
      },
      py::arg("hypotheses"), py::arg("num_labels"),
      "Littlestone dimension via the memoized recursion.");
  m.def(
      "ldim_bruteforce",
      [](const std::vector<std::vector<int>>& hypotheses, int num_labels) {
        return ldim_bruteforce(full_space(class_from(hypotheses, num_labels)));
      },
      py::arg("hypotheses"), py::arg("num_labels"),
      "Independent oracle: enumerate all mistake trees (small classes only).");
  m.def(
      "soa_label",
      [](const std::vector<std::vector<int>>& hypotheses, int num_labels, int x) {
        return soa_label(full_space(class_from(hypotheses, num_labels)), x);
      },
      py::arg("hypotheses"), py::arg("num_labels"), py::arg("x"),
      "Unique dimension-preserving label at x, or -1 when every label drops it.");
  m.def(
      "shattered_tree",
      [](const std::vector<std::vector<int>>& hypotheses, int num_labels) {
        auto cls = class_from(hypotheses, num_labels);
        auto tree = shattered_tree(full_space(cls));
        std::vector<py::dict> nodes;
        for (const auto& node : tree.nodes) {
          py::dict nd;
          nd["instance"] = node.instance;
          std::vector<std::pair<int, int>> edges;
          for (const auto& e : node.edges) edges.emplace_back(e.label, e.child);
          nd["edges"] = edges;
          nodes.push_back(nd);
        }
        return nodes;
      },
      py::arg("hypotheses"), py::arg("num_labels"),
      "Maximum-depth shattered mistake tree; child -1 marks a leaf.");

  m.def(
      "solve_minimax",
      [](const std::vector<std::vector<double>>& entries, double epsilon) {
        auto sol = solve_minimax(matrix_from(entries), epsilon);
        return py::make_tuple(sol.strategy, sol.value_bound);
      },
      py::arg("entries"), py::arg("epsilon") = 1e-9,
      "Row player's minimax strategy and a certified value upper bound.");
  m.def(
      "best_response_value",
      [](const std::vector<std::vector<double>>& entries,
         const std::vector<double>& strategy) {
        return best_response_value(matrix_from(entries), strategy);
      },
      py::arg("entries"), py::arg("strategy"),
      "Best column response value against a fixed row strategy.");

  m.def(
      "check_symmetric",
      [](const std::string& adversary, const std::vector<std::vector<int>>& hypotheses,
         int num_labels) {
        auto cls = class_from(hypotheses, num_labels);
        auto adv = adversary_from(adversary, cls);
        auto r = check_symmetric(*adv, cls);
        return py::make_tuple(r.pass, r.h, r.c, r.detail);
      },
      py::arg("adversary"), py::arg("hypotheses"), py::arg("num_labels"),
      "Verify the generator symmetry property; returns (pass, h, c, detail).");

  m.def(
      "run_experiment",
      [](const std::string& config_json) {
        auto config = parse_config(config_json);
        auto table = run_experiment(config);
        auto stats = summarize(table);
        return py::make_tuple(csv_string(table), stats_json(stats));
      },
      py::arg("config_json"),
      "Run a configured sweep; returns (per-trial CSV, summary stats JSON).");

  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"),
        "Per-trial seed derived from a master seed.");
}
