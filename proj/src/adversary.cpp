// Counterexample generator implementations.
#include "eqlab/adversary.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace eqlab {

CEDistribution random_ce_distribution(const std::vector<double>& mu,
                                      const HypothesisClass& cls, int h, int c) {
  if (h == c) return CEDistribution::accepted();
  double total = 0.0;
  CEDistribution out;
  for (int x = 0; x < cls.domain_size(); ++x)
    if (cls.label(h, x) != cls.label(c, x)) total += mu[x];
  if (total <= 0.0)
    throw ZeroMassDisagreement("mu gives zero mass to the disagreement set of (" +
                               std::to_string(h) + ", " + std::to_string(c) + ")");
  for (int x = 0; x < cls.domain_size(); ++x)
    if (cls.label(h, x) != cls.label(c, x) && mu[x] > 0.0)
      out.support.emplace_back(x, mu[x] / total);
  return out;
}

CEDistribution order_induced_distribution(const std::vector<int>& sequence,
                                          const HypothesisClass& cls, int h, int c) {
  for (int x : sequence)
    if (cls.label(h, x) != cls.label(c, x)) return CEDistribution::point(x);
  return CEDistribution::accepted();
}

CEDistribution decision_tree_distribution(const LabeledDecisionTree& tree,
                                          const HypothesisClass& cls, int h, int c) {
  if (tree.nodes.empty()) return CEDistribution::accepted();
  int node = 0;
  while (true) {
    const auto& nd = tree.nodes[node];
    const int yh = cls.label(h, nd.instance);
    const int yc = cls.label(c, nd.instance);
    const LabeledDecisionTree::Edge* eh = nullptr;
    const LabeledDecisionTree::Edge* ec = nullptr;
    for (const auto& e : nd.edges) {
      if (e.label == yh) eh = &e;
      if (e.label == yc) ec = &e;
    }
    // Divergence: one path continues where the other halts or turns elsewhere.
    if (eh == nullptr && ec == nullptr) return CEDistribution::accepted();
    if (eh == nullptr || ec == nullptr || eh != ec)
      return CEDistribution::point(nd.instance);
    if (eh->child < 0) return CEDistribution::accepted();  // shared leaf edge
    node = eh->child;
  }
}

namespace {

// Materializes leaves of a mistake tree into an arena with parent and depth
// bookkeeping. Maps mistake-tree node `mt` into the arena under `parent`.
int arena_from_mistake_tree(const MistakeTree& tree, int mt, int parent, int depth,
                            TreeAdversaryState& state) {
  const int id = static_cast<int>(state.nodes.size());
  state.nodes.emplace_back();
  state.nodes[id].parent = parent;
  state.nodes[id].depth = depth;
  if (mt < 0) {
    state.nodes[id].leaf = true;
    state.leaves.push_back(id);
    return id;
  }
  const auto& src = tree.nodes[mt];
  state.nodes[id].instance = src.instance;
  for (int e = 0; e < 2; ++e) {
    int child = arena_from_mistake_tree(tree, src.edges[e].child, id, depth + 1, state);
    state.nodes[id].children[e] = {src.edges[e].label, child};
  }
  return id;
}

}  // namespace

TreeAdversaryState build_tree_adversary(const HypothesisClass& cls) {
  return build_tree_adversary(cls, shattered_tree(full_space(cls)));
}

TreeAdversaryState build_tree_adversary(const HypothesisClass& cls,
                                        const MistakeTree& tree) {
  TreeAdversaryState state;
  state.tree_depth = tree.depth();
  arena_from_mistake_tree(tree, tree.nodes.empty() ? -1 : 0, -1, 0, state);
  state.nu.resize(cls.size());
  for (int h = 0; h < cls.size(); ++h) state.nu[h] = assign_node(state, cls, h);
  return state;
}

int assign_node(const TreeAdversaryState& state, const HypothesisClass& cls, int h) {
  int node = 0;
  while (!state.nodes[node].leaf) {
    const auto& nd = state.nodes[node];
    const int y = cls.label(h, nd.instance);
    int next = -1;
    for (const auto& [label, child] : nd.children)
      if (label == y) next = child;
    if (next < 0) break;  // prediction matches no edge; halt here
    node = next;
  }
  return node;
}

int tree_lca(const TreeAdversaryState& state, int a, int b) {
  while (state.nodes[a].depth > state.nodes[b].depth) a = state.nodes[a].parent;
  while (state.nodes[b].depth > state.nodes[a].depth) b = state.nodes[b].parent;
  while (a != b) {
    a = state.nodes[a].parent;
    b = state.nodes[b].parent;
  }
  return a;
}

std::vector<std::pair<int, int>> tree_path_constraints(const TreeAdversaryState& state,
                                                       int node) {
  std::vector<std::pair<int, int>> out;
  while (state.nodes[node].parent >= 0) {
    const int parent = state.nodes[node].parent;
    for (const auto& [label, child] : state.nodes[parent].children)
      if (child == node) out.emplace_back(state.nodes[parent].instance, label);
    node = parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

CEDistribution tree_adversary_distribution(const TreeAdversaryState& state, int h,
                                           int c) {
  const int nh = state.nu[h];
  const int nc = state.nu[c];
  if (nh == nc) return CEDistribution::accepted();
  const int lca = tree_lca(state, nh, nc);
  // The LCA is internal: a leaf ancestor of both would force nh == nc.
  assert(!state.nodes[lca].leaf);
  return CEDistribution::point(state.nodes[lca].instance);
}

RandomCEAdversary::RandomCEAdversary(std::vector<double> mu) : mu_(std::move(mu)) {
  double total = 0.0;
  for (double w : mu_) {
    if (w < 0.0) throw ZeroMassDisagreement("negative weight in mu");
    total += w;
  }
  if (total <= 0.0) throw ZeroMassDisagreement("mu has zero total mass");
  for (double& w : mu_) w /= total;
}

RandomCEAdversary RandomCEAdversary::uniform(int domain_size) {
  return RandomCEAdversary(std::vector<double>(domain_size, 1.0));
}

CEDistribution RandomCEAdversary::distribution(const HypothesisClass& cls, int h,
                                               int c, const History&) const {
  return random_ce_distribution(mu_, cls, h, c);
}

CEDistribution OrderInducedAdversary::distribution(const HypothesisClass& cls, int h,
                                                   int c, const History&) const {
  return order_induced_distribution(sequence_, cls, h, c);
}

CEDistribution DecisionTreeAdversary::distribution(const HypothesisClass& cls, int h,
                                                   int c, const History&) const {
  return decision_tree_distribution(tree_, cls, h, c);
}

CEDistribution LdimTreeAdversary::distribution(const HypothesisClass&, int h, int c,
                                               const History&) const {
  return tree_adversary_distribution(state_, h, c);
}

CEDistribution MinIndexPositiveAdversary::distribution(const HypothesisClass& cls,
                                                       int h, int c,
                                                       const History&) const {
  if (h == c) return CEDistribution::accepted();
  for (int x = 0; x < cls.domain_size(); ++x)
    if (cls.label(h, x) == 1 && cls.label(c, x) != 1)
      return CEDistribution::point(x);
  for (int x = 0; x < cls.domain_size(); ++x)
    if (cls.label(h, x) != cls.label(c, x)) return CEDistribution::point(x);
  return CEDistribution::accepted();
}

SymmetryReport check_symmetric(const Adversary& adv, const HypothesisClass& cls) {
  const History empty_history;
  SymmetryReport report;
  for (int h = 0; h < cls.size(); ++h)
    for (int c = 0; c < cls.size(); ++c) {
      if (h == c) continue;
      CEDistribution ab = adv.distribution(cls, h, c, empty_history);
      CEDistribution ba = adv.distribution(cls, c, h, empty_history);
      std::string why;
      if (ab.accept != ba.accept) {
        why = "one direction accepts, the other does not";
      } else if (!ab.accept) {
        if (ab.support.size() != ba.support.size()) {
          why = "support sizes differ";
        } else {
          for (std::size_t s = 0; s < ab.support.size(); ++s) {
            if (ab.support[s].first != ba.support[s].first) {
              why = "support instances differ at position " + std::to_string(s);
              break;
            }
            if (std::abs(ab.support[s].second - ba.support[s].second) > 1e-12) {
              why = "probability mismatch at instance " +
                    std::to_string(ab.support[s].first);
              break;
            }
          }
        }
      }
      if (!why.empty()) {
        report.pass = false;
        report.h = h;
        report.c = c;
        report.detail = why;
        return report;
      }
    }
  report.detail = "PASS";
  return report;
}

}  // namespace eqlab
