// Counterexample generators and the symmetry verifier.
#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "eqlab/concept.hpp"
#include "eqlab/littlestone.hpp"

namespace eqlab {

// Submitted hypothesis indices, oldest first. Built-in adversaries ignore it;
// the parameter exists for history-dependent extensions.
using History = std::vector<int>;

// Exact finite-support distribution over counterexample instances, or the
// distinguished ACCEPT outcome. Support instances are ascending.
struct CEDistribution {
  bool accept = false;
  std::vector<std::pair<int, double>> support;  // (instance, probability)

  static CEDistribution accepted() {
    CEDistribution d;
    d.accept = true;
    return d;
  }
  static CEDistribution point(int x) {
    CEDistribution d;
    d.support.emplace_back(x, 1.0);
    return d;
  }
};

// Interface for counterexample generators. `h` is the submitted hypothesis,
// `c` the target. Implementations must be pure and immutable after
// construction; distribution() may be called concurrently.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual CEDistribution distribution(const HypothesisClass& cls, int h, int c,
                                      const History& history) const = 0;
  virtual std::string name() const = 0;
  // False for sampling-only adversaries, which payoff construction rejects.
  virtual bool exact() const { return true; }
  // The instance distribution mu, when the adversary is defined by one.
  virtual const std::vector<double>* instance_distribution() const { return nullptr; }
};

// mu restricted to the disagreement set of (h, c) and renormalized.
// Throws ZeroMassDisagreement when mu gives that set zero mass.
// Returns ACCEPT for h == c (no disagreement exists).
CEDistribution random_ce_distribution(const std::vector<double>& mu,
                                      const HypothesisClass& cls, int h, int c);

// Point mass on the first sequence element where h and c disagree; ACCEPT when
// the finite sequence contains no disagreement point.
CEDistribution order_induced_distribution(const std::vector<int>& sequence,
                                          const HypothesisClass& cls, int h, int c);

// Rooted tree with instance-labeled internal nodes and up to k distinctly
// labeled edges per node. A child of -1 is a leaf; an empty node list is a
// single leaf. The root is node 0.
struct LabeledDecisionTree {
  struct Edge {
    int label = kNoLabel;
    int child = -1;
  };
  struct Node {
    int instance = -1;
    std::vector<Edge> edges;
  };
  std::vector<Node> nodes;
};

// Both hypotheses trace their paths from the root; ACCEPT if they halt at the
// same node, else a point mass on the instance of the first divergence node.
CEDistribution decision_tree_distribution(const LabeledDecisionTree& tree,
                                          const HypothesisClass& cls, int h, int c);

// The tree-based adversary: a depth-Ldim(H) shattered mistake tree with every
// hypothesis assigned to the deepest node its predictions reach.
struct TreeAdversaryState {
  struct Node {
    int instance = -1;  // -1 on leaves
    int parent = -1;
    int depth = 0;
    // (edge label, child node id); unused entries keep child -1.
    std::array<std::pair<int, int>, 2> children{{{kNoLabel, -1}, {kNoLabel, -1}}};
    bool leaf = false;
  };
  std::vector<Node> nodes;  // root is node 0; leaves are materialized
  std::vector<int> nu;      // nu[h]: node assigned to hypothesis h
  std::vector<int> leaves;  // leaf node ids in tree order
  int tree_depth = 0;
};

// Builds the state from shattered_tree(full class) or a supplied tree.
TreeAdversaryState build_tree_adversary(const HypothesisClass& cls);
TreeAdversaryState build_tree_adversary(const HypothesisClass& cls,
                                        const MistakeTree& tree);

// Traverses from the root following h's predictions while an edge matches;
// returns the halting node id.
int assign_node(const TreeAdversaryState& state, const HypothesisClass& cls, int h);

// ACCEPT when nu(h) = nu(c); else a point mass on the LCA node's instance.
CEDistribution tree_adversary_distribution(const TreeAdversaryState& state, int h,
                                           int c);

// Lowest common ancestor of two nodes.
int tree_lca(const TreeAdversaryState& state, int a, int b);

// (instance, edge label) pairs from the root down to `node`.
std::vector<std::pair<int, int>> tree_path_constraints(const TreeAdversaryState& state,
                                                       int node);

// Concrete adversaries behind the common interface.

class RandomCEAdversary final : public Adversary {
 public:
  // Weights are normalized; they need not sum to 1.
  explicit RandomCEAdversary(std::vector<double> mu);
  static RandomCEAdversary uniform(int domain_size);
  CEDistribution distribution(const HypothesisClass& cls, int h, int c,
                              const History& history) const override;
  std::string name() const override { return "random"; }
  const std::vector<double>* instance_distribution() const override { return &mu_; }

 private:
  std::vector<double> mu_;
};

class OrderInducedAdversary final : public Adversary {
 public:
  explicit OrderInducedAdversary(std::vector<int> sequence)
      : sequence_(std::move(sequence)) {}
  CEDistribution distribution(const HypothesisClass& cls, int h, int c,
                              const History& history) const override;
  std::string name() const override { return "order"; }

 private:
  std::vector<int> sequence_;
};

class DecisionTreeAdversary final : public Adversary {
 public:
  explicit DecisionTreeAdversary(LabeledDecisionTree tree) : tree_(std::move(tree)) {}
  CEDistribution distribution(const HypothesisClass& cls, int h, int c,
                              const History& history) const override;
  std::string name() const override { return "dtree"; }

 private:
  LabeledDecisionTree tree_;
};

class LdimTreeAdversary final : public Adversary {
 public:
  explicit LdimTreeAdversary(const HypothesisClass& cls)
      : state_(build_tree_adversary(cls)) {}
  CEDistribution distribution(const HypothesisClass& cls, int h, int c,
                              const History& history) const override;
  std::string name() const override { return "ldim_tree"; }
  const TreeAdversaryState& state() const { return state_; }

 private:
  TreeAdversaryState state_;
};

// Deliberately asymmetric generator used to exercise the symmetry verifier:
// returns the least x with h(x) = 1 != c(x), falling back to the least
// disagreement point.
class MinIndexPositiveAdversary final : public Adversary {
 public:
  CEDistribution distribution(const HypothesisClass& cls, int h, int c,
                              const History& history) const override;
  std::string name() const override { return "min_index_positive"; }
};

struct SymmetryReport {
  bool pass = true;
  int h = -1;  // first violating ordered pair, when pass is false
  int c = -1;
  std::string detail;
};

// Compares CE(h,c) and CE(c,h) with empty history for every pair h != c;
// exact support equality with probabilities matched within 1e-12.
SymmetryReport check_symmetric(const Adversary& adv, const HypothesisClass& cls);

}  // namespace eqlab
