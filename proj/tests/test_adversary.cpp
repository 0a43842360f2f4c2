// Tests for counterexample generators and the symmetry verifier.
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "eqlab/adversary.hpp"
#include "eqlab/concept.hpp"
#include "eqlab/errors.hpp"
#include "eqlab/littlestone.hpp"
#include "eqlab/rng.hpp"

using namespace eqlab;

namespace {

const History kNoHistory;

double support_mass(const CEDistribution& d) {
  double s = 0.0;
  for (auto& [x, p] : d.support) s += p;
  return s;
}

bool support_in_set(const CEDistribution& d, const std::vector<int>& set) {
  for (auto& [x, p] : d.support)
    if (!std::binary_search(set.begin(), set.end(), x)) return false;
  return true;
}

void check_distribution_invariants(const CEDistribution& d,
                                   const HypothesisClass& cls, int h, int c) {
  if (d.accept) {
    CHECK(d.support.empty());
    return;
  }
  REQUIRE_FALSE(d.support.empty());
  CHECK(support_mass(d) == doctest::Approx(1.0).epsilon(1e-12));
  auto diff = disagreement_set(cls, h, c);
  CHECK(support_in_set(d, diff));
  for (std::size_t i = 0; i + 1 < d.support.size(); ++i)
    CHECK(d.support[i].first < d.support[i + 1].first);
  for (auto& [x, p] : d.support) CHECK(p > 0.0);
}

}  // namespace

TEST_CASE("random CE on singletons splits mass over the two flips") {
  auto cls = gen_singletons(5);
  std::vector<double> mu(5, 0.2);
  auto d = random_ce_distribution(mu, cls, 0, 3);
  REQUIRE(d.support.size() == 2);
  CHECK(d.support[0].first == 0);
  CHECK(d.support[0].second == doctest::Approx(0.5));
  CHECK(d.support[1].first == 3);
  CHECK(d.support[1].second == doctest::Approx(0.5));
}

TEST_CASE("random CE honors point masses and uniform linear pairs") {
  auto cls = gen_singletons(4);
  std::vector<double> mu = {0.0, 1.0, 0.0, 0.0};
  auto d = random_ce_distribution(mu, cls, 1, 2);
  REQUIRE(d.support.size() == 1);
  CHECK(d.support[0].first == 1);
  CHECK(d.support[0].second == doctest::Approx(1.0));

  auto lin = gen_linear_functionals(3, 2);
  std::vector<double> uni(9, 1.0 / 9.0);
  auto e = random_ce_distribution(uni, lin, 0, 5);
  REQUIRE(e.support.size() == 6);
  for (auto& [x, p] : e.support) CHECK(p == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("random CE accepts equality and rejects zero-mass disagreement") {
  auto cls = gen_singletons(4);
  std::vector<double> mu(4, 0.25);
  CHECK(random_ce_distribution(mu, cls, 2, 2).accept);
  std::vector<double> offmass = {0.0, 0.0, 0.5, 0.5};
  CHECK_THROWS_AS(random_ce_distribution(offmass, cls, 0, 1), ZeroMassDisagreement);
}

TEST_CASE("order-induced CE returns the first disagreement in the sequence") {
  auto cls = gen_singletons(5);
  std::vector<int> identity = {0, 1, 2, 3, 4};
  auto d = order_induced_distribution(identity, cls, 0, 3);
  REQUIRE(d.support.size() == 1);
  CHECK(d.support[0].first == 0);

  std::vector<int> reversed = {4, 3, 2, 1, 0};
  auto e = order_induced_distribution(reversed, cls, 0, 3);
  REQUIRE(e.support.size() == 1);
  CHECK(e.support[0].first == 3);

  // A sequence that skips both disagreement points accepts.
  std::vector<int> skip = {1, 2, 4};
  CHECK(order_induced_distribution(skip, cls, 0, 3).accept);
  CHECK(order_induced_distribution(identity, cls, 2, 2).accept);
}

TEST_CASE("decision tree CE accepts equal paths and splits at divergence") {
  auto cls = gen_singletons(4);
  LabeledDecisionTree tree;
  tree.nodes.resize(2);
  tree.nodes[0].instance = 0;
  tree.nodes[0].edges = {{0, 1}, {1, -1}};
  tree.nodes[1].instance = 1;
  tree.nodes[1].edges = {{0, -1}, {1, -1}};

  CHECK(decision_tree_distribution(tree, cls, 2, 2).accept);
  // h=0 takes edge 1 at the root; h=1 takes edge 0: diverge on instance 0.
  auto d = decision_tree_distribution(tree, cls, 0, 1);
  REQUIRE(d.support.size() == 1);
  CHECK(d.support[0].first == 0);
  // h=2 and h=3 follow the same path to the same halt node: accept.
  CHECK(decision_tree_distribution(tree, cls, 2, 3).accept);
}

TEST_CASE("decision tree CE support lies inside the disagreement set") {
  auto cls = gen_random_class(4, 2, 10, 21);
  LabeledDecisionTree tree;
  tree.nodes.resize(3);
  tree.nodes[0].instance = 2;
  tree.nodes[0].edges = {{0, 1}, {1, 2}};
  tree.nodes[1].instance = 0;
  tree.nodes[1].edges = {{1, -1}};
  tree.nodes[2].instance = 3;
  tree.nodes[2].edges = {{0, -1}, {1, -1}};
  for (int h = 0; h < cls.size(); ++h)
    for (int c = 0; c < cls.size(); ++c) {
      auto d = decision_tree_distribution(tree, cls, h, c);
      check_distribution_invariants(d, cls, h, c);
      if (h == c) CHECK(d.accept);
    }
}

TEST_CASE("tree adversary accepts same-leaf pairs and returns the LCA instance") {
  auto cls = gen_singletons(8);
  auto state = build_tree_adversary(cls);
  CHECK(state.tree_depth == 1);
  for (int h = 0; h < 8; ++h) CHECK(assign_node(state, cls, h) >= 0);
  for (int h = 0; h < 8; ++h)
    for (int c = 0; c < 8; ++c) {
      auto d = tree_adversary_distribution(state, h, c);
      check_distribution_invariants(d, cls, h, c);
      bool same = state.nu[h] == state.nu[c];
      CHECK(d.accept == same);
    }
}

TEST_CASE("tree adversary on sibling leaves returns the parent instance") {
  auto cls = gen_random_class(3, 2, 8, 1);
  auto state = build_tree_adversary(cls);
  REQUIRE(state.tree_depth == 3);
  // Find two hypotheses assigned to sibling leaves.
  for (int h = 0; h < cls.size(); ++h)
    for (int c = 0; c < cls.size(); ++c) {
      int nh = state.nu[h], nc = state.nu[c];
      if (nh == nc) continue;
      if (state.nodes[nh].parent == state.nodes[nc].parent &&
          state.nodes[nh].parent >= 0) {
        auto d = tree_adversary_distribution(state, h, c);
        REQUIRE(d.support.size() == 1);
        CHECK(d.support[0].first ==
              state.nodes[state.nodes[nh].parent].instance);
      }
    }
}

TEST_CASE("tree adversary support stays inside the disagreement set") {
  for (auto cls : {gen_singletons(8), gen_linear_functionals(3, 2)}) {
    auto state = build_tree_adversary(cls);
    for (int h = 0; h < cls.size(); ++h)
      for (int c = 0; c < cls.size(); ++c) {
        auto d = tree_adversary_distribution(state, h, c);
        check_distribution_invariants(d, cls, h, c);
      }
  }
}

TEST_CASE("assign_node walks full paths and halts on missing edges") {
  auto cls = gen_random_class(3, 2, 8, 1);
  auto state = build_tree_adversary(cls);
  // A binary full cube shatters its own tree: every hypothesis reaches a leaf.
  for (int h = 0; h < cls.size(); ++h) {
    int node = assign_node(state, cls, h);
    CHECK(state.nodes[node].leaf);
  }

  // A supplied tree whose root labels miss some hypothesis forces a root halt.
  auto lin = gen_linear_functionals(3, 1);  // labels at x=1 are 1 and 2
  MistakeTree t;
  t.nodes.push_back({1, {{{1, -1}, {2, -1}}}});
  auto st = build_tree_adversary(lin, t);
  // Both members do have labels 1 or 2 at x=1, so both reach leaves here.
  for (int h = 0; h < lin.size(); ++h)
    CHECK(st.nodes[assign_node(st, lin, h)].leaf);

  // Against a tree testing labels {1,2} at x=0, where both members are 0,
  // every hypothesis halts at the root.
  MistakeTree halt;
  halt.nodes.push_back({0, {{{1, -1}, {2, -1}}}});
  auto sh = build_tree_adversary(lin, halt);
  for (int h = 0; h < lin.size(); ++h) {
    int node = assign_node(sh, lin, h);
    CHECK(node == 0);
    CHECK_FALSE(sh.nodes[node].leaf);
  }
  // Equal halt nodes mean every pair accepts.
  CHECK(tree_adversary_distribution(sh, 0, 1).accept);
}

TEST_CASE("tree_lca and path constraints agree with the tree structure") {
  auto cls = gen_random_class(3, 2, 8, 1);
  auto state = build_tree_adversary(cls);
  REQUIRE(state.leaves.size() == 8);
  for (int leaf : state.leaves) {
    auto constraints = tree_path_constraints(state, leaf);
    CHECK(int(constraints.size()) == state.nodes[leaf].depth);
    auto v = space_from_constraints(cls, constraints);
    CHECK(v.size() >= 1);
  }
  // LCA of a node with itself is itself; with the root it is the root.
  CHECK(tree_lca(state, state.leaves[0], state.leaves[0]) == state.leaves[0]);
  CHECK(tree_lca(state, 0, state.leaves[3]) == 0);
}

TEST_CASE("adversary interface objects match their free functions") {
  auto cls = gen_singletons(6);
  auto uni = RandomCEAdversary::uniform(6);
  std::vector<double> mu(6, 1.0 / 6.0);
  for (int h = 0; h < 6; ++h)
    for (int c = 0; c < 6; ++c) {
      auto a = uni.distribution(cls, h, c, kNoHistory);
      auto b = random_ce_distribution(mu, cls, h, c);
      CHECK(a.accept == b.accept);
      REQUIRE(a.support.size() == b.support.size());
      for (std::size_t i = 0; i < a.support.size(); ++i) {
        CHECK(a.support[i].first == b.support[i].first);
        CHECK(a.support[i].second == doctest::Approx(b.support[i].second));
      }
    }
  CHECK(uni.name() == "random");
  CHECK(uni.exact());
  REQUIRE(uni.instance_distribution() != nullptr);
  CHECK(uni.instance_distribution()->size() == 6);
}

TEST_CASE("iid order-induced equals random CE in closed form") {
  // With an i.i.d. mu-sequence, the first disagreement point is mu conditioned
  // on the disagreement set; compare against the closed form on every pair.
  auto cls = gen_singletons(5);
  std::vector<double> mu = {0.1, 0.3, 0.2, 0.25, 0.15};
  for (int h = 0; h < 5; ++h)
    for (int c = 0; c < 5; ++c) {
      if (h == c) continue;
      auto diff = disagreement_set(cls, h, c);
      double total = 0.0;
      for (int x : diff) total += mu[x];
      auto d = random_ce_distribution(mu, cls, h, c);
      REQUIRE(d.support.size() == diff.size());
      for (std::size_t i = 0; i < diff.size(); ++i) {
        CHECK(d.support[i].first == diff[i]);
        CHECK(d.support[i].second == doctest::Approx(mu[diff[i]] / total).epsilon(1e-14));
      }
    }
}

TEST_CASE("check_symmetric passes all builtin adversaries") {
  for (auto cls : {gen_singletons(6), gen_linear_functionals(3, 1)}) {
    int n = cls.domain_size();
    RandomCEAdversary random = RandomCEAdversary::uniform(n);
    std::vector<int> seq(n);
    for (int i = 0; i < n; ++i) seq[i] = i;
    OrderInducedAdversary order(seq);
    auto mt = shattered_tree(full_space(cls));
    LabeledDecisionTree dt;
    for (auto& node : mt.nodes) {
      LabeledDecisionTree::Node dn;
      dn.instance = node.instance;
      for (auto& e : node.edges) dn.edges.push_back({e.label, e.child});
      dt.nodes.push_back(dn);
    }
    DecisionTreeAdversary dtree(dt);
    LdimTreeAdversary tree(cls);
    for (const Adversary* adv :
         {static_cast<const Adversary*>(&random), static_cast<const Adversary*>(&order),
          static_cast<const Adversary*>(&dtree), static_cast<const Adversary*>(&tree)}) {
      auto report = check_symmetric(*adv, cls);
      CHECK(report.pass);
    }
  }
}

TEST_CASE("check_symmetric flags the asymmetric reference adversary") {
  auto cls = gen_singletons(3);
  MinIndexPositiveAdversary bad;
  auto report = check_symmetric(bad, cls);
  CHECK_FALSE(report.pass);
  CHECK(report.h >= 0);
  CHECK(report.c >= 0);
  CHECK(report.h != report.c);
  CHECK_FALSE(report.detail.empty());
  // The witness pair really is asymmetric.
  auto a = bad.distribution(cls, report.h, report.c, kNoHistory);
  auto b = bad.distribution(cls, report.c, report.h, kNoHistory);
  bool same = a.accept == b.accept && a.support.size() == b.support.size();
  if (same)
    for (std::size_t i = 0; i < a.support.size(); ++i)
      if (a.support[i].first != b.support[i].first ||
          std::abs(a.support[i].second - b.support[i].second) > 1e-12)
        same = false;
  CHECK_FALSE(same);
}

TEST_CASE("distribution invariants hold across builtins on random classes") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    Rng rng(derive_seed(6006, i));
    int n = 3 + rng.uniform_int(3);
    int k = 2 + rng.uniform_int(2);
    long cube = 1;
    for (int j = 0; j < n; ++j) cube *= k;
    int m = 2 + rng.uniform_int(int(std::min<long>(9, cube - 1)));
    auto cls = gen_random_class(n, k, m, rng.uniform_int(1 << 30));
    auto uni = RandomCEAdversary::uniform(n);
    std::vector<int> seq(n);
    for (int j = 0; j < n; ++j) seq[j] = j;
    OrderInducedAdversary order(seq);
    LdimTreeAdversary tree(cls);
    for (const Adversary* adv :
         {static_cast<const Adversary*>(&uni), static_cast<const Adversary*>(&order),
          static_cast<const Adversary*>(&tree)})
      for (int h = 0; h < m; ++h)
        for (int c = 0; c < m; ++c)
          check_distribution_invariants(adv->distribution(cls, h, c, kNoHistory), cls,
                                        h, c);
  }
}
