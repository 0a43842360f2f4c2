// Littlestone dimension computation and witnesses.
#include "eqlab/littlestone.hpp"

#include <algorithm>
#include <cassert>

namespace eqlab {

namespace {

int floor_log2(int v) {
  int f = 0;
  while ((1 << (f + 1)) <= v) ++f;
  return f;
}

}  // namespace

int MistakeTree::depth() const {
  if (nodes.empty()) return 0;
  // Depth via recursion from the root; trees are tiny.
  std::vector<int> memo(nodes.size(), -1);
  auto rec = [&](auto&& self, int idx) -> int {
    if (idx < 0) return 0;
    if (memo[idx] >= 0) return memo[idx];
    int d = 1 + std::max(self(self, nodes[idx].edges[0].child),
                         self(self, nodes[idx].edges[1].child));
    memo[idx] = d;
    return d;
  };
  return rec(rec, 0);
}

LdimCache::LdimCache(const HypothesisClass& cls)
    : n_(cls.domain_size()), k_(cls.num_labels()), m_(cls.size()) {
  label_masks_.assign(n_, std::vector<Mask>(k_, mask_none(m_)));
  for (int h = 0; h < m_; ++h)
    for (int x = 0; x < n_; ++x) mask_set(label_masks_[x][cls.label(h, x)], h);
}

int LdimCache::dim(const Mask& members) {
  int cnt = mask_count(members);
  if (cnt == 0) return -1;
  if (cnt == 1) return 0;
  auto it = memo_.find(members);
  if (it != memo_.end()) return it->second;
  const int ub = floor_log2(cnt);
  int best = 0;
  for (int x = 0; x < n_ && best < ub; ++x) {
    // The best pair at x is the two nonempty restrictions of largest dimension.
    int top1 = -2, top2 = -2;
    for (int y = 0; y < k_; ++y) {
      Mask sub = mask_and(members, label_masks_[x][y]);
      if (mask_empty(sub)) continue;
      if (mask_count(sub) == cnt) {
        // Every member agrees at x, so x splits nothing.
        top2 = -2;
        break;
      }
      int dy = dim(sub);
      if (dy > top1) {
        top2 = top1;
        top1 = dy;
      } else if (dy > top2) {
        top2 = dy;
      }
    }
    if (top2 >= 0) best = std::max(best, 1 + top2);
  }
  memo_.emplace(members, best);
  return best;
}

int LdimCache::dim_members(const std::vector<int>& members) {
  return dim(mask_from_members(members, m_));
}

int LdimCache::soa(const Mask& members, int x) {
  const int d = dim(members);
  assert(d >= 0);
  int found = kNoLabel;
  int hits = 0;
  for (int y = 0; y < k_; ++y) {
    Mask sub = mask_and(members, label_masks_[x][y]);
    if (mask_empty(sub)) continue;
    if (dim(sub) == d) {
      found = y;
      ++hits;
    }
  }
  // Two full-dimension labels at one instance would shatter a deeper tree.
  assert(hits <= 1);
  return hits == 1 ? found : kNoLabel;
}

LdimCache& ldim_cache_for(const HypothesisClass& cls) {
  thread_local std::unordered_map<std::uint64_t, LdimCache> registry;
  auto it = registry.find(cls.uid());
  if (it == registry.end()) it = registry.emplace(cls.uid(), LdimCache(cls)).first;
  return it->second;
}

int ldim(const VersionSpace& v) {
  if (v.empty()) return -1;
  LdimCache& cache = ldim_cache_for(v.cls());
  return cache.dim(mask_from_members(v.members(), v.cls().size()));
}

namespace {

// True iff some row among `base` satisfies every constraint.
bool bf_any_consistent(const HypothesisClass& cls, const std::vector<int>& base,
                       const std::vector<std::pair<int, int>>& constraints) {
  for (int h : base) {
    bool ok = true;
    for (const auto& [x, y] : constraints)
      if (cls.label(h, x) != y) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

// True iff a shattered tree of exactly `depth` exists for the rows of `base`
// consistent with `constraints`. Enumerates every (instance, label pair)
// choice at every node.
bool bf_exists(const HypothesisClass& cls, const std::vector<int>& base,
               std::vector<std::pair<int, int>>& constraints, int depth) {
  if (!bf_any_consistent(cls, base, constraints)) return false;
  if (depth == 0) return true;
  for (int x = 0; x < cls.domain_size(); ++x)
    for (int y1 = 0; y1 < cls.num_labels(); ++y1)
      for (int y2 = y1 + 1; y2 < cls.num_labels(); ++y2) {
        constraints.emplace_back(x, y1);
        bool left = bf_exists(cls, base, constraints, depth - 1);
        constraints.pop_back();
        if (!left) continue;
        constraints.emplace_back(x, y2);
        bool right = bf_exists(cls, base, constraints, depth - 1);
        constraints.pop_back();
        if (right) return true;
      }
  return false;
}

}  // namespace

int ldim_bruteforce(const VersionSpace& v) {
  if (v.cls().domain_size() > 6)
    throw GuardExceeded("ldim_bruteforce guard: domain size " +
                        std::to_string(v.cls().domain_size()) + " > 6");
  if (v.size() > 16)
    throw GuardExceeded("ldim_bruteforce guard: |V| = " + std::to_string(v.size()) +
                        " > 16");
  if (v.empty()) return -1;
  int best = 0;
  std::vector<std::pair<int, int>> constraints;
  for (int depth = 1; depth <= floor_log2(v.size()); ++depth)
    if (bf_exists(v.cls(), v.members(), constraints, depth)) best = depth;
  return best;
}

int soa_label(const VersionSpace& v, int x) {
  if (v.empty()) throw EmptyVersionSpace("soa_label on empty version space");
  LdimCache& cache = ldim_cache_for(v.cls());
  return cache.soa(mask_from_members(v.members(), v.cls().size()), x);
}

namespace {

// Appends a subtree of exactly `depth` shattered by `members`; returns its
// root index, or -1 for a leaf. Scans x ascending, then (y1, y2) lexicographic.
int build_tree(LdimCache& cache, const Mask& members, int depth, MistakeTree& tree) {
  if (depth == 0) return -1;
  const int idx = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  for (int x = 0; x < cache.domain_size(); ++x)
    for (int y1 = 0; y1 < cache.num_labels(); ++y1)
      for (int y2 = y1 + 1; y2 < cache.num_labels(); ++y2) {
        Mask sub1 = mask_and(members, cache.label_mask(x, y1));
        Mask sub2 = mask_and(members, cache.label_mask(x, y2));
        if (mask_empty(sub1) || mask_empty(sub2)) continue;
        if (cache.dim(sub1) < depth - 1 || cache.dim(sub2) < depth - 1) continue;
        tree.nodes[idx].instance = x;
        int c1 = build_tree(cache, sub1, depth - 1, tree);
        tree.nodes[idx].edges[0] = {y1, c1};
        int c2 = build_tree(cache, sub2, depth - 1, tree);
        tree.nodes[idx].edges[1] = {y2, c2};
        return idx;
      }
  assert(false && "no shattering pair found at positive remaining depth");
  return idx;
}

}  // namespace

MistakeTree shattered_tree(const VersionSpace& v) {
  if (v.empty()) throw EmptyVersionSpace("shattered_tree on empty version space");
  LdimCache& cache = ldim_cache_for(v.cls());
  Mask members = mask_from_members(v.members(), v.cls().size());
  MistakeTree tree;
  build_tree(cache, members, cache.dim(members), tree);
  return tree;
}

namespace {

bool verify_rec(const MistakeTree& tree, LdimCache& cache, int idx, const Mask& members) {
  if (idx < 0) return !mask_empty(members);
  const auto& node = tree.nodes[idx];
  if (node.instance < 0 || node.instance >= cache.domain_size()) return false;
  const auto& e0 = node.edges[0];
  const auto& e1 = node.edges[1];
  if (e0.label == e1.label) return false;
  for (const auto& e : node.edges) {
    if (e.label < 0 || e.label >= cache.num_labels()) return false;
    if (!verify_rec(tree, cache, e.child,
                    mask_and(members, cache.label_mask(node.instance, e.label))))
      return false;
  }
  return true;
}

}  // namespace

bool verify_shattered(const MistakeTree& tree, const VersionSpace& v) {
  LdimCache& cache = ldim_cache_for(v.cls());
  Mask members = mask_from_members(v.members(), v.cls().size());
  if (tree.nodes.empty()) return !mask_empty(members);
  return verify_rec(tree, cache, 0, members);
}

}  // namespace eqlab
