// Littlestone dimension, SOA labels, shattered trees, and a brute-force oracle.
#pragma once

#include <array>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "eqlab/concept.hpp"
#include "eqlab/mask.hpp"

namespace eqlab {

// Rooted binary mistake tree. Internal nodes carry an instance and exactly two
// edges with distinct labels; a child of -1 is a leaf. An empty node list is
// the depth-0 tree (a single leaf). The root is node 0.
struct MistakeTree {
  struct Edge {
    int label = kNoLabel;
    int child = -1;
  };
  struct Node {
    int instance = -1;
    std::array<Edge, 2> edges;
  };
  std::vector<Node> nodes;

  // Maximum number of internal nodes on a root-to-leaf path.
  int depth() const;
};

// Memoized Littlestone dimension for one hypothesis class, keyed by the
// member-set bitmask. A cached value always equals recomputation from scratch.
// The cache copies the per-(instance, label) membership masks it needs, so it
// stays valid even if the originating class object is destroyed.
class LdimCache {
 public:
  explicit LdimCache(const HypothesisClass& cls);

  int dim(const Mask& members);
  int dim_members(const std::vector<int>& members);

  // Unique dimension-preserving label at x, or kNoLabel. Requires a nonempty mask.
  int soa(const Mask& members, int x);

  // Members h with h(x) = y, as a mask over the whole class.
  const Mask& label_mask(int x, int y) const { return label_masks_[x][y]; }

  int domain_size() const { return n_; }
  int num_labels() const { return k_; }
  int class_size() const { return m_; }
  std::size_t entries() const { return memo_.size(); }

 private:
  int n_, k_, m_;
  std::vector<std::vector<Mask>> label_masks_;  // [x][y]
  std::unordered_map<Mask, int, MaskHash> memo_;
};

// Shared per-thread cache for a class; valid for the class's whole lifetime.
LdimCache& ldim_cache_for(const HypothesisClass& cls);

// Littlestone dimension of the version space; -1 for empty V, 0 for a single
// hypothesis, else max over (x, {y1,y2}) of 1 + min over the two restrictions.
int ldim(const VersionSpace& v);

// Independent oracle: exhaustively searches for shattered trees of each depth
// up to floor(log2 |V|) by raw matrix scans; no memoization, no code shared
// with ldim. Guard: domain size <= 6 and |V| <= 16, else GuardExceeded.
int ldim_bruteforce(const VersionSpace& v);

// Unique label y with ldim(V_{x->y}) = ldim(V), or kNoLabel if every label
// drops the dimension. Throws EmptyVersionSpace for empty V.
int soa_label(const VersionSpace& v, int x);

// A mistake tree of depth exactly ldim(V) shattered by V. Deterministic:
// scans instances ascending, then label pairs in lexicographic order.
// Throws EmptyVersionSpace for empty V.
MistakeTree shattered_tree(const VersionSpace& v);

// True iff every root-to-leaf path is realized by some member of V (and the
// tree is structurally valid: two distinct in-range labels per node).
bool verify_shattered(const MistakeTree& tree, const VersionSpace& v);

}  // namespace eqlab
