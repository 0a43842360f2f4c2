// Finite hypothesis classes, version spaces, and disagreement sets.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eqlab/errors.hpp"

namespace eqlab {

// Sentinel for "no label" (the SOA undefined value); never a real label.
constexpr int kNoLabel = -1;

// An m x n label matrix over labels {0..k-1} with pairwise distinct rows.
// Immutable after construction; safe to share across threads.
class HypothesisClass {
 public:
  int domain_size() const { return n_; }
  int num_labels() const { return k_; }
  int size() const { return static_cast<int>(labels_.size()); }
  int label(int h, int x) const { return labels_[h][x]; }
  const std::vector<int>& row(int h) const { return labels_[h]; }
  const std::vector<std::vector<int>>& matrix() const { return labels_; }

  // Stable identity token for memoization keyed across class instances.
  // Copies share the token; content is identical, so cached values stay valid.
  std::uint64_t uid() const { return uid_; }

  friend HypothesisClass build_class(const std::vector<std::vector<int>>& label_matrix,
                                     int num_labels);

 private:
  HypothesisClass(std::vector<std::vector<int>> labels, int n, int k);

  std::vector<std::vector<int>> labels_;
  int n_ = 0;
  int k_ = 0;
  std::uint64_t uid_ = 0;
};

// Validates and constructs a class. Throws EmptyClass for an empty or
// zero-width matrix or k < 2, LabelOutOfRange for entries outside {0..k-1}
// or a ragged matrix, DuplicateHypothesis for repeated rows.
HypothesisClass build_class(const std::vector<std::vector<int>>& label_matrix,
                            int num_labels);

// Row i labels exactly point i positive. m = n, k = 2. Requires n >= 2.
HypothesisClass gen_singletons(int n);

// All nonzero linear functionals over F_p^d: domain = F_p^d in lexicographic
// order (n = p^d), one hypothesis per nonzero w (m = p^d - 1),
// h_w(x) = <w, x> mod p, k = p. Requires p prime, d >= 1.
HypothesisClass gen_linear_functionals(int p, int d);

// m distinct uniformly drawn rows; deterministic for a fixed seed.
// Requires m <= k^n. When m = k^n the class is the full cube on n points.
HypothesisClass gen_random_class(int n, int k, int m, std::uint64_t seed);

// A subset of a class's rows together with the (instance, label) constraints
// that produced it. Holds a non-owning pointer; the class must outlive it.
class VersionSpace {
 public:
  VersionSpace(const HypothesisClass& cls, std::vector<int> members,
               std::vector<std::pair<int, int>> constraints)
      : cls_(&cls), members_(std::move(members)), constraints_(std::move(constraints)) {}

  const HypothesisClass& cls() const { return *cls_; }
  const std::vector<int>& members() const { return members_; }
  const std::vector<std::pair<int, int>>& constraints() const { return constraints_; }
  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int h) const;

 private:
  const HypothesisClass* cls_;
  std::vector<int> members_;                      // ascending row indices
  std::vector<std::pair<int, int>> constraints_;  // (instance, label), append order
};

// The whole class as a version space with no constraints.
VersionSpace full_space(const HypothesisClass& cls);

// Members consistent with the given constraint list, replayed over the class.
VersionSpace space_from_constraints(const HypothesisClass& cls,
                                    const std::vector<std::pair<int, int>>& constraints);

// V_{x->y}: members with h(x) = y; the constraint is appended. May be empty.
VersionSpace restrict(const VersionSpace& v, int x, int y);

// {x : h(x) != c(x)}, ascending. Empty iff h == c.
std::vector<int> disagreement_set(const HypothesisClass& cls, int h, int c);

}  // namespace eqlab
