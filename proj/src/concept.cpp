// Hypothesis class construction and version-space operations.
#include "eqlab/concept.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "eqlab/rng.hpp"

namespace eqlab {

namespace {

std::uint64_t next_uid() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace

HypothesisClass::HypothesisClass(std::vector<std::vector<int>> labels, int n, int k)
    : labels_(std::move(labels)), n_(n), k_(k), uid_(next_uid()) {}

HypothesisClass build_class(const std::vector<std::vector<int>>& label_matrix,
                            int num_labels) {
  if (label_matrix.empty() || label_matrix.front().empty())
    throw EmptyClass("class needs at least one hypothesis over at least one instance");
  if (num_labels < 2)
    throw EmptyClass("label space needs at least two labels, got " +
                     std::to_string(num_labels));
  const std::size_t n = label_matrix.front().size();
  for (const auto& row : label_matrix) {
    if (row.size() != n)
      throw LabelOutOfRange("ragged label matrix: row of width " +
                            std::to_string(row.size()) + " vs " + std::to_string(n));
    for (int y : row)
      if (y < 0 || y >= num_labels)
        throw LabelOutOfRange("label " + std::to_string(y) + " outside 0.." +
                              std::to_string(num_labels - 1));
  }
  std::set<std::vector<int>> seen;
  for (std::size_t h = 0; h < label_matrix.size(); ++h)
    if (!seen.insert(label_matrix[h]).second)
      throw DuplicateHypothesis("row " + std::to_string(h) +
                                " duplicates an earlier hypothesis");
  return HypothesisClass(label_matrix, static_cast<int>(n), num_labels);
}

HypothesisClass gen_singletons(int n) {
  if (n < 2) throw EmptyClass("gen_singletons needs n >= 2, got " + std::to_string(n));
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) rows[i][i] = 1;
  return build_class(rows, 2);
}

HypothesisClass gen_linear_functionals(int p, int d) {
  if (!is_prime(p)) throw EmptyClass("p must be prime, got " + std::to_string(p));
  if (d < 1) throw EmptyClass("d must be >= 1, got " + std::to_string(d));
  int n = 1;
  for (int i = 0; i < d; ++i) n *= p;
  // Point t in lexicographic order has coordinates given by base-p digits,
  // most significant digit first.
  auto coords = [&](int t) {
    std::vector<int> v(d);
    for (int i = d - 1; i >= 0; --i) {
      v[i] = t % p;
      t /= p;
    }
    return v;
  };
  std::vector<std::vector<int>> rows;
  for (int w = 1; w < n; ++w) {  // nonzero w only
    std::vector<int> wc = coords(w);
    std::vector<int> row(n);
    for (int x = 0; x < n; ++x) {
      std::vector<int> xc = coords(x);
      int dot = 0;
      for (int i = 0; i < d; ++i) dot += wc[i] * xc[i];
      row[x] = dot % p;
    }
    rows.push_back(std::move(row));
  }
  return build_class(rows, p);
}

HypothesisClass gen_random_class(int n, int k, int m, std::uint64_t seed) {
  if (n < 1 || k < 2 || m < 1)
    throw EmptyClass("gen_random_class needs n >= 1, k >= 2, m >= 1");
  double capacity = 1.0;
  for (int i = 0; i < n; ++i) {
    capacity *= k;
    if (capacity > 1e18) break;  // no overflow; m can never exceed this
  }
  if (capacity <= 1e18 && static_cast<double>(m) > capacity)
    throw EmptyClass("m = " + std::to_string(m) + " exceeds k^n");
  Rng rng(splitmix64(seed));
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> rows;
  while (static_cast<int>(rows.size()) < m) {
    std::vector<int> row(n);
    for (int x = 0; x < n; ++x) row[x] = rng.uniform_int(k);
    if (seen.insert(row).second) rows.push_back(std::move(row));
  }
  return build_class(rows, k);
}

bool VersionSpace::contains(int h) const {
  return std::binary_search(members_.begin(), members_.end(), h);
}

VersionSpace full_space(const HypothesisClass& cls) {
  std::vector<int> members(cls.size());
  for (int h = 0; h < cls.size(); ++h) members[h] = h;
  return VersionSpace(cls, std::move(members), {});
}

VersionSpace space_from_constraints(const HypothesisClass& cls,
                                    const std::vector<std::pair<int, int>>& constraints) {
  std::vector<int> members;
  for (int h = 0; h < cls.size(); ++h) {
    bool ok = true;
    for (const auto& [x, y] : constraints)
      if (cls.label(h, x) != y) { ok = false; break; }
    if (ok) members.push_back(h);
  }
  return VersionSpace(cls, std::move(members), constraints);
}

VersionSpace restrict(const VersionSpace& v, int x, int y) {
  std::vector<int> members;
  for (int h : v.members())
    if (v.cls().label(h, x) == y) members.push_back(h);
  auto constraints = v.constraints();
  constraints.emplace_back(x, y);
  return VersionSpace(v.cls(), std::move(members), std::move(constraints));
}

std::vector<int> disagreement_set(const HypothesisClass& cls, int h, int c) {
  std::vector<int> out;
  for (int x = 0; x < cls.domain_size(); ++x)
    if (cls.label(h, x) != cls.label(c, x)) out.push_back(x);
  return out;
}

}  // namespace eqlab
