// Bandit learner state: the label-sequence measure and its update rule.
#pragma once

#include <cstdint>
#include <vector>

#include "eqlab/concept.hpp"
#include "eqlab/mask.hpp"
#include "eqlab/minimax.hpp"

namespace eqlab {

// Optional relief valve for exploratory runs; correctness suites keep it off.
struct BanditPruning {
  bool enabled = false;
  double threshold = 1e-15;  // whole mass groups below this are dropped
};

// The measure mu_t over label sequences in {0..k-1}^t, stored exactly but
// aggregated: the update rule's branch factor depends on a sequence s only
// through its version space V(s) = {h : h agrees with s on x_1..x_t}, so
// sequences sharing that member mask evolve identically and are kept as one
// (mask, total mass, sequence count) group. Per hypothesis, the mass and mask
// of its own label sequence are tracked alongside (needed for potentials and
// payoff columns). This is a reparameterization of the verbatim rule, not an
// approximation; unit tests compare it against a per-sequence oracle.
struct BanditState {
  struct Group {
    Mask mask;     // members consistent with every sequence in the group
    double mass;   // total mu_t mass of the group; positive
    double count;  // number of sequences in the group (exact up to 2^53)
  };

  int t = 0;
  int k = 0;
  int m = 0;                   // class size
  std::uint64_t class_uid = 0;  // guards against cross-class use
  std::vector<int> xs;         // observed instances x_1..x_t
  std::vector<Group> groups;   // positive-mass sequences only
  std::vector<double> sigma;   // sigma[h] = mu_t(h's label sequence); 0 is sticky
  std::vector<Mask> seq_mask;  // version-space mask of h's label sequence

  // Diagnostics of the update that produced this state (defaults for t = 0).
  double prenorm_sum = 1.0;    // sum of nu(s, j) before normalization
  double posterior_sum = 1.0;  // total mass after normalization
  double branch_i_mass = 0.0;  // mass the rule assigned the excluded branch j = i
  bool pruned = false;         // true once any mass has been dropped by pruning

  // Total mass currently assigned by mu_t (sum over groups).
  double total_mass() const;
  // Total number of positive-mass sequences (sum of group counts).
  double support_size() const;
};

// Unit mass on the empty sequence.
BanditState bandit_init(const HypothesisClass& cls);

// The SOA decision rule r_{s,t}(x) for the label sequence s on instances xs:
// the label of the unique dimension-preserving branch of the version space of
// (xs, s) at x, or kNoLabel when that version space is empty or no label
// preserves the dimension. Throws LengthMismatch when |s| != |xs|.
int soa_rule(const HypothesisClass& cls, const std::vector<int>& xs,
             const std::vector<int>& s, int x);

// kappa_t(x, j): total mu_t-mass of sequences whose SOA rule at x outputs j.
double kappa(const BanditState& state, const HypothesisClass& cls, int x, int j);

// One application of the update rule after counterexample x with submitted
// (wrong) label i: nu(s, j) = 0 if j = i; mu_t(s) * (1 - (k-1)/k^3 +
// kappa(x,i) / (kappa(x,j) * k)) if the SOA rule of s at x outputs j != i;
// mu_t(s) / k^3 otherwise; then normalized by the total. Throws
// DegenerateNormalizer if the total vanishes (impossible for k >= 2).
BanditState bandit_update(const BanditState& state, const HypothesisClass& cls, int x,
                          int i, const BanditPruning& pruning = {});

// Phi_t(h) = (8 ln k) L_t(h) - ln mu_t(h's sequence); throws
// PotentialUndefined when that sequence has mass 0.
double potential(const BanditState& state, const HypothesisClass& cls, int h);

// The potential increment for target c when h is submitted and the
// counterexample is x (requires h(x) != c(x)), in ratio form so it stays
// finite for zero-mass target sequences:
//   (8 ln k)(L_t^x(c) - L_t(c)) + ln(prenorm total) - ln(branch factor of c).
// In the one genuinely infinite corner (SOA of c's sequence outputs c(x),
// kappa(x, c(x)) = 0, kappa(x, h(x)) > 0; only reachable at mass 0) the value
// is clamped to -64, which preserves every inequality the suites check; the
// 0/0 corner takes the ratio as 1.
double bandit_pointwise_payoff(const BanditState& state, const HypothesisClass& cls,
                               int h, int c, int x);

}  // namespace eqlab
