// Payoff game construction and a certified zero-sum matrix-game solver.
#pragma once

#include <vector>

#include "eqlab/adversary.hpp"
#include "eqlab/concept.hpp"

namespace eqlab {

struct BanditState;  // bandit.hpp

// Square matrix of expected payoffs. The row player is the learner
// (minimizing), the column player the adversary's target choice.
struct PayoffMatrix {
  int dim = 0;
  std::vector<double> entries;  // row-major

  explicit PayoffMatrix(int d = 0) : dim(d), entries(static_cast<std::size_t>(d) * d, 0.0) {}
  double at(int h, int c) const { return entries[static_cast<std::size_t>(h) * dim + c]; }
  double& at(int h, int c) { return entries[static_cast<std::size_t>(h) * dim + c]; }
};

// Probability mass over hypothesis indices (here: over matrix rows).
using MixedStrategy = std::vector<double>;

struct MinimaxSolution {
  MixedStrategy strategy;
  double value_bound = 0.0;  // best_response_value of the returned strategy
};

// Full-information game over the version space V: entry (h, c) for h != c is
// the probability under the adversary's counterexample distribution that the
// revealed label keeps the version space at full Littlestone dimension,
// Pr_x[ldim(V_{x -> c(x)}) = ldim(V)]. The diagonal is 0, and a pair the
// adversary would accept contributes an empty support, hence 0. Rows and
// columns are indexed by position in V.members().
PayoffMatrix fullinfo_payoff_matrix(const VersionSpace& v, const Adversary& adv,
                                    const History& history);

// Bandit game over the whole class; entries are expected potential increments
// for the column target under the row submission. Diagonal is -1. Declared
// here, implemented with the bandit state machinery.
PayoffMatrix bandit_payoff_matrix(const HypothesisClass& cls, const BanditState& state,
                                  const Adversary& adv, const History& history);

// max over columns c of sum_h p(h) * entry(h, c); fixed summation order.
double best_response_value(const PayoffMatrix& m, const MixedStrategy& p);

// Minimax strategy for the minimizing row player with a certified bound:
// best_response_value(m, p) <= value_bound <= game value + epsilon.
// Exact simplex for dim <= 64, Hedge self-play with a duality-gap stopping
// rule above that. The returned bound is always recomputed through
// best_response_value, never read off solver internals.
MinimaxSolution solve_minimax(const PayoffMatrix& m, double epsilon);

}  // namespace eqlab
