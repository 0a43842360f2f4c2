// The three learning rules: minimax full-information, deterministic score,
// and the bandit expert learner.
#pragma once

#include <vector>

#include "eqlab/adversary.hpp"
#include "eqlab/bandit.hpp"
#include "eqlab/concept.hpp"
#include "eqlab/minimax.hpp"

namespace eqlab {

// Either a mixed strategy over `actions` (to be sampled) or a single
// hypothesis index when the rule is deterministic.
struct LearnerDecision {
  std::vector<int> actions;  // hypothesis indices the strategy ranges over
  MixedStrategy strategy;    // aligned with actions; empty when deterministic
  int hypothesis = -1;       // set when deterministic
  double certificate = 0.0;  // best-response value of the round's game

  bool deterministic() const { return strategy.empty(); }
};

// Full-information rule: the single member when |V| = 1 (submitting it forces
// acceptance), else the minimax strategy of the full-information payoff game
// over V. The certificate is the strategy's best-response value.
LearnerDecision fullinfo_next(const VersionSpace& v, const Adversary& adv,
                              const History& history, double epsilon);

// score(h) = Pr_{x ~ mu}[ldim(V_{x -> h(x)}) = ldim(V)], the probability that
// h's own label keeps the version space at full dimension.
double hypothesis_score(const VersionSpace& v, const std::vector<double>& mu, int h);

// Deterministic rule for random counterexamples: argmax of hypothesis_score
// over V, ties broken by the lowest row index. Returns a row index of the
// class. mu must be a probability mass over instances.
int score_learner_next(const VersionSpace& v, const std::vector<double>& mu);

// Bandit rule: minimax strategy of the bandit payoff game over the whole
// class (bandit feedback never identifies a version space).
LearnerDecision bandit_next(const BanditState& state, const HypothesisClass& cls,
                            const Adversary& adv, const History& history,
                            double epsilon);

}  // namespace eqlab
