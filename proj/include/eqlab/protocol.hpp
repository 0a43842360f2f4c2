// Episode execution: the equivalence-query interaction loop and transcripts.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eqlab/adversary.hpp"
#include "eqlab/bandit.hpp"
#include "eqlab/concept.hpp"
#include "eqlab/rng.hpp"

namespace eqlab {

enum class FeedbackMode { kFullInfo, kBandit };
enum class TerminalStatus { kAcceptedExact, kAcceptedEarly, kBudgetExhausted };

std::string to_string(TerminalStatus s);

// Which learning rule drives the episode. Minimax and score rules require
// full-information feedback; the bandit rule requires bandit feedback.
struct LearnerConfig {
  enum class Kind { kMinimaxFull, kScoreDet, kBandit };
  Kind kind = Kind::kMinimaxFull;
  double epsilon = 1e-9;
  // Instance distribution for the score rule; empty means uniform.
  std::vector<double> mu;
  BanditPruning pruning;  // bandit only
};

// Target selection. kFixed uses fixed_target; kPool draws uniformly from
// target_pool at episode start (how Monte Carlo sweeps randomize a fixed
// target); kAdaptive redraws a consistent target every round, uniformly
// unless a custom reselect rule is supplied.
struct TargetPolicy {
  enum class Kind { kFixed, kPool, kAdaptive };
  Kind kind = Kind::kFixed;
  int fixed_target = 0;
  std::vector<int> target_pool;
  std::function<int(const VersionSpace& consistent, Rng& rng)> reselect;

  static TargetPolicy fixed(int c);
  static TargetPolicy pool(std::vector<int> targets);
  static TargetPolicy adaptive_uniform();
};

// Diagnostics of the bandit update that followed a round.
struct BanditRoundDiag {
  double prenorm_sum = 0.0;
  double posterior_sum = 0.0;
  double true_sequence_mass = 0.0;  // mass of the current target's sequence
  double branch_excluded_mass = 0.0;
  double support_size = 0.0;
};

struct RoundRecord {
  int round = 0;       // 1-based query index
  int hypothesis = -1;
  int target = -1;     // target in force when the query was made
  bool accepted = false;
  int counterexample = -1;        // -1 when accepted
  int revealed_label = kNoLabel;  // full information only
  int vs_size_after = -1;         // full information only
  int vs_ldim_after = -1;         // full information only
  double certificate = 0.0;
  bool repeat = false;  // bandit: counterexample previously seen
  std::optional<BanditRoundDiag> bandit_diag;
};

struct Transcript {
  std::vector<RoundRecord> rounds;
  TerminalStatus status = TerminalStatus::kBudgetExhausted;
  int total_queries = 0;
  int repeat_rounds = 0;  // bandit rounds whose counterexample was a repeat
  int initial_target = -1;
  FeedbackMode feedback = FeedbackMode::kFullInfo;
  std::uint64_t seed = 0;
};

// Runs the interaction loop. Per round: the learner proposes (one RNG draw
// when the decision is a mixed strategy), acceptance is checked (h = c by row
// identity, or the adversary's ACCEPT), otherwise a counterexample is sampled
// from the exact distribution (one draw); full information reveals c(x) and
// updates V, bandit updates the learner's measure with i = h(x). Draw order
// within an episode: target draw (pool policies, one draw) at the start, then
// per round learner sample, adversary sample, adaptive reselection draw.
// Throws InconsistentTarget for an out-of-range fixed target and ConfigError
// for learner/feedback mismatches.
Transcript run_episode(const HypothesisClass& cls, const LearnerConfig& learner,
                       const Adversary& adv, const TargetPolicy& target,
                       FeedbackMode feedback, int budget, std::uint64_t seed);

// Adaptive variant: re-draws the target from the consistent set each round
// via `reselect` (uniform when null). Full information only.
Transcript run_adaptive_episode(
    const HypothesisClass& cls, const LearnerConfig& learner, const Adversary& adv,
    std::function<int(const VersionSpace&, Rng&)> reselect, FeedbackMode feedback,
    int budget, std::uint64_t seed);

struct ValidationReport {
  bool pass = true;
  int round = -1;  // first violating round when pass is false
  std::string detail;
};

// Replays the transcript's invariants: counterexamples disagree with the
// then-current target, revealed labels match the target, the target stays in
// the replayed version space, Ldim never increases, acceptance happens
// exactly when h = c or the adversary accepted, and the terminal status and
// query count are consistent.
ValidationReport validate_transcript(const Transcript& tr, const HypothesisClass& cls);

}  // namespace eqlab
