// The equivalence-query interaction loop.
#include "eqlab/protocol.hpp"

#include <algorithm>

#include "eqlab/learner.hpp"
#include "eqlab/littlestone.hpp"

namespace eqlab {

std::string to_string(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::kAcceptedExact: return "accepted_exact";
    case TerminalStatus::kAcceptedEarly: return "accepted_early";
    case TerminalStatus::kBudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

TargetPolicy TargetPolicy::fixed(int c) {
  TargetPolicy p;
  p.kind = Kind::kFixed;
  p.fixed_target = c;
  return p;
}

TargetPolicy TargetPolicy::pool(std::vector<int> targets) {
  TargetPolicy p;
  p.kind = Kind::kPool;
  p.target_pool = std::move(targets);
  return p;
}

TargetPolicy TargetPolicy::adaptive_uniform() {
  TargetPolicy p;
  p.kind = Kind::kAdaptive;
  return p;
}

Transcript run_episode(const HypothesisClass& cls, const LearnerConfig& learner,
                       const Adversary& adv, const TargetPolicy& target,
                       FeedbackMode feedback, int budget, std::uint64_t seed) {
  if (budget < 1) throw ConfigError("budget must be >= 1");
  const bool bandit_mode = feedback == FeedbackMode::kBandit;
  if (bandit_mode != (learner.kind == LearnerConfig::Kind::kBandit))
    throw ConfigError("learner kind does not match the feedback mode");
  if (target.kind == TargetPolicy::Kind::kAdaptive && bandit_mode)
    throw ConfigError(
        "adaptive reselection needs revealed labels; bandit feedback has none");

  Rng rng(seed);
  int c = -1;
  switch (target.kind) {
    case TargetPolicy::Kind::kFixed:
      c = target.fixed_target;
      if (c < 0 || c >= cls.size())
        throw InconsistentTarget("fixed target " + std::to_string(c) +
                                 " outside class of size " + std::to_string(cls.size()));
      break;
    case TargetPolicy::Kind::kPool: {
      if (target.target_pool.empty()) throw InconsistentTarget("empty target pool");
      for (int t : target.target_pool)
        if (t < 0 || t >= cls.size())
          throw InconsistentTarget("pool target " + std::to_string(t) +
                                   " outside class");
      c = target.target_pool[rng.uniform_int(static_cast<int>(target.target_pool.size()))];
      break;
    }
    case TargetPolicy::Kind::kAdaptive: {
      VersionSpace all = full_space(cls);
      c = target.reselect ? target.reselect(all, rng)
                          : all.members()[rng.uniform_int(all.size())];
      break;
    }
  }

  std::vector<double> score_mu = learner.mu;
  if (learner.kind == LearnerConfig::Kind::kScoreDet && score_mu.empty())
    score_mu.assign(cls.domain_size(), 1.0 / cls.domain_size());

  Transcript tr;
  tr.feedback = feedback;
  tr.seed = seed;
  tr.initial_target = c;

  VersionSpace v = full_space(cls);
  BanditState bstate;
  if (bandit_mode) bstate = bandit_init(cls);
  History history;

  bool accepted = false;
  for (int t = 1; t <= budget; ++t) {
    LearnerDecision dec;
    switch (learner.kind) {
      case LearnerConfig::Kind::kMinimaxFull:
        dec = fullinfo_next(v, adv, history, learner.epsilon);
        break;
      case LearnerConfig::Kind::kScoreDet:
        dec.actions = v.members();
        dec.hypothesis = score_learner_next(v, score_mu);
        break;
      case LearnerConfig::Kind::kBandit:
        dec = bandit_next(bstate, cls, adv, history, learner.epsilon);
        break;
    }
    const int h = dec.deterministic() ? dec.hypothesis
                                      : dec.actions[rng.sample_discrete(dec.strategy)];

    RoundRecord rec;
    rec.round = t;
    rec.hypothesis = h;
    rec.target = c;
    rec.certificate = dec.certificate;

    if (h == c) {
      rec.accepted = true;
      tr.rounds.push_back(rec);
      tr.status = TerminalStatus::kAcceptedExact;
      tr.total_queries = t;
      accepted = true;
      break;
    }
    CEDistribution dist = adv.distribution(cls, h, c, history);
    if (dist.accept) {
      rec.accepted = true;
      tr.rounds.push_back(rec);
      tr.status = TerminalStatus::kAcceptedEarly;
      tr.total_queries = t;
      accepted = true;
      break;
    }
    const int x = rng.sample_support(dist.support);
    rec.counterexample = x;

    if (!bandit_mode) {
      const int y = cls.label(c, x);
      rec.revealed_label = y;
      v = restrict(v, x, y);
      rec.vs_size_after = v.size();
      rec.vs_ldim_after = ldim(v);
    } else {
      const int i = cls.label(h, x);
      rec.repeat = std::find(bstate.xs.begin(), bstate.xs.end(), x) != bstate.xs.end();
      if (rec.repeat) ++tr.repeat_rounds;
      bstate = bandit_update(bstate, cls, x, i, learner.pruning);
      BanditRoundDiag diag;
      diag.prenorm_sum = bstate.prenorm_sum;
      diag.posterior_sum = bstate.posterior_sum;
      diag.true_sequence_mass = bstate.sigma[c];
      diag.branch_excluded_mass = bstate.branch_i_mass;
      diag.support_size = bstate.support_size();
      rec.bandit_diag = diag;
    }
    history.push_back(h);
    tr.rounds.push_back(rec);

    if (target.kind == TargetPolicy::Kind::kAdaptive) {
      if (v.empty())
        throw EmptyConsistentSet("consistent set emptied at round " + std::to_string(t));
      c = target.reselect ? target.reselect(v, rng)
                          : v.members()[rng.uniform_int(v.size())];
    }
  }
  if (!accepted) {
    tr.status = TerminalStatus::kBudgetExhausted;
    tr.total_queries = budget;
  }
  return tr;
}

Transcript run_adaptive_episode(
    const HypothesisClass& cls, const LearnerConfig& learner, const Adversary& adv,
    std::function<int(const VersionSpace&, Rng&)> reselect, FeedbackMode feedback,
    int budget, std::uint64_t seed) {
  TargetPolicy policy = TargetPolicy::adaptive_uniform();
  policy.reselect = std::move(reselect);
  return run_episode(cls, learner, adv, policy, feedback, budget, seed);
}

ValidationReport validate_transcript(const Transcript& tr, const HypothesisClass& cls) {
  ValidationReport report;
  auto fail = [&](int round, const std::string& detail) {
    report.pass = false;
    report.round = round;
    report.detail = detail;
    return report;
  };

  std::vector<int> members(cls.size());
  for (int h = 0; h < cls.size(); ++h) members[h] = h;
  int prev_dim = -2;  // unset
  bool saw_accept = false;

  for (std::size_t q = 0; q < tr.rounds.size(); ++q) {
    const RoundRecord& r = tr.rounds[q];
    if (r.round != static_cast<int>(q) + 1) return fail(r.round, "round indices not sequential");
    if (r.hypothesis < 0 || r.hypothesis >= cls.size())
      return fail(r.round, "hypothesis index out of range");
    if (r.target < 0 || r.target >= cls.size())
      return fail(r.round, "target index out of range");
    if (saw_accept) return fail(r.round, "rounds recorded after acceptance");

    if (r.accepted) {
      saw_accept = true;
      if (r.counterexample != -1)
        return fail(r.round, "accepted round carries a counterexample");
      continue;
    }
    if (r.hypothesis == r.target)
      return fail(r.round, "h equals the target but the round was not accepted");
    const int x = r.counterexample;
    if (x < 0 || x >= cls.domain_size())
      return fail(r.round, "counterexample out of range");
    if (cls.label(r.hypothesis, x) == cls.label(r.target, x))
      return fail(r.round, "counterexample is not a disagreement point");

    if (tr.feedback == FeedbackMode::kFullInfo) {
      if (r.revealed_label != cls.label(r.target, x))
        return fail(r.round, "revealed label does not match the current target");
      // The target must be consistent before the restriction is applied.
      if (std::find(members.begin(), members.end(), r.target) == members.end())
        return fail(r.round, "target fell out of the version space");
      std::vector<int> next;
      for (int h : members)
        if (cls.label(h, x) == r.revealed_label) next.push_back(h);
      members = std::move(next);
      if (r.vs_size_after != static_cast<int>(members.size()))
        return fail(r.round, "recorded version-space size mismatch");
      VersionSpace v(cls, members, {});
      const int d = ldim(v);
      if (r.vs_ldim_after != d) return fail(r.round, "recorded Ldim mismatch");
      if (prev_dim != -2 && d > prev_dim)
        return fail(r.round, "Ldim increased");
      prev_dim = d;
    } else {
      if (r.revealed_label != kNoLabel)
        return fail(r.round, "bandit round carries a revealed label");
    }
  }

  if (saw_accept) {
    if (tr.status == TerminalStatus::kBudgetExhausted)
      return fail(-1, "accepted transcript marked budget_exhausted");
    const RoundRecord& last = tr.rounds.back();
    const bool exact = last.hypothesis == last.target;
    if (exact && tr.status != TerminalStatus::kAcceptedExact)
      return fail(last.round, "exact acceptance with wrong status");
    if (!exact && tr.status != TerminalStatus::kAcceptedEarly)
      return fail(last.round, "early acceptance with wrong status");
    if (tr.total_queries != last.round)
      return fail(last.round, "query count does not match the accepting round");
  } else {
    if (tr.status != TerminalStatus::kBudgetExhausted)
      return fail(-1, "no acceptance recorded but status is not budget_exhausted");
    if (tr.total_queries != static_cast<int>(tr.rounds.size()))
      return fail(-1, "query count does not match the number of rounds");
  }
  report.detail = "PASS";
  return report;
}

}  // namespace eqlab
