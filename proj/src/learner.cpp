// Learning rule implementations.
#include "eqlab/learner.hpp"

#include "eqlab/littlestone.hpp"

namespace eqlab {

LearnerDecision fullinfo_next(const VersionSpace& v, const Adversary& adv,
                              const History& history, double epsilon) {
  LearnerDecision d;
  d.actions = v.members();
  if (v.size() == 1) {
    d.hypothesis = v.members().front();
    return d;
  }
  PayoffMatrix m = fullinfo_payoff_matrix(v, adv, history);
  MinimaxSolution sol = solve_minimax(m, epsilon);
  d.strategy = std::move(sol.strategy);
  d.certificate = sol.value_bound;
  return d;
}

double hypothesis_score(const VersionSpace& v, const std::vector<double>& mu, int h) {
  const HypothesisClass& cls = v.cls();
  LdimCache& cache = ldim_cache_for(cls);
  const Mask members = mask_from_members(v.members(), cls.size());
  const int d = cache.dim(members);
  double score = 0.0;
  for (int x = 0; x < cls.domain_size(); ++x) {
    if (mu[x] <= 0.0) continue;
    Mask sub = mask_and(members, cache.label_mask(x, cls.label(h, x)));
    if (!mask_empty(sub) && cache.dim(sub) == d) score += mu[x];
  }
  return score;
}

int score_learner_next(const VersionSpace& v, const std::vector<double>& mu) {
  int best = v.members().front();
  double best_score = -1.0;
  for (int h : v.members()) {  // ascending, so ties keep the lowest index
    const double s = hypothesis_score(v, mu, h);
    if (s > best_score) {
      best_score = s;
      best = h;
    }
  }
  return best;
}

LearnerDecision bandit_next(const BanditState& state, const HypothesisClass& cls,
                            const Adversary& adv, const History& history,
                            double epsilon) {
  LearnerDecision d;
  d.actions.resize(cls.size());
  for (int h = 0; h < cls.size(); ++h) d.actions[h] = h;
  PayoffMatrix m = bandit_payoff_matrix(cls, state, adv, history);
  MinimaxSolution sol = solve_minimax(m, epsilon);
  d.strategy = std::move(sol.strategy);
  d.certificate = sol.value_bound;
  return d;
}

}  // namespace eqlab
