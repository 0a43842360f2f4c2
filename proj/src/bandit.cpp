// Bandit measure updates, potentials, and the bandit payoff game.
#include "eqlab/bandit.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <unordered_map>

#include "eqlab/littlestone.hpp"

namespace eqlab {

namespace {

constexpr double kClampedPayoff = -64.0;

// Per-group SOA decisions, kappa masses, and the pre-normalization total for
// one hypothetical update (x, i). Shared by the update and the payoff.
struct UpdateWeights {
  std::vector<int> group_soa;   // soa of each group's mask at x; kNoLabel possible
  std::vector<double> kappa;    // kappa[j] for j in 0..k-1
  double prenorm = 0.0;         // sum of nu(s, j) over all s and j != i
};

// Branch factor of the update rule for a sequence whose SOA decision is r,
// extending with label j != i.
double branch_factor(int r, int j, int i, int k, const std::vector<double>& kap) {
  assert(j != i);
  if (r == j) {
    assert(kap[j] > 0.0);
    return 1.0 - static_cast<double>(k - 1) / (static_cast<double>(k) * k * k) +
           kap[i] / (kap[j] * k);
  }
  return 1.0 / (static_cast<double>(k) * k * k);
}

UpdateWeights compute_update_weights(const BanditState& state, LdimCache& cache, int x,
                                     int i) {
  const int k = state.k;
  UpdateWeights w;
  w.group_soa.reserve(state.groups.size());
  w.kappa.assign(k, 0.0);
  for (const auto& g : state.groups) {
    const int r = mask_empty(g.mask) ? kNoLabel : cache.soa(g.mask, x);
    w.group_soa.push_back(r);
    if (r != kNoLabel) w.kappa[r] += g.mass;
  }
  for (std::size_t gi = 0; gi < state.groups.size(); ++gi) {
    const auto& g = state.groups[gi];
    double f_sum = 0.0;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      f_sum += branch_factor(w.group_soa[gi], j, i, k, w.kappa);
    }
    w.prenorm += g.mass * f_sum;
  }
  return w;
}

}  // namespace

double BanditState::total_mass() const {
  double s = 0.0;
  for (const auto& g : groups) s += g.mass;
  return s;
}

double BanditState::support_size() const {
  double s = 0.0;
  for (const auto& g : groups) s += g.count;
  return s;
}

BanditState bandit_init(const HypothesisClass& cls) {
  BanditState state;
  state.k = cls.num_labels();
  state.m = cls.size();
  state.class_uid = cls.uid();
  state.groups.push_back({mask_all(state.m), 1.0, 1.0});
  state.sigma.assign(state.m, 1.0);
  state.seq_mask.assign(state.m, mask_all(state.m));
  return state;
}

int soa_rule(const HypothesisClass& cls, const std::vector<int>& xs,
             const std::vector<int>& s, int x) {
  if (xs.size() != s.size())
    throw LengthMismatch("sequence length " + std::to_string(s.size()) +
                         " vs instance count " + std::to_string(xs.size()));
  LdimCache& cache = ldim_cache_for(cls);
  Mask mask = mask_all(cls.size());
  for (std::size_t idx = 0; idx < xs.size(); ++idx)
    mask = mask_and(mask, cache.label_mask(xs[idx], s[idx]));
  if (mask_empty(mask)) return kNoLabel;
  return cache.soa(mask, x);
}

double kappa(const BanditState& state, const HypothesisClass& cls, int x, int j) {
  assert(cls.uid() == state.class_uid);
  LdimCache& cache = ldim_cache_for(cls);
  double total = 0.0;
  for (const auto& g : state.groups) {
    if (mask_empty(g.mask)) continue;
    if (cache.soa(g.mask, x) == j) total += g.mass;
  }
  return total;
}

BanditState bandit_update(const BanditState& state, const HypothesisClass& cls, int x,
                          int i, const BanditPruning& pruning) {
  assert(cls.uid() == state.class_uid);
  if (x < 0 || x >= cls.domain_size())
    throw Error("counterexample instance " + std::to_string(x) + " out of range");
  if (i < 0 || i >= state.k)
    throw Error("excluded label " + std::to_string(i) + " out of range");
  const int k = state.k;
  LdimCache& cache = ldim_cache_for(cls);
  UpdateWeights w = compute_update_weights(state, cache, x, i);
  if (w.prenorm <= 0.0)
    throw DegenerateNormalizer("update normalizer vanished at t = " +
                               std::to_string(state.t));

  BanditState next;
  next.t = state.t + 1;
  next.k = k;
  next.m = state.m;
  next.class_uid = state.class_uid;
  next.xs = state.xs;
  next.xs.push_back(x);
  next.prenorm_sum = w.prenorm;
  next.branch_i_mass = 0.0;  // the rule's j = i case assigns exactly 0
  next.pruned = state.pruned;

  // Children groups in deterministic order: parent group order, then label.
  std::unordered_map<Mask, std::size_t, MaskHash> index;
  for (std::size_t gi = 0; gi < state.groups.size(); ++gi) {
    const auto& g = state.groups[gi];
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      const double f = branch_factor(w.group_soa[gi], j, i, k, w.kappa);
      const double mass = g.mass * f / w.prenorm;
      Mask child = mask_and(g.mask, cache.label_mask(x, j));
      auto [it, inserted] = index.try_emplace(child, next.groups.size());
      if (inserted) next.groups.push_back({std::move(child), mass, g.count});
      else {
        next.groups[it->second].mass += mass;
        next.groups[it->second].count += g.count;
      }
    }
  }
  next.posterior_sum = next.total_mass();

  // Per-hypothesis sequence tracking. The factor for h's sequence is read off
  // the same rule; a sequence at mass 0 stays at 0.
  next.sigma.assign(state.m, 0.0);
  next.seq_mask.resize(state.m);
  for (int h = 0; h < state.m; ++h) {
    const int j = cls.label(h, x);
    next.seq_mask[h] = mask_and(state.seq_mask[h], cache.label_mask(x, j));
    if (j == i || state.sigma[h] <= 0.0) continue;
    const int r = mask_empty(state.seq_mask[h]) ? kNoLabel
                                                : cache.soa(state.seq_mask[h], x);
    // Positive mass puts h's sequence inside some group with the same mask,
    // so r == j implies kappa[j] > 0 and the factor is well defined.
    next.sigma[h] = state.sigma[h] * branch_factor(r, j, i, k, w.kappa) / w.prenorm;
  }

  if (pruning.enabled) {
    std::vector<BanditState::Group> kept;
    double dropped = 0.0;
    for (auto& g : next.groups) {
      if (g.mass < pruning.threshold) dropped += g.mass;
      else kept.push_back(std::move(g));
    }
    if (dropped > 0.0) {
      next.groups = std::move(kept);
      if (next.groups.empty())
        throw DegenerateNormalizer("pruning removed all mass at t = " +
                                   std::to_string(next.t));
      const double keep_total = next.total_mass();
      for (auto& g : next.groups) g.mass /= keep_total;
      for (double& s : next.sigma) s /= keep_total;
      next.pruned = true;
    }
  }
  return next;
}

double potential(const BanditState& state, const HypothesisClass& cls, int h) {
  assert(cls.uid() == state.class_uid);
  if (state.sigma[h] <= 0.0)
    throw PotentialUndefined("hypothesis " + std::to_string(h) +
                             " has zero sequence mass at t = " + std::to_string(state.t));
  LdimCache& cache = ldim_cache_for(cls);
  const int level = cache.dim(state.seq_mask[h]);
  return 8.0 * std::log(static_cast<double>(state.k)) * level - std::log(state.sigma[h]);
}

namespace {

double pointwise_with_weights(const BanditState& state, LdimCache& cache,
                              const UpdateWeights& w, int c, int x, int jc, int i) {
  const int k = state.k;
  const Mask& mc = state.seq_mask[c];  // nonempty: contains c itself
  const int before = cache.dim(mc);
  const int after = cache.dim(mask_and(mc, cache.label_mask(x, jc)));
  const double level_drop = 8.0 * std::log(static_cast<double>(k)) * (after - before);

  const int r = cache.soa(mc, x);
  double f;
  if (r == jc) {
    if (w.kappa[jc] > 0.0) {
      f = 1.0 - static_cast<double>(k - 1) / (static_cast<double>(k) * k * k) +
          w.kappa[i] / (w.kappa[jc] * k);
    } else if (w.kappa[i] > 0.0) {
      return kClampedPayoff;  // genuinely -infinity; reachable only at mass 0
    } else {
      f = 1.0;  // 0/0 corner: the symmetric convention
    }
  } else {
    f = 1.0 / (static_cast<double>(k) * k * k);
  }
  return level_drop + std::log(w.prenorm) - std::log(f);
}

}  // namespace

double bandit_pointwise_payoff(const BanditState& state, const HypothesisClass& cls,
                               int h, int c, int x) {
  assert(cls.uid() == state.class_uid);
  const int i = cls.label(h, x);
  const int jc = cls.label(c, x);
  assert(i != jc && "counterexamples must lie in the disagreement set");
  LdimCache& cache = ldim_cache_for(cls);
  UpdateWeights w = compute_update_weights(state, cache, x, i);
  return pointwise_with_weights(state, cache, w, c, x, jc, i);
}

PayoffMatrix bandit_payoff_matrix(const HypothesisClass& cls, const BanditState& state,
                                  const Adversary& adv, const History& history) {
  if (!adv.exact())
    throw AdversaryNotExact("payoff construction needs exact distributions, adversary " +
                            adv.name() + " is sampling-only");
  const int m = cls.size();
  LdimCache& cache = ldim_cache_for(cls);
  // The weight computation depends only on (x, i); memoized across entries.
  std::map<std::pair<int, int>, UpdateWeights> weights;
  PayoffMatrix out(m);
  for (int h = 0; h < m; ++h) {
    for (int c = 0; c < m; ++c) {
      if (h == c) {
        out.at(h, c) = -1.0;
        continue;
      }
      CEDistribution dist = adv.distribution(cls, h, c, history);
      if (dist.accept) {
        // Acceptance ends the episode; treated like the diagonal. Lowering an
        // entry cannot raise the certified best-response value.
        out.at(h, c) = -1.0;
        continue;
      }
      double e = 0.0;
      for (const auto& [x, px] : dist.support) {
        const int i = cls.label(h, x);
        auto [it, inserted] = weights.try_emplace({x, i});
        if (inserted) it->second = compute_update_weights(state, cache, x, i);
        e += px * pointwise_with_weights(state, cache, it->second, c, x,
                                         cls.label(c, x), i);
      }
      out.at(h, c) = e;
    }
  }
  return out;
}

}  // namespace eqlab
