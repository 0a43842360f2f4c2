// Tests for the three learning rules.
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "eqlab/adversary.hpp"
#include "eqlab/concept.hpp"
#include "eqlab/errors.hpp"
#include "eqlab/learner.hpp"
#include "eqlab/littlestone.hpp"
#include "eqlab/protocol.hpp"
#include "eqlab/rng.hpp"

using namespace eqlab;

namespace {

const History kNoHistory;

void check_strategy_over(const LearnerDecision& dec, int expect_actions) {
  REQUIRE_FALSE(dec.deterministic());
  CHECK(int(dec.actions.size()) == expect_actions);
  CHECK(dec.strategy.size() == dec.actions.size());
  double sum = 0.0;
  for (double p : dec.strategy) {
    CHECK(p >= -1e-12);
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

}  // namespace

TEST_CASE("fullinfo_next submits the single member deterministically") {
  auto cls = gen_singletons(4);
  VersionSpace v(cls, {2}, {});
  auto uni = RandomCEAdversary::uniform(4);
  auto dec = fullinfo_next(v, uni, kNoHistory, 1e-9);
  CHECK(dec.deterministic());
  CHECK(dec.hypothesis == 2);
  CHECK(dec.certificate == 0.0);
}

TEST_CASE("fullinfo_next on a two-singleton space sees the zero game") {
  auto cls = gen_singletons(2);
  auto uni = RandomCEAdversary::uniform(2);
  auto dec = fullinfo_next(full_space(cls), uni, kNoHistory, 1e-9);
  check_strategy_over(dec, 2);
  CHECK(dec.certificate == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fullinfo certificates stay below one half on random instances") {
  int checked = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Rng rng(derive_seed(12012, trial));
    int n = 3 + rng.uniform_int(3);
    int k = 2 + rng.uniform_int(2);
    long cube = 1;
    for (int j = 0; j < n; ++j) cube *= k;
    int m = 2 + rng.uniform_int(int(std::min<long>(9, cube - 1)));
    auto cls = gen_random_class(n, k, m, rng.uniform_int(1 << 30));
    auto uni = RandomCEAdversary::uniform(n);
    LdimTreeAdversary tree(cls);
    const Adversary* adv = (trial % 2 == 0) ? static_cast<const Adversary*>(&uni)
                                            : static_cast<const Adversary*>(&tree);
    auto dec = fullinfo_next(full_space(cls), *adv, kNoHistory, 1e-9);
    CHECK(dec.certificate <= 0.5 + 1e-9);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("hypothesis_score is the exact dimension-retention probability") {
  auto cls = gen_singletons(5);
  auto v = full_space(cls);
  std::vector<double> mu(5, 0.2);
  // For singleton h, label h(x) keeps dim 1 at the four instances x != h and
  // collapses at x = h, so every score is 4/5.
  for (int h = 0; h < 5; ++h)
    CHECK(hypothesis_score(v, mu, h) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("score_learner_next breaks ties at the lowest index") {
  auto cls = gen_singletons(5);
  std::vector<double> mu(5, 0.2);
  CHECK(score_learner_next(full_space(cls), mu) == 0);
  VersionSpace single(cls, {3}, {});
  CHECK(score_learner_next(single, mu) == 3);
}

TEST_CASE("score argmax beats or ties every alternative") {
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    Rng rng(derive_seed(13013, trial));
    int n = 3 + rng.uniform_int(3);
    int k = 2 + rng.uniform_int(2);
    long cube = 1;
    for (int j = 0; j < n; ++j) cube *= k;
    int m = 2 + rng.uniform_int(int(std::min<long>(9, cube - 1)));
    auto cls = gen_random_class(n, k, m, rng.uniform_int(1 << 30));
    std::vector<double> mu(n);
    double z = 0.0;
    for (double& w : mu) {
      w = 0.1 + rng.uniform01();
      z += w;
    }
    for (double& w : mu) w /= z;
    auto v = full_space(cls);
    int h_star = score_learner_next(v, mu);
    double best = hypothesis_score(v, mu, h_star);
    for (int h : v.members()) {
      double s = hypothesis_score(v, mu, h);
      CHECK(best >= s - 1e-12);
      if (s == best) {
        // Ties break to the lowest index, so the first maximizer is h_star.
        CHECK(h_star == h);
        break;
      }
    }
  }
}

TEST_CASE("score submission caps every rival's conditional retention at one half") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(14014, trial));
    int n = 3 + rng.uniform_int(3);
    int k = 2 + rng.uniform_int(2);
    long cube = 1;
    for (int j = 0; j < n; ++j) cube *= k;
    int m = 2 + rng.uniform_int(int(std::min<long>(9, cube - 1)));
    auto cls = gen_random_class(n, k, m, rng.uniform_int(1 << 30));
    std::vector<double> mu(n, 1.0 / n);
    auto v = full_space(cls);
    int d = ldim(v);
    int h_star = score_learner_next(v, mu);
    for (int c : v.members()) {
      if (c == h_star) continue;
      double retain = 0.0, mass = 0.0;
      for (int x = 0; x < n; ++x) {
        if (cls.label(h_star, x) == cls.label(c, x)) continue;
        mass += mu[x];
        if (ldim(restrict(v, x, cls.label(c, x))) == d) retain += mu[x];
      }
      REQUIRE(mass > 0.0);
      CHECK(retain / mass <= 0.5 + 1e-12);
    }
  }
}

TEST_CASE("bandit_next returns a valid strategy with a certified bound") {
  auto cls = gen_linear_functionals(3, 1);
  auto state = bandit_init(cls);
  auto uni = RandomCEAdversary::uniform(3);
  auto dec = bandit_next(state, cls, uni, kNoHistory, 1e-9);
  check_strategy_over(dec, cls.size());
  CHECK(dec.certificate <= -1.0 / (12.0 * 3.0) + 1e-9);
}

TEST_CASE("bandit certificates hold along episode trajectories") {
  auto cls = gen_linear_functionals(3, 2);
  LearnerConfig learner;
  learner.kind = LearnerConfig::Kind::kBandit;
  auto adv = RandomCEAdversary::uniform(cls.domain_size());
  const double bound = -1.0 / 36.0 + 1e-6;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    auto tr = run_episode(cls, learner, adv, TargetPolicy::fixed(int(trial % 8)),
                          FeedbackMode::kBandit, 100000, derive_seed(15015, trial));
    REQUIRE(tr.status != TerminalStatus::kBudgetExhausted);
    for (auto& round : tr.rounds) CHECK(round.certificate <= bound);
  }
}

TEST_CASE("binary bandit feedback tracks full information within 2x") {
  auto cls = gen_singletons(8);
  auto adv = RandomCEAdversary::uniform(8);
  LearnerConfig fullinfo;
  fullinfo.kind = LearnerConfig::Kind::kMinimaxFull;
  LearnerConfig bandit;
  bandit.kind = LearnerConfig::Kind::kBandit;
  const int trials = 120;
  double sum_full = 0.0, sum_bandit = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    int target = trial % 8;
    auto a = run_episode(cls, fullinfo, adv, TargetPolicy::fixed(target),
                         FeedbackMode::kFullInfo, 100000, derive_seed(16016, trial));
    auto b = run_episode(cls, bandit, adv, TargetPolicy::fixed(target),
                         FeedbackMode::kBandit, 100000, derive_seed(16016, trial));
    REQUIRE(a.status == TerminalStatus::kAcceptedExact);
    REQUIRE(b.status != TerminalStatus::kBudgetExhausted);
    sum_full += a.total_queries;
    sum_bandit += b.total_queries;
  }
  double mean_full = sum_full / trials;
  double mean_bandit = sum_bandit / trials;
  CHECK(mean_bandit <= 2.0 * mean_full);
  CHECK(mean_bandit >= 0.5 * mean_full);
}
