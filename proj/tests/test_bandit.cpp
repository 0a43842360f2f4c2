// Tests for the bandit state against a per-sequence straight-line oracle.
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "eqlab/bandit.hpp"
#include "eqlab/concept.hpp"
#include "eqlab/errors.hpp"
#include "eqlab/littlestone.hpp"
#include "eqlab/rng.hpp"

using namespace eqlab;

namespace {

// Plain reimplementation of the update rule keeping one entry per label
// sequence, with its own definition-chasing SOA computation.
struct SeqOracle {
  std::map<std::vector<int>, double> mass;
  std::vector<int> xs;
  double prenorm = 1.0;

  explicit SeqOracle() { mass[{}] = 1.0; }

  static std::vector<int> consistent_members(const HypothesisClass& cls,
                                             const std::vector<int>& xs,
                                             const std::vector<int>& s) {
    std::vector<int> out;
    for (int h = 0; h < cls.size(); ++h) {
      bool ok = true;
      for (std::size_t i = 0; i < xs.size() && ok; ++i)
        ok = cls.label(h, xs[i]) == s[i];
      if (ok) out.push_back(h);
    }
    return out;
  }

  static int soa(const HypothesisClass& cls, const std::vector<int>& xs,
                 const std::vector<int>& s, int x) {
    auto members = consistent_members(cls, xs, s);
    if (members.empty()) return kNoLabel;
    VersionSpace v(cls, members, {});
    int d = ldim(v);
    int found = kNoLabel, count = 0;
    for (int y = 0; y < cls.num_labels(); ++y)
      if (ldim(restrict(v, x, y)) == d) {
        found = y;
        ++count;
      }
    return count == 1 ? found : kNoLabel;
  }

  double kappa_at(const HypothesisClass& cls, int x, int j) const {
    double total = 0.0;
    for (auto& [s, m] : mass)
      if (soa(cls, xs, s, x) == j) total += m;
    return total;
  }

  void update(const HypothesisClass& cls, int x, int i) {
    const int k = cls.num_labels();
    const double k3 = double(k) * k * k;
    std::vector<double> kap(k, 0.0);
    for (int j = 0; j < k; ++j) kap[j] = kappa_at(cls, x, j);
    std::map<std::vector<int>, double> next;
    double total = 0.0;
    for (auto& [s, m] : mass) {
      int r = soa(cls, xs, s, x);
      for (int j = 0; j < k; ++j) {
        double nu;
        if (j == i)
          nu = 0.0;
        else if (r == j)
          nu = m * (1.0 - (k - 1) / k3 + kap[i] / (kap[j] * k));
        else
          nu = m / k3;
        if (nu > 0.0) {
          auto ext = s;
          ext.push_back(j);
          next[ext] += nu;
          total += nu;
        }
      }
    }
    prenorm = total;
    for (auto& [s, m] : next) m /= total;
    mass = std::move(next);
    xs.push_back(x);
  }

  double seq_mass(const HypothesisClass& cls, int h) const {
    std::vector<int> s;
    for (int x : xs) s.push_back(cls.label(h, x));
    auto it = mass.find(s);
    return it == mass.end() ? 0.0 : it->second;
  }

  double total_mass() const {
    double t = 0.0;
    for (auto& [s, m] : mass) t += m;
    return t;
  }
};

void compare_with_oracle(const BanditState& state, const SeqOracle& oracle,
                         const HypothesisClass& cls) {
  CHECK(state.t == int(oracle.xs.size()));
  CHECK(state.xs == oracle.xs);
  CHECK(state.total_mass() == doctest::Approx(oracle.total_mass()).epsilon(1e-10));
  CHECK(state.support_size() == doctest::Approx(double(oracle.mass.size())));
  for (int h = 0; h < cls.size(); ++h)
    CHECK(state.sigma[h] == doctest::Approx(oracle.seq_mass(cls, h)).epsilon(1e-10));
  for (int x = 0; x < cls.domain_size(); ++x)
    for (int j = 0; j < cls.num_labels(); ++j)
      CHECK(kappa(state, cls, x, j) ==
            doctest::Approx(oracle.kappa_at(cls, x, j)).epsilon(1e-10));
}

}  // namespace

TEST_CASE("bandit_init is the unit mass on the empty sequence") {
  auto cls = gen_linear_functionals(3, 2);
  auto state = bandit_init(cls);
  CHECK(state.t == 0);
  CHECK(state.k == 3);
  CHECK(state.m == 8);
  CHECK(state.total_mass() == doctest::Approx(1.0));
  CHECK(state.support_size() == doctest::Approx(1.0));
  for (int h = 0; h < 8; ++h) CHECK(state.sigma[h] == 1.0);
  // Phi_0(h) = 8 ln k * Ldim(H) for every h.
  double expect = 8.0 * std::log(3.0) * 2.0;
  for (int h = 0; h < 8; ++h)
    CHECK(potential(state, cls, h) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("soa_rule delegates to soa_label at t = 0 and flags inconsistency") {
  auto cls = gen_linear_functionals(3, 1);
  for (int x = 0; x < 3; ++x)
    CHECK(soa_rule(cls, {}, {}, x) == soa_label(full_space(cls), x));
  // Sequence [0] at x=1: no member labels x=1 with 0, so the rule is NONE.
  CHECK(soa_rule(cls, {1}, {0}, 2) == kNoLabel);
  CHECK_THROWS_AS(soa_rule(cls, {0, 1}, {0}, 2), LengthMismatch);
}

TEST_CASE("soa_rule matches definition chasing on linear(3,1)") {
  auto cls = gen_linear_functionals(3, 1);
  std::vector<std::vector<int>> xs_cases = {{}, {0}, {1}, {2}, {0, 1}, {1, 2}, {2, 0}};
  for (auto& xs : xs_cases) {
    std::vector<int> s(xs.size(), 0);
    // Enumerate all label sequences of this length.
    int total = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      int rem = code;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        s[i] = rem % 3;
        rem /= 3;
      }
      for (int x = 0; x < 3; ++x)
        CHECK(soa_rule(cls, xs, s, x) == SeqOracle::soa(cls, xs, s, x));
    }
  }
}

TEST_CASE("kappa at t = 0 is the indicator of the SOA label") {
  auto cls = gen_linear_functionals(3, 2);
  auto state = bandit_init(cls);
  for (int x = 0; x < cls.domain_size(); ++x) {
    int y = soa_label(full_space(cls), x);
    double sum = 0.0;
    for (int j = 0; j < 3; ++j) {
      double kj = kappa(state, cls, x, j);
      CHECK(kj == doctest::Approx(y == j ? 1.0 : 0.0));
      sum += kj;
    }
    CHECK(sum <= 1.0 + 1e-12);
  }
}

TEST_CASE("bandit_update matches the per-sequence oracle on linear(3,1)") {
  auto cls = gen_linear_functionals(3, 1);
  auto state = bandit_init(cls);
  SeqOracle oracle;
  std::vector<std::pair<int, int>> steps = {{1, 1}, {2, 0}, {0, 2}, {1, 0}};
  for (auto [x, i] : steps) {
    state = bandit_update(state, cls, x, i);
    oracle.update(cls, x, i);
    compare_with_oracle(state, oracle, cls);
    CHECK(state.prenorm_sum == doctest::Approx(oracle.prenorm).epsilon(1e-12));
    CHECK(state.prenorm_sum <= 1.0 + 1e-12);
    CHECK(state.posterior_sum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(state.branch_i_mass == 0.0);
  }
}

TEST_CASE("bandit_update matches the oracle on a random class") {
  auto cls = gen_random_class(4, 3, 7, 31);
  auto state = bandit_init(cls);
  SeqOracle oracle;
  Rng rng(55);
  for (int step = 0; step < 3; ++step) {
    int x = rng.uniform_int(4);
    int i = rng.uniform_int(3);
    state = bandit_update(state, cls, x, i, {});
    oracle.update(cls, x, i);
    compare_with_oracle(state, oracle, cls);
    CHECK(state.support_size() <= std::pow(2.0, state.t) + 1e-9);
  }
}

TEST_CASE("the excluded branch keeps zero mass and support respects (k-1)^t") {
  auto cls = gen_linear_functionals(3, 2);
  auto state = bandit_init(cls);
  Rng rng(77);
  for (int step = 1; step <= 5; ++step) {
    int x = rng.uniform_int(cls.domain_size());
    int i = rng.uniform_int(3);
    state = bandit_update(state, cls, x, i);
    CHECK(state.branch_i_mass == 0.0);
    CHECK(state.support_size() <= std::pow(2.0, step) + 1e-9);
    // A hypothesis whose own label at x was the excluded i has sticky zero mass.
    for (int h = 0; h < cls.size(); ++h)
      if (cls.label(h, x) == i) CHECK(state.sigma[h] == 0.0);
    CHECK(state.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("potential follows the formula and equalizes shared sequences") {
  auto cls = gen_linear_functionals(3, 1);
  auto state = bandit_init(cls);
  // Both members share label 0 at x=0, so one update there keeps their
  // sequences identical.
  state = bandit_update(state, cls, 0, 2);
  REQUIRE(cls.label(0, 0) == cls.label(1, 0));
  CHECK(potential(state, cls, 0) == doctest::Approx(potential(state, cls, 1)));

  SeqOracle oracle;
  oracle.update(cls, 0, 2);
  for (int h = 0; h < cls.size(); ++h) {
    auto members = SeqOracle::consistent_members(cls, oracle.xs,
                                                 {cls.label(h, 0)});
    VersionSpace v(cls, members, {});
    double expect = 8.0 * std::log(3.0) * ldim(v) - std::log(oracle.seq_mass(cls, h));
    CHECK(potential(state, cls, h) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("potential throws once a sequence has been zeroed") {
  auto cls = gen_linear_functionals(3, 1);
  auto state = bandit_init(cls);
  // Excluding label 1 at x=1 zeroes the sequence of the member labeling 1 there.
  state = bandit_update(state, cls, 1, 1);
  int victim = cls.label(0, 1) == 1 ? 0 : 1;
  REQUIRE(cls.label(victim, 1) == 1);
  CHECK(state.sigma[victim] == 0.0);
  CHECK_THROWS_AS(potential(state, cls, victim), PotentialUndefined);
}

TEST_CASE("pointwise payoff matches the straight-line formula at t = 0") {
  auto cls = gen_linear_functionals(3, 1);
  auto state = bandit_init(cls);
  const double ln3 = std::log(3.0);
  const int k = 3;
  const double k3 = 27.0;
  int d = ldim(full_space(cls));
  for (int h = 0; h < cls.size(); ++h)
    for (int c = 0; c < cls.size(); ++c) {
      if (h == c) continue;
      for (int x : disagreement_set(cls, h, c)) {
        int i = cls.label(h, x);
        int cy = cls.label(c, x);
        int r = soa_label(full_space(cls), x);
        // Branch factor of c's (single, unit-mass) sequence. Since r = i would
        // contradict r = c(x) != i, the kappa ratio is always 0 here.
        double kap_i = (r == i) ? 1.0 : 0.0;
        double branch = (r == cy) ? 1.0 - double(k - 1) / k3 : 1.0 / k3;
        // Prenormalization total over the single sequence.
        double prenorm = 0.0;
        for (int j = 0; j < k; ++j) {
          if (j == i) continue;
          prenorm += (r == j) ? 1.0 - double(k - 1) / k3 + kap_i / (1.0 * k)
                              : 1.0 / k3;
        }
        VersionSpace next(cls, SeqOracle::consistent_members(cls, {x}, {cy}), {});
        double lx = ldim(next);
        double expect = 8.0 * ln3 * (lx - d) + std::log(prenorm) - std::log(branch);
        CHECK(bandit_pointwise_payoff(state, cls, h, c, x) ==
              doctest::Approx(expect).epsilon(1e-10));
      }
    }
}

TEST_CASE("fresh-instance pairwise payoff sums stay under -1/(6k)") {
  auto cls = gen_linear_functionals(3, 1);
  const double bound = -1.0 / (6.0 * 3.0) + 1e-9;
  auto state = bandit_init(cls);
  Rng rng(99);
  for (int t = 0; t < 3; ++t) {
    for (int h = 0; h < cls.size(); ++h)
      for (int c = h + 1; c < cls.size(); ++c)
        for (int x : disagreement_set(cls, h, c)) {
          bool fresh = true;
          for (int seen : state.xs) fresh &= seen != x;
          if (!fresh) continue;
          double sum = bandit_pointwise_payoff(state, cls, h, c, x) +
                       bandit_pointwise_payoff(state, cls, c, h, x);
          CHECK(sum <= bound);
        }
    int x = rng.uniform_int(3);
    int i = rng.uniform_int(3);
    state = bandit_update(state, cls, x, i);
  }
}

TEST_CASE("bandit payoff matrix has diagonal -1 and matches expectations") {
  auto cls = gen_linear_functionals(3, 1);
  auto state = bandit_init(cls);
  auto adv = RandomCEAdversary::uniform(3);
  auto m = bandit_payoff_matrix(cls, state, adv, {});
  REQUIRE(m.dim == cls.size());
  for (int h = 0; h < m.dim; ++h) CHECK(m.at(h, h) == -1.0);
  for (int h = 0; h < m.dim; ++h)
    for (int c = 0; c < m.dim; ++c) {
      if (h == c) continue;
      auto dist = adv.distribution(cls, h, c, {});
      double expect = 0.0;
      for (auto& [x, p] : dist.support)
        expect += p * bandit_pointwise_payoff(state, cls, h, c, x);
      CHECK(m.at(h, c) == doctest::Approx(expect).epsilon(1e-12));
      CHECK(std::isfinite(m.at(h, c)));
    }
}

TEST_CASE("the zero-mass infinite corner clamps to -64") {
  auto cls = gen_linear_functionals(3, 1);
  auto state = bandit_init(cls);
  // Zeroing label 2 at x=1 kills row 1's sequence; its SOA at x=2 then
  // predicts exactly its own label with zero kappa mass behind it.
  state = bandit_update(state, cls, 1, 2);
  REQUIRE(state.sigma[1] == 0.0);
  int h = 0, c = 1, x = 2;
  REQUIRE(cls.label(h, x) != cls.label(c, x));
  REQUIRE(kappa(state, cls, x, cls.label(c, x)) == 0.0);
  REQUIRE(kappa(state, cls, x, cls.label(h, x)) > 0.0);
  CHECK(bandit_pointwise_payoff(state, cls, h, c, x) == -64.0);
}

TEST_CASE("updates reject mismatched inputs and honor pruning") {
  auto cls = gen_linear_functionals(3, 2);
  auto state = bandit_init(cls);
  CHECK_THROWS_AS(bandit_update(state, cls, 99, 0), Error);
  CHECK_THROWS_AS(bandit_update(state, cls, 0, 99), Error);

  BanditPruning aggressive;
  aggressive.enabled = true;
  aggressive.threshold = 0.2;
  auto pruned = bandit_update(state, cls, 0, 1, aggressive);
  pruned = bandit_update(pruned, cls, 4, 2, aggressive);
  CHECK(pruned.pruned);
  CHECK(pruned.total_mass() == doctest::Approx(1.0).epsilon(1e-10));

  auto clean = bandit_update(state, cls, 0, 1);
  clean = bandit_update(clean, cls, 4, 2);
  CHECK_FALSE(clean.pruned);
  CHECK(pruned.support_size() <= clean.support_size());
}
