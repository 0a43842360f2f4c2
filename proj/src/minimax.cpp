// Payoff matrix construction and zero-sum game solving.
#include "eqlab/minimax.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "eqlab/littlestone.hpp"

namespace eqlab {

PayoffMatrix fullinfo_payoff_matrix(const VersionSpace& v, const Adversary& adv,
                                    const History& history) {
  if (!adv.exact())
    throw AdversaryNotExact("payoff construction needs exact distributions, adversary " +
                            adv.name() + " is sampling-only");
  const HypothesisClass& cls = v.cls();
  LdimCache& cache = ldim_cache_for(cls);
  const Mask members = mask_from_members(v.members(), cls.size());
  const int d = cache.dim(members);
  const int dim = v.size();
  PayoffMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;  // diagonal stays 0
      const int h = v.members()[i];
      const int c = v.members()[j];
      CEDistribution dist = adv.distribution(cls, h, c, history);
      if (dist.accept) continue;  // empty support sums to 0
      double p = 0.0;
      for (const auto& [x, px] : dist.support) {
        Mask sub = mask_and(members, cache.label_mask(x, cls.label(c, x)));
        if (!mask_empty(sub) && cache.dim(sub) == d) p += px;
      }
      m.at(i, j) = p;
    }
  }
  return m;
}

double best_response_value(const PayoffMatrix& m, const MixedStrategy& p) {
  double best = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < m.dim; ++c) {
    double v = 0.0;
    for (int h = 0; h < m.dim; ++h) v += p[h] * m.at(h, c);
    best = std::max(best, v);
  }
  return best;
}

namespace {

// Primal simplex on the standard reduction for the minimizing row player:
// shift entries positive (A = M + s), then maximize 1^T y subject to
// A^T y <= 1, y >= 0; the minimax strategy is p = y / 1^T y. Returns false if
// the iteration cap is hit (caller falls back to Hedge).
bool simplex_row_strategy(const PayoffMatrix& m, MixedStrategy& p_out) {
  const int dim = m.dim;
  double lo = m.entries[0];
  for (double e : m.entries) lo = std::min(lo, e);
  const double shift = 1.0 - lo;  // all shifted entries >= 1

  // Tableau rows 0..dim-1: constraints (one per column player action);
  // row dim: objective. Columns 0..dim-1: y variables; dim..2dim-1: slacks;
  // 2dim: right-hand side.
  const int cols = 2 * dim + 1;
  std::vector<std::vector<double>> t(dim + 1, std::vector<double>(cols, 0.0));
  for (int c = 0; c < dim; ++c) {
    for (int h = 0; h < dim; ++h) t[c][h] = m.at(h, c) + shift;
    t[c][dim + c] = 1.0;
    t[c][2 * dim] = 1.0;
  }
  for (int h = 0; h < dim; ++h) t[dim][h] = -1.0;

  std::vector<int> basis(dim);
  for (int c = 0; c < dim; ++c) basis[c] = dim + c;

  const double tol = 1e-11;
  const long cap = 2000L * dim + 10000;
  const long bland_after = 50L * dim + 200;
  for (long iter = 0; iter < cap; ++iter) {
    // Entering column: Dantzig pricing, then Bland once cycling is plausible.
    int enter = -1;
    if (iter < bland_after) {
      double best = -tol;
      for (int j = 0; j < 2 * dim; ++j)
        if (t[dim][j] < best) {
          best = t[dim][j];
          enter = j;
        }
    } else {
      for (int j = 0; j < 2 * dim; ++j)
        if (t[dim][j] < -tol) {
          enter = j;
          break;
        }
    }
    if (enter < 0) {
      // Optimal: read y off the basis.
      std::vector<double> y(dim, 0.0);
      for (int r = 0; r < dim; ++r)
        if (basis[r] < dim) y[basis[r]] = t[r][2 * dim];
      double total = 0.0;
      for (double v : y) total += v;
      if (total <= 0.0) return false;  // cannot happen with shifted entries
      p_out.assign(dim, 0.0);
      for (int h = 0; h < dim; ++h) p_out[h] = std::max(0.0, y[h] / total);
      double norm = 0.0;
      for (double v : p_out) norm += v;
      for (double& v : p_out) v /= norm;
      return true;
    }
    // Ratio test; ties to the lowest row index.
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < dim; ++r) {
      if (t[r][enter] <= tol) continue;
      double ratio = t[r][2 * dim] / t[r][enter];
      if (leave < 0 || ratio < best_ratio - 1e-15) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false;  // unbounded; impossible for this reduction
    const double pivot = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= pivot;
    for (int r = 0; r <= dim; ++r) {
      if (r == leave) continue;
      const double f = t[r][enter];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) t[r][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return false;
}

// Hedge self-play for the row player against exact column best responses.
// Anytime-averaged strategies converge to the game value; stops when the
// duality gap drops below epsilon or the iteration cap is reached.
void hedge_row_strategy(const PayoffMatrix& m, double epsilon, MixedStrategy& p_out) {
  const int dim = m.dim;
  double lo = m.entries[0], hi = m.entries[0];
  for (double e : m.entries) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  const double range = std::max(hi - lo, 1e-12);

  std::vector<double> cum_loss(dim, 0.0);
  std::vector<double> p_sum(dim, 0.0);
  std::vector<double> q_counts(dim, 0.0);
  std::vector<double> p(dim);
  const long cap = 4'000'000;
  for (long it = 1; it <= cap; ++it) {
    const double eta = std::sqrt(8.0 * std::log(std::max(dim, 2)) / it) / range;
    double mn = *std::min_element(cum_loss.begin(), cum_loss.end());
    double z = 0.0;
    for (int h = 0; h < dim; ++h) {
      p[h] = std::exp(-eta * (cum_loss[h] - mn));
      z += p[h];
    }
    for (int h = 0; h < dim; ++h) p[h] /= z;
    // Column best response against the current p.
    int bc = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < dim; ++c) {
      double v = 0.0;
      for (int h = 0; h < dim; ++h) v += p[h] * m.at(h, c);
      if (v > bv) {
        bv = v;
        bc = c;
      }
    }
    for (int h = 0; h < dim; ++h) {
      cum_loss[h] += m.at(h, bc);
      p_sum[h] += p[h];
    }
    q_counts[bc] += 1.0;
    if ((it & 127) == 0 || it == cap) {
      MixedStrategy avg(dim);
      for (int h = 0; h < dim; ++h) avg[h] = p_sum[h] / it;
      // Lower bound on the value from the column player's empirical mix.
      double lower = std::numeric_limits<double>::infinity();
      for (int h = 0; h < dim; ++h) {
        double v = 0.0;
        for (int c = 0; c < dim; ++c) v += m.at(h, c) * (q_counts[c] / it);
        lower = std::min(lower, v);
      }
      const double upper = best_response_value(m, avg);
      if (upper - lower <= epsilon) {
        p_out = std::move(avg);
        return;
      }
    }
  }
  p_out.assign(dim, 0.0);
  for (int h = 0; h < dim; ++h) p_out[h] = p_sum[h] / cap;
}

}  // namespace

MinimaxSolution solve_minimax(const PayoffMatrix& m, double epsilon) {
  if (m.dim <= 0 || m.entries.size() != static_cast<std::size_t>(m.dim) * m.dim)
    throw NonSquare("matrix is not square: dim " + std::to_string(m.dim) + ", " +
                    std::to_string(m.entries.size()) + " entries");
  for (double e : m.entries)
    if (!std::isfinite(e)) throw NonFinite("matrix has a non-finite entry");
  MinimaxSolution sol;
  if (m.dim == 1) {
    sol.strategy = {1.0};
    sol.value_bound = m.at(0, 0);
    return sol;
  }
  bool solved = false;
  if (m.dim <= 64) solved = simplex_row_strategy(m, sol.strategy);
  if (!solved) hedge_row_strategy(m, epsilon, sol.strategy);
  sol.value_bound = best_response_value(m, sol.strategy);
  return sol;
}

}  // namespace eqlab
