// Copyright 2026 The kbeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Solution concepts two ways: checked directly from their definitions, and
// through the knowledge-based characterizations (a standard protocol
// implementing an equilibrium program in a suitable context).

#ifndef KBEQ_SOLUTIONS_HPP
#define KBEQ_SOLUTIONS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kbeq/epistemic.hpp"
#include "kbeq/lp.hpp"

namespace kbeq {

// Nash ---------------------------------------------------------------------

/// Payoff to player i of each of i's pure strategies against the others'
/// mixed strategies.
template <OrderedField F>
std::vector<F> pure_payoffs(const NormalFormGame& g, const MixedProfile<F>& s, std::size_t i) {
  std::vector<F> out(g.num_strategies(i), F(Rational(0)));
  for (std::size_t k = 0; k < g.num_profiles(); ++k) {
    PureProfile p = g.profile_at(k);
    F w(Rational(1));
    for (std::size_t j = 0; j < p.size() && !w.is_zero(); ++j)
      if (j != i) w = w * s[j][p[j]];
    if (!w.is_zero()) out[p[i]] = out[p[i]] + w * F(g.payoff(k)[i]);
  }
  return out;
}

/// Every pure strategy in each player's support is a best response.
template <OrderedField F>
bool is_nash(const NormalFormGame& g, const MixedProfile<F>& s) {
  check_mixed_profile(g, s);
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    auto v = pure_payoffs(g, s, i);
    F best = *std::max_element(v.begin(), v.end());
    for (std::size_t a = 0; a < v.size(); ++a)
      if (!s[i][a].is_zero() && v[a] != best) return false;
  }
  return true;
}

template <OrderedField F>
Verdict nash_via_kb(const NormalFormGame& g, const MixedProfile<F>& s) {
  auto ctx = Context<F>::normal_form_common(g, prior_from_mixed(g, s));
  return implements(standard_protocol(ctx), eqnf(g), ctx);
}

namespace detail {

/// Unique solution of a square system, or nullopt if it is singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= a[c][c];
  return b;
}

inline std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t k = 0; k < n; ++k)
        if (pick[k]) s.push_back(k);
      out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

}  // namespace detail

struct NashEnumeration {
  std::vector<MixedProfile<Rational>> equilibria;
  /// Some support pair carries a continuum of equilibria; one representative
  /// per such pair is listed.
  bool degenerate = false;
};

/// Support enumeration for two-player games with exact arithmetic.
inline NashEnumeration enumerate_nash_2p(const NormalFormGame& g) {
  if (g.num_players() != 2) throw Error("enumerate_nash_2p needs a two-player game");
  const std::size_t m = g.num_strategies(0), n = g.num_strategies(1);
  auto u = [&](std::size_t i, std::size_t a, std::size_t b) -> const Rational& {
    std::size_t p[2] = {a, b};
    return g.payoff(std::span<const std::size_t>(p, 2))[i];
  };
  NashEnumeration out;
  auto add = [&](MixedProfile<Rational> s) {
    if (std::find(out.equilibria.begin(), out.equilibria.end(), s) == out.equilibria.end())
      out.equilibria.push_back(std::move(s));
  };

  for (const auto& I : detail::nonempty_subsets(m)) {
    for (const auto& J : detail::nonempty_subsets(n)) {
      // Unknowns: x over I, y over J, then v (row value) and w (column value).
      const std::size_t N = I.size() + J.size() + 2;
      const std::size_t iv = N - 2, iw = N - 1;
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (std::size_t r : I) {  // row r indifferent: sum_j y_j A(r,j) = v
        std::vector<Rational> row(N);
        for (std::size_t q = 0; q < J.size(); ++q) row[I.size() + q] = u(0, r, J[q]);
        row[iv] = Rational(-1);
        a.push_back(std::move(row));
        b.emplace_back(0);
      }
      for (std::size_t c : J) {  // column c indifferent: sum_i x_i B(i,c) = w
        std::vector<Rational> row(N);
        for (std::size_t q = 0; q < I.size(); ++q) row[q] = u(1, I[q], c);
        row[iw] = Rational(-1);
        a.push_back(std::move(row));
        b.emplace_back(0);
      }
      std::vector<Rational> sx(N), sy(N);
      for (std::size_t q = 0; q < I.size(); ++q) sx[q] = Rational(1);
      for (std::size_t q = 0; q < J.size(); ++q) sy[I.size() + q] = Rational(1);
      a.push_back(sx);
      b.emplace_back(1);
      a.push_back(sy);
      b.emplace_back(1);

      auto to_profile = [&](const std::vector<Rational>& z) {
        MixedProfile<Rational> s{std::vector<Rational>(m), std::vector<Rational>(n)};
        for (std::size_t q = 0; q < I.size(); ++q) s[0][I[q]] = z[q];
        for (std::size_t q = 0; q < J.size(); ++q) s[1][J[q]] = z[I.size() + q];
        return s;
      };

      if (auto z = detail::solve_square(a, b)) {
        bool positive = true;
        for (std::size_t q = 0; q < iv; ++q) positive = positive && (*z)[q].sign() > 0;
        if (!positive) continue;
        auto s = to_profile(*z);
        if (is_nash(g, s)) add(std::move(s));
        continue;
      }

      // Singular: look for a point with exactly this support. Scaling by
      // t = 1/min coordinate turns the strict positivity into coordinates
      // >= 1 with the simplex sums replaced by a free common total s.
      LinearSystem lp(N + 1);
      const std::size_t is = N;
      lp.set_nonnegative(iv, false);
      lp.set_nonnegative(iw, false);
      for (std::size_t r = 0; r < m; ++r) {
        std::vector<Rational> row(N + 1);
        for (std::size_t q = 0; q < J.size(); ++q) row[I.size() + q] = u(0, r, J[q]);
        row[iv] = Rational(-1);
        bool in = std::find(I.begin(), I.end(), r) != I.end();
        lp.add(row, in ? Relation::kEq : Relation::kLessEq, Rational(0));
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<Rational> row(N + 1);
        for (std::size_t q = 0; q < I.size(); ++q) row[q] = u(1, I[q], c);
        row[iw] = Rational(-1);
        bool in = std::find(J.begin(), J.end(), c) != J.end();
        lp.add(row, in ? Relation::kEq : Relation::kLessEq, Rational(0));
      }
      sx.push_back(Rational(-1));
      sy.push_back(Rational(-1));
      lp.add(sx, Relation::kEq, Rational(0));
      lp.add(sy, Relation::kEq, Rational(0));
      for (std::size_t q = 0; q < iv; ++q) {
        std::vector<Rational> row(N + 1);
        row[q] = Rational(1);
        lp.add(row, Relation::kGreaterEq, Rational(1));
      }
      auto z = lp_feasible(lp);
      if (!z) continue;
      Rational scale = (*z)[is];
      for (auto& x : *z) x /= scale;
      auto s = to_profile(*z);
      if (!is_nash(g, s)) throw std::logic_error("support LP produced a non-equilibrium");
      out.degenerate = true;
      add(std::move(s));
    }
  }
  return out;
}

// Correlated ---------------------------------------------------------------

/// Distribution over joint pure strategies in strategic-form table order.
using CorrelatedDistribution = std::vector<Rational>;

inline void check_distribution(const NormalFormGame& g, const CorrelatedDistribution& d) {
  if (d.size() != g.num_profiles()) throw Error("distribution does not cover the game's table");
  Rational total;
  for (const auto& p : d) {
    if (p.sign() < 0) throw Error("distribution has a negative entry");
    total += p;
  }
  if (total != Rational(1)) throw Error("distribution does not sum to 1");
}

/// No player gains by deviating from a recommendation.
inline bool is_correlated(const NormalFormGame& g, const CorrelatedDistribution& d) {
  check_distribution(g, d);
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    for (std::size_t s = 0; s < g.num_strategies(i); ++s) {
      for (std::size_t alt = 0; alt < g.num_strategies(i); ++alt) {
        if (alt == s) continue;
        Rational gain;
        for (std::size_t k = 0; k < g.num_profiles(); ++k) {
          if (d[k].is_zero()) continue;
          PureProfile p = g.profile_at(k);
          if (p[i] != s) continue;
          Rational here = g.payoff(k)[i];
          p[i] = alt;
          gain += d[k] * (g.payoff(p)[i] - here);
        }
        if (gain.sign() > 0) return false;
      }
    }
  }
  return true;
}

/// Expected payoff vector under a distribution over joint pure strategies.
inline std::vector<Rational> distribution_value(const NormalFormGame& g, const CorrelatedDistribution& d) {
  check_distribution(g, d);
  std::vector<Rational> out(g.num_players());
  for (std::size_t k = 0; k < g.num_profiles(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += d[k] * g.payoff(k)[i];
  return out;
}

inline Verdict correlated_via_kb(const NormalFormGame& g, const CorrelatedDistribution& d) {
  check_distribution(g, d);
  auto ctx = Context<Rational>::normal_form_common(g, d);
  return implements(standard_protocol(ctx), eqnf(g), ctx);
}

// Rationalizability --------------------------------------------------------

enum class Beliefs { kCorrelated, kIndependent };

namespace detail {

/// Joint pure strategies of everyone but i drawn from `sets`, in table order.
inline std::vector<PureProfile> opposing_profiles(const std::vector<std::vector<std::size_t>>& sets,
                                                  std::size_t i) {
  std::vector<PureProfile> out{PureProfile(sets.size(), 0)};
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (j == i) continue;
    std::vector<PureProfile> next;
    for (const auto& p : out)
      for (std::size_t s : sets[j]) {
        PureProfile q = p;
        q[j] = s;
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

/// Correlated belief over `opp` (weights in the same order) under which `s`
/// is a weak best response for i among all of i's strategies.
inline std::optional<std::vector<Rational>> best_response_belief(const NormalFormGame& g, std::size_t i,
                                                                 std::size_t s,
                                                                 const std::vector<PureProfile>& opp) {
  LinearSystem lp(opp.size());
  lp.add(std::vector<Rational>(opp.size(), Rational(1)), Relation::kEq, Rational(1));
  for (std::size_t alt = 0; alt < g.num_strategies(i); ++alt) {
    if (alt == s) continue;
    std::vector<Rational> row(opp.size());
    for (std::size_t k = 0; k < opp.size(); ++k) {
      PureProfile p = opp[k];
      p[i] = s;
      Rational here = g.payoff(p)[i];
      p[i] = alt;
      row[k] = here - g.payoff(p)[i];
    }
    lp.add(std::move(row), Relation::kGreaterEq, Rational(0));
  }
  return lp_feasible(lp);
}

/// Distributions over `size` points with denominators dividing `den`.
inline std::vector<std::vector<Rational>> grid(std::size_t size, std::size_t den) {
  std::vector<std::vector<Rational>> out;
  std::vector<std::size_t> c(size, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t left) {
    if (k + 1 == size) {
      c[k] = left;
      std::vector<Rational> w;
      for (std::size_t x : c) w.push_back(Rational(static_cast<long long>(x), static_cast<long long>(den)));
      out.push_back(std::move(w));
      return;
    }
    for (std::size_t x = 0; x <= left; ++x) {
      c[k] = x;
      rec(k + 1, left - x);
    }
  };
  rec(0, den);
  return out;
}

}  // namespace detail

/// Grid resolution for independent beliefs over three or more players.
inline constexpr std::size_t kIndependentGrid = 12;

/// Strategies surviving iterated elimination of never-best responses.
inline std::vector<std::vector<std::size_t>> rationalizable_set(const NormalFormGame& g,
                                                                Beliefs mode = Beliefs::kCorrelated) {
  const std::size_t n = g.num_players();
  std::vector<std::vector<std::size_t>> alive(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < g.num_strategies(i); ++s) alive[i].push_back(s);

  auto survives = [&](std::size_t i, std::size_t s) {
    if (mode == Beliefs::kCorrelated || n <= 2)
      return detail::best_response_belief(g, i, s, detail::opposing_profiles(alive, i)).has_value();
    // Independent beliefs: grid over every opponent but the last, then an
    // exact LP over the last opponent's mixed strategy.
    std::size_t last = i + 1 == n ? n - 2 : n - 1;
    std::vector<std::size_t> grid_players;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && j != last) grid_players.push_back(j);
    std::vector<std::vector<std::vector<Rational>>> grids;
    for (std::size_t j : grid_players) grids.push_back(detail::grid(alive[j].size(), kIndependentGrid));
    std::vector<std::size_t> pick(grid_players.size(), 0);
    for (;;) {
      // Belief over the last opponent's surviving strategies.
      LinearSystem lp(alive[last].size());
      lp.add(std::vector<Rational>(alive[last].size(), Rational(1)), Relation::kEq, Rational(1));
      auto others = detail::opposing_profiles(alive, i);
      for (std::size_t alt = 0; alt < g.num_strategies(i); ++alt) {
        if (alt == s) continue;
        std::vector<Rational> row(alive[last].size());
        for (const auto& p0 : others) {
          Rational w(1);
          for (std::size_t q = 0; q < grid_players.size(); ++q) {
            std::size_t j = grid_players[q];
            auto pos = std::find(alive[j].begin(), alive[j].end(), p0[j]) - alive[j].begin();
            w *= grids[q][pick[q]][pos];
          }
          if (w.is_zero()) continue;
          PureProfile p = p0;
          p[i] = s;
          Rational here = g.payoff(p)[i];
          p[i] = alt;
          auto col = std::find(alive[last].begin(), alive[last].end(), p0[last]) - alive[last].begin();
          row[col] += w * (here - g.payoff(p)[i]);
        }
        lp.add(std::move(row), Relation::kGreaterEq, Rational(0));
      }
      if (lp_feasible(lp)) return true;
      std::size_t q = 0;
      while (q < pick.size() && ++pick[q] == grids[q].size()) pick[q++] = 0;
      if (q == pick.size()) return false;
    }
  };

  for (;;) {
    std::vector<std::vector<std::size_t>> next(n);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s : alive[i]) {
        if (survives(i, s)) next[i].push_back(s);
        else changed = true;
      }
    }
    alive = std::move(next);
    if (!changed) return alive;
  }
}

/// Witness context for strategy s of player i, or nullopt if s is not
/// (correlated) rationalizable.
inline std::optional<Context<Rational>> rationalizable_via_kb(const NormalFormGame& g, std::size_t i,
                                                              std::size_t s) {
  auto z = rationalizable_set(g, Beliefs::kCorrelated);
  if (std::find(z[i].begin(), z[i].end(), s) == z[i].end()) return std::nullopt;
  const std::size_t n = g.num_players();

  // G0 is the product of the surviving sets; each player's prior mixes, with
  // uniform weights over its surviving types, the best-response belief
  // supporting that type.
  std::vector<PureProfile> initial{PureProfile(n, 0)};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<PureProfile> next;
    for (const auto& p : initial)
      for (std::size_t t : z[j]) {
        PureProfile q = p;
        q[j] = t;
        next.push_back(std::move(q));
      }
    initial = std::move(next);
  }
  std::vector<std::vector<Rational>> priors(n, std::vector<Rational>(initial.size()));
  for (std::size_t j = 0; j < n; ++j) {
    auto opp = detail::opposing_profiles(z, j);
    Rational alpha(1, static_cast<long long>(z[j].size()));
    for (std::size_t t : z[j]) {
      auto belief = detail::best_response_belief(g, j, t, opp);
      if (!belief) throw std::logic_error("surviving strategy without a supporting belief");
      for (std::size_t k = 0; k < opp.size(); ++k) {
        if ((*belief)[k].is_zero()) continue;
        PureProfile p = opp[k];
        p[j] = t;
        auto at = std::find(initial.begin(), initial.end(), p) - initial.begin();
        priors[j][at] += alpha * (*belief)[k];
      }
    }
  }
  auto ctx = Context<Rational>::normal_form(g, initial, priors);
  if (!implements(standard_protocol(ctx), eqnf(g), ctx).implements)
    throw std::logic_error("rationalizability witness does not implement EQNF");
  return ctx;
}

// Sequential and perfect ---------------------------------------------------

/// Information-set id -> node id -> probability.
using BeliefSystem = std::map<std::string, std::map<std::string, Rational>>;

namespace detail {

/// Probability of reaching each node when every player follows `b`.
template <OrderedField F>
std::vector<F> reach(const GameTree& t, const BehavioralProfile<F>& b) {
  std::vector<F> out(t.num_nodes(), F(Rational(0)));
  std::vector<std::size_t> stack{t.root()};
  out[t.root()] = F(Rational(1));
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    const TreeNode& n = t.node(x);
    for (std::size_t e = 0; e < n.children.size(); ++e) {
      F p = n.kind == NodeKind::kChance
                ? F(n.chance[e])
                : b[n.player][t.local_infoset(n.infoset)][e];
      out[n.children[e]] = out[x] * p;
      stack.push_back(n.children[e]);
    }
  }
  return out;
}

}  // namespace detail

/// Node beliefs at every information set: standard parts of the
/// conditional reach probabilities under the trembled profile.
inline BeliefSystem tremble_beliefs(const GameTree& t, const BehavioralProfile<Rational>& b,
                                    const TrembleSpec& spec) {
  BehavioralProfile<EpsNum> nu;
  for (std::size_t i = 0; i < t.num_players(); ++i) nu.push_back(trembled(t, i, b.at(i), spec));
  auto r = detail::reach(t, nu);
  BeliefSystem out;
  for (std::size_t k = 0; k < t.num_infosets(); ++k) {
    const InfoSet& is = t.infoset(k);
    EpsNum total(0);
    for (std::size_t x : is.nodes) total += r[x];
    for (std::size_t x : is.nodes) out[is.id][t.node(x).id] = standard_part(r[x] / total);
  }
  return out;
}

struct OneShotViolation {
  std::size_t player = 0;
  std::string infoset;
  std::string action;  // a prescribed action that is not optimal
  std::string better;
  EpsNum action_value;
  EpsNum better_value;
};

/// Direct check on the tree: at every information set, each action in the
/// support of b is optimal given trembled node beliefs, own continuation b,
/// and the opponents' trembled continuation. Standard-part mode compares
/// standard parts (sequential rationality); exact mode compares in the
/// nonstandard field (perfection).
inline std::optional<OneShotViolation> one_shot_deviation(const GameTree& t,
                                                          const BehavioralProfile<Rational>& b,
                                                          const TrembleSpec& spec, EuMode mode) {
  for (std::size_t i = 0; i < t.num_players(); ++i) check_behavioral(t, i, b.at(i));
  BehavioralProfile<EpsNum> nu;
  for (std::size_t i = 0; i < t.num_players(); ++i) nu.push_back(trembled(t, i, b[i], spec));
  auto r = detail::reach(t, nu);
  for (std::size_t k = 0; k < t.num_infosets(); ++k) {
    const InfoSet& is = t.infoset(k);
    const std::size_t i = is.player;
    BehavioralProfile<EpsNum> play = nu;
    play[i].clear();
    for (const auto& dist : b[i]) {
      std::vector<EpsNum> row;
      for (const auto& p : dist) row.emplace_back(p);
      play[i].push_back(std::move(row));
    }
    EpsNum total(0);
    for (std::size_t x : is.nodes) total += r[x];
    std::vector<EpsNum> value(is.actions.size(), EpsNum(0));
    for (std::size_t a = 0; a < is.actions.size(); ++a)
      for (std::size_t x : is.nodes)
        value[a] += r[x] / total * tree_expected_utility(t, play, t.node(x).children[a])[i];
    if (mode == EuMode::kStandardPart)
      for (auto& v : value) v = EpsNum(standard_part(v));
    std::size_t best = std::max_element(value.begin(), value.end()) - value.begin();
    for (std::size_t a = 0; a < is.actions.size(); ++a) {
      if (b[i][t.local_infoset(k)][a].is_zero() || value[a] == value[best]) continue;
      return OneShotViolation{i, is.id, is.actions[a], is.actions[best], value[a], value[best]};
    }
  }
  return std::nullopt;
}

enum class EquilibriumStatus {
  kVerified,
  kRefuted,      // the tree oracle agrees the profile fails
  kNotVerified,  // the supplied trembles do not certify it
};

struct EquilibriumCheck {
  EquilibriumStatus status = EquilibriumStatus::kNotVerified;
  Verdict verdict;
  std::optional<BeliefSystem> beliefs;
  std::optional<OneShotViolation> oracle;

  bool ok() const { return status == EquilibriumStatus::kVerified; }
};

namespace detail {

inline EquilibriumCheck check_tremble_equilibrium(std::shared_ptr<const GameTree> t,
                                                  const BehavioralProfile<Rational>& b,
                                                  const TrembleSpec& spec, EuMode mode) {
  auto nu = tremble_prior(*t, b, spec);
  auto ctx = Context<EpsNum>::extensive_common(t, nu);
  EquilibriumCheck out;
  out.verdict = implements(standard_protocol(ctx), eqef(*t), ctx, Scope::kOwnTypeStandard, mode);
  if (out.verdict.implements) {
    out.status = EquilibriumStatus::kVerified;
    out.beliefs = tremble_beliefs(*t, b, spec);
    return out;
  }
  out.oracle = one_shot_deviation(*t, b, spec, mode);
  out.status = out.oracle ? EquilibriumStatus::kRefuted : EquilibriumStatus::kNotVerified;
  return out;
}

inline std::shared_ptr<const GameTree> checked_tree(const ExtensiveFormGame& g) {
  auto t = std::make_shared<const GameTree>(g);
  auto recall = has_perfect_recall(*t);
  for (std::size_t i = 0; i < recall.size(); ++i)
    if (!recall[i]) throw ImperfectRecall(t->player_name(i));
  return t;
}

}  // namespace detail

/// Sequential equilibrium under the given trembles, with standard-part
/// expected utilities. On success carries the induced belief system.
inline EquilibriumCheck check_sequential(const ExtensiveFormGame& g, const BehavioralProfile<Rational>& b,
                                         const TrembleSpec& spec = {}) {
  return detail::check_tremble_equilibrium(detail::checked_tree(g), b, spec, EuMode::kStandardPart);
}

/// Perfect equilibrium under the given trembles: exact nonstandard
/// comparison.
inline EquilibriumCheck check_perfect(const ExtensiveFormGame& g, const BehavioralProfile<Rational>& b,
                                      const TrembleSpec& spec = {}) {
  return detail::check_tremble_equilibrium(detail::checked_tree(g), b, spec, EuMode::kExact);
}

}  // namespace kbeq

#endif  // KBEQ_SOLUTIONS_HPP
