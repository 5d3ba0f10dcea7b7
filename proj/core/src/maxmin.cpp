#include "secjam/maxmin.hpp"

#include <algorithm>

#include "secjam/rate_max.hpp"

namespace secjam {

std::string_view to_string(JammerPolicy p) {
  switch (p) {
    case JammerPolicy::Pfa: return "pfa";
    case JammerPolicy::Oda: return "oda";
    case JammerPolicy::Pfaso: return "pfaso";
    case JammerPolicy::Odaso: return "odaso";
    case JammerPolicy::Equal: return "equal";
    case JammerPolicy::None: return "none";
  }
  return "unknown";
}

namespace {

bool capped_policy(JammerPolicy p) {
  return p == JammerPolicy::Pfa || p == JammerPolicy::Pfaso || p == JammerPolicy::Equal;
}

bool on_demand_policy(JammerPolicy p) { return p == JammerPolicy::Oda || p == JammerPolicy::Odaso; }

double ratio(UserId m, Subcarrier n, const ChannelRealization& ch) {
  return ch.h(m, n) / ch.h(strongest_other(m, n, ch), n);
}

// Best remaining subcarrier of m by |h_m|/|h_e|, if any is still unallocated.
std::optional<Subcarrier> pick_best(UserId m, const FairnessState& s,
                                    const ChannelRealization& ch) {
  std::optional<Subcarrier> pick;
  for (Subcarrier n : s.best[m]) {
    if (!s.unallocated[n]) continue;
    if (!pick || ratio(m, n, ch) > ratio(m, *pick, ch)) pick = n;
  }
  return pick;
}

std::optional<std::size_t> pick_snatch(UserId m, const FairnessState& s) {
  std::optional<std::size_t> pick;
  const auto& cands = s.snatch[m];
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!s.unallocated[cands[i].subcarrier]) continue;
    if (!pick || cands[i].threshold < cands[*pick].threshold) pick = i;
  }
  return pick;
}

Carrier snatch_carrier(UserId v, const SnatchCandidate& c, const FairnessState& s,
                       const ChannelRealization& ch, const ScenarioConfig& cfg,
                       JammerPolicy policy) {
  Carrier k = make_carrier(c.subcarrier, v, c.best_user, ch, cfg.weight(v));
  if (capped_policy(policy)) k.jammer_cap = s.pj_equal;
  return k;
}

// Jammer power a newly snatched subcarrier gets at equal source power.
double commit_power(const Carrier& k, const FairnessState& s, JammerPolicy policy) {
  if (policy == JammerPolicy::Equal) return clamp_pj(s.pj_equal, effective_bounds(k, s.ps_equal));
  return clamped_optimal_pj(k, s.ps_equal);
}

double user_rate(UserId v, const FairnessState& s, const ChannelRealization& ch) {
  double r = 0.0;
  for (Subcarrier n : s.allocated_best[v]) r += secure_rate(v, n, s.alloc, ch);
  for (Subcarrier n : s.allocated_snatched[v]) r += secure_rate(v, n, s.alloc, ch);
  return r;
}

struct UserPowers {
  std::vector<double> ps;  // Ab_v then As_v order
  std::vector<double> pj;
};

UserPowers read_powers(UserId v, const FairnessState& s) {
  UserPowers p;
  for (Subcarrier n : s.allocated_best[v]) {
    p.ps.push_back(s.alloc.ps[n]);
    p.pj.push_back(0.0);
  }
  for (Subcarrier n : s.allocated_snatched[v]) {
    p.ps.push_back(s.alloc.ps[n]);
    p.pj.push_back(s.alloc.pj[n]);
  }
  return p;
}

void write_powers(UserId v, FairnessState& s, const UserPowers& p) {
  std::size_t i = 0;
  for (Subcarrier n : s.allocated_best[v]) {
    s.alloc.ps[n] = p.ps[i];
    s.alloc.pj[n] = 0.0;
    s.alloc.jammer_active[n] = false;
    ++i;
  }
  for (Subcarrier n : s.allocated_snatched[v]) {
    s.alloc.ps[n] = p.ps[i];
    s.alloc.pj[n] = p.pj[i];
    s.alloc.jammer_active[n] = p.pj[i] > 0.0;
    ++i;
  }
}

// Re-optimises all of v's powers under the policy. `jammer_budget` is the
// power v may spend on its snatched subcarriers.
UserPowers optimise_user(UserId v, const FairnessState& s, JammerPolicy policy,
                         const ChannelRealization& ch, const ScenarioConfig& cfg,
                         const OptimizerOptions& opts, double jammer_budget,
                         IterationStats& stats) {
  std::vector<Carrier> j0, j1;
  for (Subcarrier n : s.allocated_best[v])
    j0.push_back(make_carrier(n, v, strongest_other(v, n, ch), ch, cfg.weight(v)));
  for (Subcarrier n : s.allocated_snatched[v]) {
    Carrier k = make_carrier(n, v, s.eavesdropper[n], ch, cfg.weight(v));
    if (capped_policy(policy)) k.jammer_cap = s.pj_equal;
    j1.push_back(k);
  }
  const double ps_budget = static_cast<double>(j0.size() + j1.size()) * s.ps_equal;
  UserPowers p;

  switch (policy) {
    case JammerPolicy::Pfa:
    case JammerPolicy::Oda: {
      const std::size_t n0 = j0.size();
      PdResult pd = primal_decomposition(j0, j1, ps_budget, jammer_budget, ch.subcarriers(), opts);
      stats.pd_iterations += pd.stats.pd_iterations;
      stats.ao_iterations += pd.stats.ao_iterations;
      stats.subgradient_steps += pd.stats.subgradient_steps;
      stats.converged = stats.converged && pd.stats.converged;
      for (std::size_t i = 0; i < n0; ++i) {
        p.ps.push_back(pd.allocation.ps[j0[i].index]);
        p.pj.push_back(0.0);
      }
      for (const Carrier& k : j1) {
        p.ps.push_back(pd.allocation.ps[k.index]);
        p.pj.push_back(pd.allocation.effective_pj(k.index));
      }
      return p;
    }
    case JammerPolicy::Pfaso:
    case JammerPolicy::None: {
      const double b0 = static_cast<double>(j0.size()) * s.ps_equal;
      const WaterfillResult wf = secure_waterfill(source_items(j0), b0);
      p.ps = wf.powers;
      p.pj.assign(j0.size(), 0.0);
      std::vector<double> ps1(j1.size(), s.ps_equal);
      const auto pj1 = suboptimal_pj(j1, ps1, jammer_budget, false);
      p.ps.insert(p.ps.end(), ps1.begin(), ps1.end());
      p.pj.insert(p.pj.end(), pj1.begin(), pj1.end());
      return p;
    }
    case JammerPolicy::Odaso:
    case JammerPolicy::Equal: {
      p = read_powers(v, s);
      std::fill(p.ps.begin(), p.ps.end(), s.ps_equal);
      return p;
    }
  }
  return p;
}

double jammer_sum(const UserPowers& p) {
  double t = 0.0;
  for (double x : p.pj) t += x;
  return t;
}

}  // namespace

FairnessState init_fairness_state(const ChannelRealization& ch, const ScenarioConfig& cfg,
                                  JammerPolicy policy, bool unbounded_jammer) {
  const std::size_t M = ch.users();
  const std::size_t N = ch.subcarriers();
  FairnessState s;
  s.active.assign(M, true);
  s.unallocated.assign(N, true);
  s.best.resize(M);
  s.snatch.resize(M);
  s.allocated_best.resize(M);
  s.allocated_snatched.resize(M);
  s.rates.assign(M, 0.0);
  s.alloc = PowerAllocation::empty(N);
  s.eavesdropper.assign(N, 0);
  s.bounds.assign(N, JammerBounds{});
  s.committed.assign(M, 0.0);
  s.ps_equal = cfg.source_budget / static_cast<double>(N);
  s.pj_equal = cfg.jammer_budget / static_cast<double>(N);
  s.pj_leftover = unbounded_jammer ? kInf : cfg.jammer_budget;

  const auto owners = allocate_subcarriers_best_gain(ch);
  for (Subcarrier n = 0; n < N; ++n) {
    const UserId b = owners[n];
    const UserId second = strongest_other(b, n, ch);
    if (ch.h(b, n) > ch.h(second, n)) s.best[b].push_back(n);
    if (policy == JammerPolicy::None || (!unbounded_jammer && !(cfg.jammer_budget > 0.0))) continue;
    for (UserId m = 0; m < M; ++m) {
      if (m == b || !(ch.h(b, n) > ch.h(m, n)) || !snatch_feasible(m, b, n, ch)) continue;
      SnatchCandidate c;
      c.subcarrier = n;
      c.best_user = b;
      c.threshold = pj_threshold_snatch(m, b, n, ch);
      c.bounds = identity_bounds(m, b, n, ch);
      if (c.bounds.feasible()) s.snatch[m].push_back(c);
    }
  }

  // One best subcarrier per user, in user order.
  for (UserId m = 0; m < M; ++m) {
    const auto n = pick_best(m, s, ch);
    if (!n) continue;
    s.unallocated[*n] = false;
    s.allocated_best[m].push_back(*n);
    s.alloc.owner[*n] = m;
    s.alloc.ps[*n] = s.ps_equal;
    s.eavesdropper[*n] = strongest_other(m, *n, ch);
    s.rates[m] = user_rate(m, s, ch);
  }
  return s;
}

bool pfa_budget_check(const SnatchCandidate& c, const FairnessState& state) {
  JammerBounds b = c.bounds;
  b.upper = std::min(b.upper, state.pj_equal);
  return clampable(b);
}

bool oda_budget_policy(UserId v, const SnatchCandidate& c, const FairnessState& state,
                       const ChannelRealization& ch) {
  const double budget = state.committed[v] + state.pj_leftover;
  double need = 0.0;
  for (Subcarrier n : state.allocated_snatched[v]) {
    const Carrier k = make_carrier(n, v, state.eavesdropper[n], ch, 1.0);
    need += clamped_optimal_pj(k, state.ps_equal);
  }
  const Carrier k = make_carrier(c.subcarrier, v, c.best_user, ch, 1.0);
  const double star = clamped_optimal_pj(k, state.ps_equal);
  if (!(star > 0.0)) return false;
  return need + star <= budget;
}

SchemeOutcome maxmin_loop(FairnessState& s, JammerPolicy policy, const ChannelRealization& ch,
                          const ScenarioConfig& cfg, const OptimizerOptions& opts) {
  const std::size_t M = ch.users();
  IterationStats stats;

  auto any_active = [&] { return std::find(s.active.begin(), s.active.end(), true) != s.active.end(); };
  auto any_free = [&] {
    return std::find(s.unallocated.begin(), s.unallocated.end(), true) != s.unallocated.end();
  };

  while (any_active() && any_free()) {
    ++s.iterations;
    UserId v = M;
    for (UserId m = 0; m < M; ++m)
      if (s.active[m] && (v == M || s.rates[m] < s.rates[v])) v = m;

    const UserPowers before = read_powers(v, s);
    double jammer_budget = 0.0;
    double new_pj = 0.0;
    bool snatched = false;

    if (const auto n = pick_best(v, s, ch)) {
      s.unallocated[*n] = false;
      s.allocated_best[v].push_back(*n);
      s.alloc.owner[*n] = v;
      s.eavesdropper[*n] = strongest_other(v, *n, ch);
    } else if (const auto i = pick_snatch(v, s)) {
      const SnatchCandidate c = s.snatch[v][*i];
      const Carrier k = snatch_carrier(v, c, s, ch, cfg, policy);
      bool admit = false;
      switch (policy) {
        case JammerPolicy::Pfa:
        case JammerPolicy::Pfaso:
        case JammerPolicy::Equal: admit = pfa_budget_check(c, s); break;
        case JammerPolicy::Oda: admit = oda_budget_policy(v, c, s, ch); break;
        case JammerPolicy::Odaso: {
          const double star = clamped_optimal_pj(k, s.ps_equal);
          admit = star > 0.0 && star <= s.pj_leftover;
          break;
        }
        case JammerPolicy::None: admit = false; break;
      }
      if (!admit) {
        s.active[v] = false;
        continue;
      }
      new_pj = commit_power(k, s, policy);
      s.unallocated[c.subcarrier] = false;
      s.allocated_snatched[v].push_back(c.subcarrier);
      s.alloc.owner[c.subcarrier] = v;
      s.eavesdropper[c.subcarrier] = c.best_user;
      s.bounds[c.subcarrier] = c.bounds;
      snatched = true;
    } else {
      s.active[v] = false;
      continue;
    }

    if (capped_policy(policy)) {
      jammer_budget = static_cast<double>(s.allocated_snatched[v].size()) * s.pj_equal;
    } else if (on_demand_policy(policy)) {
      jammer_budget = s.committed[v] + s.pj_leftover;
    }

    // Fallback: previous powers plus the new subcarrier at equal power.
    UserPowers fallback = before;
    if (snatched) {
      fallback.ps.push_back(s.ps_equal);
      fallback.pj.push_back(new_pj);
    } else {
      const std::size_t nb = s.allocated_best[v].size() - 1;
      fallback.ps.insert(fallback.ps.begin() + static_cast<std::ptrdiff_t>(nb), s.ps_equal);
      fallback.pj.insert(fallback.pj.begin() + static_cast<std::ptrdiff_t>(nb), 0.0);
    }

    UserPowers chosen = fallback;
    if (policy != JammerPolicy::Odaso && policy != JammerPolicy::Equal) {
      const UserPowers opt = optimise_user(v, s, policy, ch, cfg, opts, jammer_budget, stats);
      write_powers(v, s, fallback);
      const double r_fallback = user_rate(v, s, ch);
      write_powers(v, s, opt);
      const double r_opt = user_rate(v, s, ch);
      const bool fallback_ok = !on_demand_policy(policy) ||
                               jammer_sum(fallback) <= jammer_budget + budget_tolerance(jammer_budget);
      if (r_opt >= r_fallback || !fallback_ok) chosen = opt;
    }
    write_powers(v, s, chosen);
    s.rates[v] = user_rate(v, s, ch);

    if (on_demand_policy(policy)) {
      const double spent = jammer_sum(chosen);
      if (policy == JammerPolicy::Oda) {
        s.pj_leftover = std::max(0.0, jammer_budget - spent);
      } else {
        s.pj_leftover = std::max(0.0, s.pj_leftover - (spent - s.committed[v]));
      }
      s.committed[v] = spent;
    } else {
      s.committed[v] = jammer_sum(chosen);
    }
  }

  stats.maxmin_iterations = s.iterations;
  return make_outcome(s.alloc, ch, cfg.weight_vector(), stats);
}

SchemeOutcome maxmin(const ChannelRealization& ch, const ScenarioConfig& cfg, JammerPolicy policy,
                     const OptimizerOptions& opts) {
  FairnessState s = init_fairness_state(ch, cfg, policy);
  return maxmin_loop(s, policy, ch, cfg, opts);
}

}  // namespace secjam
