#include "secjam/rate_max.hpp"

#include <algorithm>

namespace secjam {

std::vector<UserId> allocate_subcarriers_best_gain(const ChannelRealization& ch) {
  std::vector<UserId> owners(ch.subcarriers(), 0);
  for (Subcarrier n = 0; n < ch.subcarriers(); ++n)
    for (UserId m = 1; m < ch.users(); ++m)
      if (ch.h(m, n) > ch.h(owners[n], n)) owners[n] = m;
  return owners;
}

UserId strongest_other(UserId m, Subcarrier n, const ChannelRealization& ch) {
  UserId e = m == 0 ? 1 : 0;
  for (UserId u = 0; u < ch.users(); ++u)
    if (u != m && ch.h(u, n) > ch.h(e, n)) e = u;
  return e;
}

SetPartition partition_sets(std::span<const UserId> owners, const ChannelRealization& ch,
                            std::span<const double> ps_init, double jammer_budget) {
  SetPartition sp;
  sp.owner.assign(owners.begin(), owners.end());
  sp.eavesdropper.resize(owners.size());
  for (Subcarrier n = 0; n < owners.size(); ++n) {
    const UserId m = owners[n];
    const UserId e = strongest_other(m, n, ch);
    sp.eavesdropper[n] = e;
    const bool jam = jammer_budget > 0.0 && ch.h(m, n) > ch.h(e, n) &&
                     rate_improvement_feasible(m, e, n, ch) &&
                     ps_init[n] > ps_threshold(m, e, n, ch) &&
                     reorder_bounds(m, e, n, ps_init[n], ch).feasible();
    (jam ? sp.j1 : sp.j0).push_back(n);
  }
  return sp;
}

namespace {

std::vector<Carrier> carriers_of(std::span<const Subcarrier> set, const SetPartition& sp,
                                 const ChannelRealization& ch, const ScenarioConfig& cfg) {
  std::vector<Carrier> out;
  out.reserve(set.size());
  for (Subcarrier n : set)
    out.push_back(make_carrier(n, sp.owner[n], sp.eavesdropper[n], ch, cfg.weight(sp.owner[n])));
  return out;
}

}  // namespace

SchemeOutcome jpa(const ChannelRealization& ch, const ScenarioConfig& cfg,
                  const OptimizerOptions& opts, std::vector<PdTraceRow>* trace) {
  const std::size_t N = ch.subcarriers();
  const auto owners = allocate_subcarriers_best_gain(ch);
  const std::vector<double> ps_init(N, cfg.source_budget / static_cast<double>(N));
  const SetPartition sp = partition_sets(owners, ch, ps_init, cfg.jammer_budget);
  PdResult pd = primal_decomposition(carriers_of(sp.j0, sp, ch, cfg), carriers_of(sp.j1, sp, ch, cfg),
                                     cfg.source_budget, cfg.jammer_budget, N, opts);
  if (trace) *trace = pd.trace;
  return make_outcome(std::move(pd.allocation), ch, cfg.weight_vector(), pd.stats);
}

SchemeOutcome ospwj(const ChannelRealization& ch, const ScenarioConfig& cfg) {
  const std::size_t N = ch.subcarriers();
  const auto owners = allocate_subcarriers_best_gain(ch);
  const std::vector<double> zero(N, 0.0);
  const SetPartition sp = partition_sets(owners, ch, zero, 0.0);
  PdResult pd = primal_decomposition(carriers_of(sp.j0, sp, ch, cfg), {}, cfg.source_budget,
                                     cfg.jammer_budget, N);
  return make_outcome(std::move(pd.allocation), ch, cfg.weight_vector(), pd.stats);
}

SchemeOutcome jpaso(const ChannelRealization& ch, const ScenarioConfig& cfg) {
  const std::size_t N = ch.subcarriers();
  const auto owners = allocate_subcarriers_best_gain(ch);
  const std::vector<double> zero(N, 0.0);
  const SetPartition all = partition_sets(owners, ch, zero, 0.0);
  const auto carriers = carriers_of(all.j0, all, ch, cfg);
  const WaterfillResult wf = secure_waterfill(source_items(carriers), cfg.source_budget);

  PowerAllocation alloc = PowerAllocation::empty(N);
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    alloc.owner[carriers[i].index] = carriers[i].owner;
    alloc.ps[carriers[i].index] = wf.powers[i];
  }

  const SetPartition sp = partition_sets(owners, ch, alloc.ps, cfg.jammer_budget);
  if (!sp.j1.empty()) {
    const auto j1 = carriers_of(sp.j1, sp, ch, cfg);
    std::vector<double> ps(j1.size());
    for (std::size_t i = 0; i < j1.size(); ++i) ps[i] = alloc.ps[j1[i].index];
    const auto pj = suboptimal_pj(j1, ps, cfg.jammer_budget);
    for (std::size_t i = 0; i < j1.size(); ++i) {
      alloc.pj[j1[i].index] = pj[i];
      alloc.jammer_active[j1[i].index] = pj[i] > 0.0;
    }
  }
  return make_outcome(std::move(alloc), ch, cfg.weight_vector());
}

SchemeOutcome epa_rate(const ChannelRealization& ch, const ScenarioConfig& cfg) {
  const std::size_t N = ch.subcarriers();
  const double ps = cfg.source_budget / static_cast<double>(N);
  const auto owners = allocate_subcarriers_best_gain(ch);
  const std::vector<double> ps_init(N, ps);
  const SetPartition sp = partition_sets(owners, ch, ps_init, cfg.jammer_budget);

  PowerAllocation alloc = PowerAllocation::empty(N);
  for (Subcarrier n = 0; n < N; ++n) {
    alloc.owner[n] = owners[n];
    alloc.ps[n] = ps;
  }
  if (!sp.j1.empty()) {
    const double share = cfg.jammer_budget / static_cast<double>(sp.j1.size());
    for (Subcarrier n : sp.j1) {
      const JammerBounds b = reorder_bounds(sp.owner[n], sp.eavesdropper[n], n, ps, ch);
      if (!clampable(b)) continue;
      alloc.pj[n] = clamp_pj(share, b);
      alloc.jammer_active[n] = true;
    }
  }
  return make_outcome(std::move(alloc), ch, cfg.weight_vector());
}

}  // namespace secjam
