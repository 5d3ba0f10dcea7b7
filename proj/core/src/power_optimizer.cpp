#include "secjam/power_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "root_find.hpp"

namespace secjam {

Carrier make_carrier(Subcarrier n, UserId m, UserId e, const ChannelRealization& ch, double weight) {
  Carrier c;
  c.index = n;
  c.owner = m;
  c.eavesdropper = e;
  c.link = link_gains(m, e, n, ch);
  c.weight = weight;
  c.identity = identity_bounds(m, e, n, ch);
  c.improvement = ch.h(m, n) > ch.h(e, n);
  return c;
}

JammerBounds effective_bounds(const Carrier& c, double ps) {
  JammerBounds b = c.identity;
  if (c.improvement) b.upper = std::min(b.upper, pj_threshold_improve(c.link, ps));
  b.upper = std::min(b.upper, c.jammer_cap);
  return b;
}

double clamped_optimal_pj(const Carrier& c, double ps) {
  const JammerBounds b = effective_bounds(c, ps);
  if (!clampable(b)) return 0.0;
  if (c.improvement && ps <= ps_threshold(c.link)) return 0.0;
  const auto root = stationary_pj(c.link, ps);
  if (!root) return 0.0;
  return clamp_pj(*root, b);
}

double carrier_objective(const Carrier& c, double ps, double pj) {
  return c.weight * pair_rate(c.link, ps, pj);
}

QuarticCoeffs quartic_coeffs(const LinkGains& l, double ps) {
  // Product of the four linear factors (s2 + P ge)(s2 + ps he + P ge)
  // (s2 + P gm)(s2 + ps hm + P gm), lowest degree first.
  const double s2 = l.sigma2;
  const double f[4][2] = {{s2, l.ge2}, {s2 + ps * l.he2, l.ge2}, {s2, l.gm2}, {s2 + ps * l.hm2, l.gm2}};
  double poly[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
  for (int k = 0; k < 4; ++k) {
    for (int d = k + 1; d >= 1; --d) poly[d] = poly[d] * f[k][0] + poly[d - 1] * f[k][1];
    poly[0] *= f[k][0];
  }
  const StationaryQuadratic sq = stationary_quadratic(l, ps);
  QuarticCoeffs q;
  q.a = poly[4];
  q.b = poly[3];
  q.c = poly[2];
  q.d = poly[1];
  q.e = poly[0];
  q.cp = sq.x;
  q.dp = sq.y;
  q.ep = sq.z;
  return q;
}

double quartic_residual(const QuarticCoeffs& q, double ps, double mu, double weight, double p) {
  const double quartic = (((q.a * p + q.b) * p + q.c) * p + q.d) * p + q.e;
  const double quad = (q.cp * p + q.dp) * p + q.ep;
  return mu * std::numbers::ln2 / weight * quartic - ps * quad;
}

double solve_quartic_root(const QuarticCoeffs& q, double ps, double mu, double weight,
                          double lower, double upper) {
  if (!(lower <= upper)) throw std::invalid_argument("solve_quartic_root: inverted bracket");
  const double g_lo = quartic_residual(q, ps, mu, weight, lower);
  if (g_lo >= 0.0) return lower;
  const double g_hi = quartic_residual(q, ps, mu, weight, upper);
  if (g_hi <= 0.0) return upper;
  const auto br = detail::bracket_root(
      [&](double p) { return quartic_residual(q, ps, mu, weight, p); }, lower, upper, g_lo, g_hi,
      1e-14 * std::max(upper, 1e-300));
  // Lower end keeps the marginal rate above the price.
  return br.first;
}

namespace {

// Marginal weighted rate of the pinned pair in the jammer power.
double jammer_marginal(const Carrier& c, double ps, double pj) {
  return c.weight * pair_rate_dpj(c.link, ps, pj);
}

}  // namespace

JammerAllocation allocate_pj_fixed_ps(std::span<const Carrier> carriers,
                                      std::span<const double> ps, double pj_budget) {
  const std::size_t K = carriers.size();
  JammerAllocation out;
  out.pj.assign(K, 0.0);
  if (K == 0) return out;
  if (ps.size() != K) throw std::invalid_argument("allocate_pj_fixed_ps: size mismatch");

  std::vector<double> floor(K, 0.0), star(K, 0.0);
  std::vector<bool> active(K, false);
  double star_sum = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    const JammerBounds b = effective_bounds(carriers[i], ps[i]);
    if (!clampable(b)) continue;
    const double s = clamped_optimal_pj(carriers[i], ps[i]);
    if (!(s > 0.0)) continue;
    active[i] = true;
    star[i] = s;
    floor[i] = b.lower > 0.0 ? b.lower + clamp_margin(b) : 0.0;
    star_sum += s;
  }
  if (star_sum <= pj_budget) {
    out.pj = star;
    return out;
  }
  out.budget_binding = true;

  // Snatched carriers need at least their floor; drop the costliest until
  // the floors fit.
  double floor_sum = 0.0;
  for (std::size_t i = 0; i < K; ++i)
    if (active[i]) floor_sum += floor[i];
  while (floor_sum > pj_budget) {
    std::size_t worst = K;
    for (std::size_t i = 0; i < K; ++i)
      if (active[i] && (worst == K || floor[i] > floor[worst])) worst = i;
    active[worst] = false;
    floor_sum -= floor[worst];
  }

  std::vector<QuarticCoeffs> coeffs(K);
  double mu_hi = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    if (!active[i]) continue;
    coeffs[i] = quartic_coeffs(carriers[i].link, ps[i]);
    mu_hi = std::max(mu_hi, jammer_marginal(carriers[i], ps[i], floor[i]));
  }

  auto fill = [&](double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      if (!active[i]) {
        out.pj[i] = 0.0;
        continue;
      }
      out.pj[i] = star[i] <= floor[i]
                      ? floor[i]
                      : solve_quartic_root(coeffs[i], ps[i], mu, carriers[i].weight, floor[i], star[i]);
      s += out.pj[i];
    }
    return s;
  };

  if (!(mu_hi > 0.0)) {
    fill(kInf);
    return out;
  }
  double hi = std::log(mu_hi);
  double f_hi = fill(mu_hi) - pj_budget;
  if (f_hi > 0.0) {
    // Floors alone bind: keep them.
    out.mu = mu_hi;
    return out;
  }
  double lo = hi;
  double f_lo = 0.0;
  do {
    lo -= 1.0;
    f_lo = fill(std::exp(lo)) - pj_budget;
    ++out.steps;
  } while (f_lo <= 0.0 && lo > hi - 200.0);
  if (f_hi < 0.0 && f_lo > 0.0) {
    const auto br = detail::bracket_root([&](double s) { return fill(std::exp(s)) - pj_budget; },
                                         lo, hi, f_lo, f_hi, 1e-13 * std::max(1.0, std::abs(hi)),
                                         &out.steps);
    hi = br.second;
  }
  out.mu = std::exp(hi);
  fill(out.mu);
  return out;
}

std::vector<WaterfillItem> source_items(std::span<const Carrier> carriers,
                                        std::span<const double> pj) {
  std::vector<WaterfillItem> items(carriers.size());
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    const LinkGains& l = carriers[i].link;
    const double p = pj.empty() ? 0.0 : pj[i];
    items[i].eta = (l.sigma2 + p * l.gm2) / l.hm2;
    items[i].nu = (l.sigma2 + p * l.ge2) / l.he2;
    items[i].weight = carriers[i].weight;
  }
  return items;
}

namespace {

double total_objective(std::span<const Carrier> carriers, std::span<const double> ps,
                       std::span<const double> pj) {
  double s = 0.0;
  for (std::size_t i = 0; i < carriers.size(); ++i) s += carrier_objective(carriers[i], ps[i], pj[i]);
  return s;
}

// Multiplier of a water-filling result, finite even when the budget is zero.
double finite_lambda(const WaterfillResult& wf, std::span<const WaterfillItem> items) {
  return wf.lambda == kInf ? price_at_lower(items) : wf.lambda;
}

}  // namespace

AoResult alternating_optimization(std::span<const Carrier> carriers, double ps_budget,
                                  double pj_budget, const OptimizerOptions& opts) {
  const std::size_t K = carriers.size();
  AoResult r;
  if (K == 0) return r;
  r.ps.assign(K, ps_budget / static_cast<double>(K));
  r.pj.assign(K, 0.0);
  r.objective = total_objective(carriers, r.ps, r.pj);
  r.lambda = finite_lambda(secure_waterfill(source_items(carriers, r.pj), ps_budget),
                           source_items(carriers, r.pj));
  r.trace.push_back(r.objective);

  for (int it = 1; it <= opts.max_ao_iterations; ++it) {
    r.iterations = it;
    const double before = r.objective;

    const JammerAllocation ja = allocate_pj_fixed_ps(carriers, r.ps, pj_budget);
    r.subgradient_steps += ja.steps;
    const double obj_j = total_objective(carriers, r.ps, ja.pj);
    if (obj_j >= r.objective) {
      r.pj = ja.pj;
      r.objective = obj_j;
    }

    const auto items = source_items(carriers, r.pj);
    const WaterfillResult wf = secure_waterfill(items, ps_budget);
    const double obj_s = total_objective(carriers, wf.powers, r.pj);
    if (obj_s >= r.objective) {
      r.ps = wf.powers;
      r.objective = obj_s;
    }
    r.lambda = finite_lambda(wf, items);
    r.trace.push_back(r.objective);
    if (r.objective - before < opts.objective_tolerance) break;
  }

  for (std::size_t i = 0; i < K; ++i)
    if (carriers[i].improvement && !(r.pj[i] > 0.0)) r.demoted.push_back(i);
  return r;
}

namespace {

struct PdPoint {
  std::vector<double> ps0;
  AoResult ao;
  double lambda1 = 0.0;
  double objective = 0.0;
};

PdPoint evaluate_split(std::span<const Carrier> j0, std::span<const Carrier> j1, double t,
                       double ps_budget, double pj_budget, const OptimizerOptions& opts) {
  PdPoint p;
  const auto items = source_items(j0);
  const WaterfillResult wf = secure_waterfill(items, t);
  p.ps0 = wf.powers;
  p.lambda1 = j0.empty() ? 0.0 : finite_lambda(wf, items);
  double obj0 = 0.0;
  for (std::size_t i = 0; i < j0.size(); ++i) obj0 += carrier_objective(j0[i], p.ps0[i], 0.0);
  p.ao = alternating_optimization(j1, std::max(0.0, ps_budget - t), pj_budget, opts);
  p.objective = obj0 + p.ao.objective;
  return p;
}

PowerAllocation to_allocation(std::span<const Carrier> j0, std::span<const Carrier> j1,
                              const PdPoint& p, std::size_t subcarriers) {
  PowerAllocation a = PowerAllocation::empty(subcarriers);
  for (std::size_t i = 0; i < j0.size(); ++i) {
    a.owner[j0[i].index] = j0[i].owner;
    a.ps[j0[i].index] = p.ps0[i];
  }
  for (std::size_t i = 0; i < j1.size(); ++i) {
    const Subcarrier n = j1[i].index;
    a.owner[n] = j1[i].owner;
    a.ps[n] = p.ao.ps[i];
    a.pj[n] = p.ao.pj[i];
    a.jammer_active[n] = p.ao.pj[i] > 0.0;
  }
  return a;
}

}  // namespace

PdResult primal_decomposition(std::vector<Carrier> j0, std::vector<Carrier> j1, double ps_budget,
                              double pj_budget, std::size_t subcarriers,
                              const OptimizerOptions& opts) {
  PdResult res;
  if (j1.empty()) {
    const PdPoint p = evaluate_split(j0, j1, ps_budget, ps_budget, pj_budget, opts);
    res.allocation = to_allocation(j0, j1, p, subcarriers);
    res.objective = p.objective;
    res.trace.push_back({0, ps_budget, p.lambda1, 0.0, p.objective});
    return res;
  }

  const double total = static_cast<double>(j0.size() + j1.size());
  double t = ps_budget * static_cast<double>(j0.size()) / total;
  // Bracket on the optimal split, tightened by the sign of lambda2 - lambda1.
  double t_lo = 0.0, t_hi = ps_budget;
  double prev_obj = -kInf;
  bool have_best = false;
  int step = 0;

  for (int k = 1; k <= opts.max_pd_iterations; ++k) {
    res.stats.pd_iterations = k;
    const PdPoint p = evaluate_split(j0, j1, t, ps_budget, pj_budget, opts);
    res.stats.ao_iterations += p.ao.iterations;
    res.stats.subgradient_steps += p.ao.subgradient_steps;
    const double l1 = p.lambda1, l2 = p.ao.lambda;
    res.trace.push_back({k, t, l1, l2, p.objective});
    if (!have_best || p.objective > res.objective) {
      res.allocation = to_allocation(j0, j1, p, subcarriers);
      res.objective = p.objective;
      have_best = true;
    }

    if (!p.ao.demoted.empty()) {
      // Jamming no longer pays on these carriers: move them to the unjammed
      // set and restart the split search on the smaller problem.
      std::vector<Carrier> keep;
      for (std::size_t i = 0, d = 0; i < j1.size(); ++i) {
        if (d < p.ao.demoted.size() && p.ao.demoted[d] == i) {
          j0.push_back(j1[i]);
          ++d;
        } else {
          keep.push_back(j1[i]);
        }
      }
      j1 = std::move(keep);
      if (j1.empty()) {
        const PdPoint q = evaluate_split(j0, j1, ps_budget, ps_budget, pj_budget, opts);
        res.trace.push_back({k, ps_budget, q.lambda1, 0.0, q.objective});
        if (q.objective > res.objective) {
          res.allocation = to_allocation(j0, j1, q, subcarriers);
          res.objective = q.objective;
        }
        return res;
      }
      t_lo = 0.0;
      t_hi = ps_budget;
      prev_obj = -kInf;
      step = 0;
      continue;
    }

    const double scale = std::max({l1, l2, 1e-300});
    const bool close = std::abs(l2 - l1) <= opts.multiplier_tolerance * std::max({l1, l2, 1.0});
    const bool at_boundary = (t <= 0.0 && l2 > l1) || (t >= ps_budget && l1 > l2);
    const bool narrow = t_hi - t_lo <= 1e-12 * std::max(ps_budget, 1e-300);
    if (std::abs(p.objective - prev_obj) < opts.objective_tolerance && (close || at_boundary || narrow))
      return res;
    if (narrow) break;
    prev_obj = p.objective;

    if (l2 > l1) t_hi = std::min(t_hi, t);
    if (l1 > l2) t_lo = std::max(t_lo, t);
    ++step;
    double next = t - 0.1 * ps_budget * (l2 - l1) / (scale * std::sqrt(static_cast<double>(step)));
    next = std::clamp(next, 0.0, ps_budget);
    if (!(next > t_lo && next < t_hi) && !(next == t_lo && t_lo == 0.0) &&
        !(next == t_hi && t_hi == ps_budget))
      next = 0.5 * (t_lo + t_hi);
    if (next == t) {
      if (close || at_boundary) return res;
      next = 0.5 * (t_lo + t_hi);
    }
    t = next;
  }
  res.stats.converged = false;
  return res;
}

std::vector<double> suboptimal_pj(std::span<const Carrier> carriers, std::span<const double> ps,
                                  double pj_budget, bool midpoint_when_slack) {
  const std::size_t K = carriers.size();
  std::vector<double> pj(K, 0.0);
  std::vector<JammerBounds> bounds(K);
  std::vector<bool> active(K, false);
  double upper_sum = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    bounds[i] = effective_bounds(carriers[i], ps[i]);
    if (carriers[i].improvement && ps[i] <= ps_threshold(carriers[i].link)) continue;
    if (!clampable(bounds[i])) continue;
    active[i] = true;
    upper_sum += bounds[i].upper;
  }

  if (upper_sum <= pj_budget) {
    for (std::size_t i = 0; i < K; ++i) {
      if (!active[i]) continue;
      const JammerBounds& b = bounds[i];
      pj[i] = midpoint_when_slack ? 0.5 * (b.lower + b.upper) : b.upper - clamp_margin(b);
    }
    return pj;
  }

  // Water-fill the log-ratio bound log((s2 + P ge)/(s2 + P gm)) inside the
  // clamped boxes.
  std::vector<WaterfillItem> items;
  std::vector<std::size_t> pos;
  double floor_sum = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    if (!active[i]) continue;
    const JammerBounds& b = bounds[i];
    const double d = clamp_margin(b);
    const LinkGains& l = carriers[i].link;
    WaterfillItem it;
    it.eta = l.sigma2 / l.ge2;
    it.nu = l.sigma2 / l.gm2;
    it.weight = carriers[i].weight;
    it.lower = b.lower > 0.0 ? b.lower + d : 0.0;
    it.upper = b.upper - d;
    items.push_back(it);
    pos.push_back(i);
    floor_sum += it.lower;
  }
  while (floor_sum > pj_budget && !items.empty()) {
    auto worst = std::max_element(items.begin(), items.end(),
                                  [](const auto& a, const auto& b) { return a.lower < b.lower; });
    floor_sum -= worst->lower;
    pos.erase(pos.begin() + (worst - items.begin()));
    items.erase(worst);
  }
  const WaterfillResult wf = secure_waterfill(items, pj_budget);
  for (std::size_t k = 0; k < pos.size(); ++k) pj[pos[k]] = wf.powers[k];
  return pj;
}

}  // namespace secjam
