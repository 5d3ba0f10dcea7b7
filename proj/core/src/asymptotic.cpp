#include "secjam/asymptotic.hpp"

#include <algorithm>
#include <cmath>

#include "root_find.hpp"
#include "secjam/jammer_analysis.hpp"
#include "secjam/maxmin.hpp"
#include "secjam/rate_max.hpp"

namespace secjam {

UserId asymptotic_main_user(Subcarrier n, const ChannelRealization& ch) {
  UserId best = 0;
  for (UserId m = 1; m < ch.users(); ++m)
    if (ch.h2(m, n) / ch.g2(m, n) > ch.h2(best, n) / ch.g2(best, n)) best = m;
  return best;
}

AsymptoticVerdict asymptotic_pair_rate(UserId m, UserId e, Subcarrier n,
                                       const ChannelRealization& ch) {
  AsymptoticVerdict v;
  v.main_user = m;
  v.eavesdropper = e;
  const double jammed = std::log2(ch.g2(e, n) * ch.h2(m, n) / (ch.g2(m, n) * ch.h2(e, n)));
  if (ch.h(m, n) > ch.h(e, n)) {
    if (ch.g(m, n) >= ch.g(e, n)) {
      v.mode = AsymptoticMode::NoJammer;
      v.limit_rate = std::log2(ch.h2(m, n) / ch.h2(e, n));
    } else {
      v.mode = AsymptoticMode::Improvement;
      v.limit_rate = jammed;
    }
  } else if (snatch_feasible(m, e, n, ch)) {
    v.mode = AsymptoticMode::Snatch;
    v.limit_rate = jammed;
  } else {
    v.mode = AsymptoticMode::Zero;
    v.limit_rate = 0.0;
  }
  return v;
}

AsymptoticVerdict asymptotic_user_verdict(UserId m, Subcarrier n, const ChannelRealization& ch) {
  AsymptoticVerdict worst;
  bool first = true;
  for (UserId e = 0; e < ch.users(); ++e) {
    if (e == m) continue;
    const AsymptoticVerdict v = asymptotic_pair_rate(m, e, n, ch);
    if (first || v.limit_rate < worst.limit_rate) {
      worst = v;
      first = false;
    }
  }
  return worst;
}

AsymptoticVerdict asymptotic_decision(Subcarrier n, const ChannelRealization& ch) {
  UserId b = 0;
  for (UserId m = 1; m < ch.users(); ++m)
    if (ch.h(m, n) > ch.h(b, n)) b = m;
  AsymptoticVerdict plain;
  plain.main_user = b;
  plain.eavesdropper = strongest_other(b, n, ch);
  plain.mode = AsymptoticMode::NoJammer;
  plain.limit_rate = std::log2(ch.h2(b, n) / ch.h2(plain.eavesdropper, n));
  const AsymptoticVerdict jammed = asymptotic_user_verdict(asymptotic_main_user(n, ch), n, ch);
  return jammed.limit_rate > plain.limit_rate ? jammed : plain;
}

namespace {

// Rate of a fixed decision at source power p with the jammer at its
// unconstrained optimum.
struct DecisionCurve {
  LinkGains link;
  double weight = 1.0;
  bool jammed = false;
  bool zero = false;

  double jammer(double p) const {
    if (!jammed) return 0.0;
    return stationary_pj(link, p).value_or(0.0);
  }
  double rate(double p) const { return zero ? 0.0 : weight * pair_rate(link, p, jammer(p)); }
  // Envelope derivative: the jammer is stationary, so only d/dps remains.
  double marginal(double p) const {
    if (zero) return 0.0;
    const double pj = jammer(p);
    if (pair_rate_raw(link, p, pj) < 0.0) return 0.0;
    return std::max(0.0, weight * pair_rate_dps(link, p, pj));
  }
};

std::vector<DecisionCurve> decision_curves(const ChannelRealization& ch, const ScenarioConfig& cfg) {
  std::vector<DecisionCurve> out;
  for (Subcarrier n = 0; n < ch.subcarriers(); ++n) {
    const AsymptoticVerdict v = asymptotic_decision(n, ch);
    DecisionCurve c;
    c.link = link_gains(v.main_user, v.eavesdropper, n, ch);
    c.weight = cfg.weight(v.main_user);
    c.jammed = v.mode == AsymptoticMode::Improvement || v.mode == AsymptoticMode::Snatch;
    c.zero = v.mode == AsymptoticMode::Zero;
    out.push_back(c);
  }
  return out;
}

// Largest p with marginal(p) >= lambda.
double power_at_price(const DecisionCurve& c, double lambda) {
  if (c.zero || !(c.marginal(0.0) > lambda)) {
    // Snatch curves start flat; look a little further before giving up.
    if (!c.jammed || !(c.marginal(1e-9) > lambda)) return 0.0;
  }
  double lo = 0.0, hi = 1.0;
  while (c.marginal(hi) > lambda) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return hi;
  }
  auto f = [&](double p) { return c.marginal(p) - lambda; };
  const double flo = f(lo), fhi = f(hi);
  if (!(flo > 0.0)) return lo;
  const auto br = detail::bracket_root(f, lo, hi, flo, fhi, 1e-13 * hi);
  return br.first;
}

double upper_bound_at(const std::vector<DecisionCurve>& curves, double budget) {
  if (!(budget > 0.0)) return 0.0;
  auto fill = [&](double lambda, std::vector<double>* p) {
    double s = 0.0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const double x = power_at_price(curves[i], lambda);
      if (p) (*p)[i] = x;
      s += x;
    }
    return s;
  };
  double price = 0.0;
  for (const auto& c : curves) price = std::max({price, c.marginal(0.0), c.marginal(1e-9)});
  if (!(price > 0.0)) return 0.0;
  double hi = std::log(price) + 1.0;
  double lo = hi;
  double f_lo = 0.0;
  do {
    lo -= 2.0;
    f_lo = fill(std::exp(lo), nullptr) - budget;
  } while (f_lo <= 0.0 && lo > -700.0);
  const double f_hi = fill(std::exp(hi), nullptr) - budget;
  if (f_hi < 0.0 && f_lo > 0.0) {
    const auto br = detail::bracket_root([&](double s) { return fill(std::exp(s), nullptr) - budget; },
                                         lo, hi, f_lo, f_hi, 1e-12 * std::max(1.0, std::abs(hi)));
    hi = br.second;
  }
  std::vector<double> p(curves.size());
  const double used = fill(std::exp(hi), &p);
  // Hand any slack to the steepest curve so the budget is spent.
  if (used < budget) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < curves.size(); ++i)
      if (curves[i].marginal(p[i]) > curves[best].marginal(p[best])) best = i;
    p[best] += budget - used;
  }
  double r = 0.0;
  for (std::size_t i = 0; i < curves.size(); ++i) r += curves[i].rate(p[i]);
  return r;
}

}  // namespace

std::vector<double> rate_upper_curve(const ChannelRealization& ch, const ScenarioConfig& cfg,
                                     std::span<const double> ps_grid) {
  const auto curves = decision_curves(ch, cfg);
  std::vector<double> out;
  out.reserve(ps_grid.size());
  for (double ps : ps_grid) out.push_back(upper_bound_at(curves, ps));
  return out;
}

double rate_upper_bound(const ChannelRealization& ch, const ScenarioConfig& cfg, double ps_budget) {
  return upper_bound_at(decision_curves(ch, cfg), ps_budget);
}

double rate_limit_sum(const ChannelRealization& ch, std::span<const double> weights) {
  double s = 0.0;
  for (Subcarrier n = 0; n < ch.subcarriers(); ++n) {
    const AsymptoticVerdict v = asymptotic_decision(n, ch);
    s += (weights.empty() ? 1.0 : weights[v.main_user]) * v.limit_rate;
  }
  return s;
}

SchemeOutcome maxmin_upper_bound(const ChannelRealization& ch, const ScenarioConfig& cfg) {
  FairnessState s = init_fairness_state(ch, cfg, JammerPolicy::Oda, true);
  return maxmin_loop(s, JammerPolicy::Oda, ch, cfg);
}

}  // namespace secjam
