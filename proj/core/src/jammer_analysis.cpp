#include "secjam/jammer_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "secjam/secure_rate.hpp"

namespace secjam {

bool rate_improvement_feasible(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch) {
  return ch.g(e, n) > ch.g(m, n);
}

double ps_threshold(const LinkGains& l) {
  const double num = l.sigma2 * (l.gm2 * l.hm2 - l.ge2 * l.he2);
  const double den = (l.ge2 - l.gm2) * l.hm2 * l.he2;
  const double v = num / den;
  return v > 0.0 ? v : 0.0;
}

double ps_threshold(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch) {
  return ps_threshold(link_gains(m, e, n, ch));
}

double pj_threshold_improve(const LinkGains& l, double ps) {
  const double alpha = (l.ge2 - l.gm2) * l.hm2 * l.he2;
  const double beta = l.ge2 * l.he2 - l.gm2 * l.hm2;
  return (ps * alpha + l.sigma2 * beta) / (l.gm2 * l.ge2 * (l.hm2 - l.he2));
}

double pj_threshold_improve(UserId m, UserId e, Subcarrier n, double ps,
                            const ChannelRealization& ch) {
  return pj_threshold_improve(link_gains(m, e, n, ch), ps);
}

StationaryQuadratic stationary_quadratic(const LinkGains& l, double ps) {
  const double s2 = l.sigma2;
  StationaryQuadratic q;
  q.x = l.gm2 * l.ge2 * (l.gm2 * l.he2 - l.ge2 * l.hm2);
  q.y = 2.0 * s2 * l.gm2 * l.ge2 * (l.he2 - l.hm2);
  q.z = s2 * ps * l.hm2 * l.he2 * (l.ge2 - l.gm2) + s2 * s2 * (l.ge2 * l.he2 - l.gm2 * l.hm2);
  return q;
}

namespace {

// Positive root where the quadratic (the sign of the rate derivative) turns
// from positive to negative.
std::optional<double> falling_root(const StationaryQuadratic& q) {
  if (q.x == 0.0) {
    if (q.y < 0.0 && q.z > 0.0) return -q.z / q.y;
    return std::nullopt;
  }
  const double disc = q.y * q.y - 4.0 * q.x * q.z;
  if (disc < 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  const double qq = -0.5 * (q.y + (q.y >= 0.0 ? s : -s));
  double r[2] = {qq / q.x, qq != 0.0 ? q.z / qq : 0.0};
  std::optional<double> best;
  for (double root : r) {
    if (!(root > 0.0) || !std::isfinite(root)) continue;
    // Derivative of x P^2 + y P + z at the root must be negative.
    if (2.0 * q.x * root + q.y < 0.0 && (!best || root > *best)) best = root;
  }
  return best;
}

}  // namespace

std::optional<double> stationary_pj(const LinkGains& l, double ps) {
  if (!(ps > 0.0)) return std::nullopt;
  return falling_root(stationary_quadratic(l, ps));
}

double optimal_pj(const LinkGains& l, double ps) {
  const auto q = stationary_quadratic(l, ps);
  if (!(q.x < 0.0 && q.z > 0.0))
    throw std::logic_error("optimal_pj: pair is outside the improvement/snatching regimes");
  const auto root = falling_root(q);
  if (!root) throw std::logic_error("optimal_pj: no positive stationary point");
  return *root;
}

double optimal_pj(UserId m, UserId e, Subcarrier n, double ps, const ChannelRealization& ch) {
  return optimal_pj(link_gains(m, e, n, ch), ps);
}

bool snatch_feasible(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch) {
  return ch.g2(e, n) * ch.h2(m, n) > ch.g2(m, n) * ch.h2(e, n);
}

double pj_threshold_snatch(const LinkGains& l) {
  return l.sigma2 * (l.he2 - l.hm2) / (l.ge2 * l.hm2 - l.gm2 * l.he2);
}

double pj_threshold_snatch(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch) {
  return pj_threshold_snatch(link_gains(m, e, n, ch));
}

namespace {

// Adds the constraint snr'(a) > snr'(b), i.e.
// P (h_a g_b - h_b g_a) > sigma^2 (h_b - h_a), on squared gains.
void add_order(JammerBounds& b, UserId a, UserId bb, Subcarrier n, const ChannelRealization& ch) {
  const double coef = ch.h2(a, n) * ch.g2(bb, n) - ch.h2(bb, n) * ch.g2(a, n);
  const double rhs = ch.noise_variance * (ch.h2(bb, n) - ch.h2(a, n));
  if (coef > 0.0) {
    b.lower = std::max(b.lower, rhs / coef);
  } else if (coef < 0.0) {
    b.upper = std::min(b.upper, rhs / coef);
  } else if (!(rhs < 0.0)) {
    b.upper = std::min(b.upper, b.lower);
  }
}

}  // namespace

JammerBounds identity_bounds(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch) {
  JammerBounds b;
  add_order(b, m, e, n, ch);
  for (UserId k = 0; k < ch.users(); ++k)
    if (k != m && k != e) add_order(b, e, k, n, ch);
  return b;
}

JammerBounds reorder_bounds(UserId m, UserId e, Subcarrier n, double ps,
                            const ChannelRealization& ch) {
  JammerBounds b = identity_bounds(m, e, n, ch);
  if (ch.h(m, n) > ch.h(e, n)) {
    b.upper = std::min(b.upper, pj_threshold_improve(m, e, n, ps, ch));
  }
  return b;
}

double clamp_margin(const JammerBounds& b) {
  const double ref = std::isfinite(b.upper) ? b.upper : b.lower;
  return 1e-6 * std::max(1.0, ref);
}

double clamp_pj(double p, double lower, double upper, double delta) {
  if (!(delta < (upper - lower) / 2.0))
    throw std::invalid_argument("clamp_pj: degenerate jammer power interval");
  if (p < lower) return lower + delta;
  if (p > upper) return upper - delta;
  return p;
}

bool clampable(const JammerBounds& b) {
  return b.feasible() && clamp_margin(b) < (b.upper - b.lower) / 2.0;
}

JammerAnalysisResult analyze_subcarrier(Subcarrier n, const ChannelRealization& ch, double ps) {
  const std::size_t M = ch.users();
  JammerAnalysisResult r;
  r.subcarrier = n;
  UserId m = 0;
  for (UserId u = 1; u < M; ++u)
    if (ch.h(u, n) > ch.h(m, n)) m = u;
  UserId e = m == 0 ? 1 : 0;
  for (UserId u = 0; u < M; ++u)
    if (u != m && ch.h(u, n) > ch.h(e, n)) e = u;
  r.owner = m;
  r.eavesdropper = e;

  const LinkGains l = link_gains(m, e, n, ch);
  r.improvable = rate_improvement_feasible(m, e, n, ch);
  const JammerBounds b = reorder_bounds(m, e, n, ps, ch);
  r.pj_lower = b.lower;
  r.pj_upper = b.upper;
  if (r.improvable) {
    r.ps_threshold = ps_threshold(l);
    r.pj_threshold_improve = pj_threshold_improve(l, ps);
    if (ps > r.ps_threshold) r.pj_opt = optimal_pj(l, ps);
    r.jamming_feasible = ps > r.ps_threshold && b.feasible();
  }

  r.snatchable_by.assign(M, false);
  for (UserId u = 0; u < M; ++u) {
    if (u == m || !snatch_feasible(u, m, n, ch)) continue;
    r.snatchable_by[u] = true;
    const LinkGains lu = link_gains(u, m, n, ch);
    SnatchOption opt;
    opt.user = u;
    opt.threshold = pj_threshold_snatch(lu);
    opt.bounds = identity_bounds(u, m, n, ch);
    opt.pj_opt = stationary_pj(lu, ps).value_or(0.0);
    r.snatch_options.push_back(opt);
  }
  return r;
}

}  // namespace secjam
