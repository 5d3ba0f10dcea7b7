#pragma once

#include <cmath>

namespace secjam {

/// Squared gains of one (main user, eavesdropper) pair on one subcarrier.
struct LinkGains {
  double hm2 = 0.0;
  double he2 = 0.0;
  double gm2 = 0.0;
  double ge2 = 0.0;
  double sigma2 = 1.0;
};

/// SNR with jamming, P_s|h|^2 / (sigma^2 + P_j|g|^2), on squared gains.
inline double snr_sq(double ps, double h2, double sigma2, double pj, double g2) {
  return ps * h2 / (sigma2 + pj * g2);
}

/// Capacity difference of the pinned pair, without the [.]^+ clamp.
inline double pair_rate_raw(const LinkGains& l, double ps, double pj) {
  const double gm = snr_sq(ps, l.hm2, l.sigma2, pj, l.gm2);
  const double ge = snr_sq(ps, l.he2, l.sigma2, pj, l.ge2);
  return (std::log1p(gm) - std::log1p(ge)) / std::log(2.0);
}

inline double pair_rate(const LinkGains& l, double ps, double pj) {
  const double r = pair_rate_raw(l, ps, pj);
  return r > 0.0 ? r : 0.0;
}

/// d(pair_rate_raw)/d(ps) at fixed jammer power.
inline double pair_rate_dps(const LinkGains& l, double ps, double pj) {
  const double a = l.hm2 / (l.sigma2 + pj * l.gm2);
  const double b = l.he2 / (l.sigma2 + pj * l.ge2);
  return (a / (1.0 + ps * a) - b / (1.0 + ps * b)) / std::log(2.0);
}

/// d(pair_rate_raw)/d(pj) at fixed source power.
inline double pair_rate_dpj(const LinkGains& l, double ps, double pj) {
  const double dm = l.sigma2 + pj * l.gm2;
  const double de = l.sigma2 + pj * l.ge2;
  const double te = ps * l.he2 * l.ge2 / (de * (de + ps * l.he2));
  const double tm = ps * l.hm2 * l.gm2 / (dm * (dm + ps * l.hm2));
  return (te - tm) / std::log(2.0);
}

}  // namespace secjam
