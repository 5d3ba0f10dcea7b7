#pragma once

#include <optional>
#include <vector>

#include "secjam/channel.hpp"
#include "secjam/link.hpp"
#include "secjam/types.hpp"

namespace secjam {

/// Open interval (lower, upper) of jammer powers that keeps the main user and
/// the eavesdropper in place.
struct JammerBounds {
  double lower = 0.0;
  double upper = kInf;

  bool feasible() const { return lower < upper; }
  friend bool operator==(const JammerBounds&, const JammerBounds&) = default;
};

// ---- Rate improvement: main user has the larger |h| -----------------------

/// True iff |g_e| > |g_m|. Requires |h_m| > |h_e|.
bool rate_improvement_feasible(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch);

/// Source power above which jamming can raise the secure rate (0 when any
/// positive power will do).
double ps_threshold(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch);
double ps_threshold(const LinkGains& l);

/// Jammer power below which the jammed rate beats the unjammed rate.
double pj_threshold_improve(UserId m, UserId e, Subcarrier n, double ps,
                            const ChannelRealization& ch);
double pj_threshold_improve(const LinkGains& l, double ps);

/// Coefficients of x P^2 + y P + z = 0, the stationarity condition of the
/// pair rate in the jammer power.
struct StationaryQuadratic {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};
StationaryQuadratic stationary_quadratic(const LinkGains& l, double ps);

/// Positive root of the stationarity quadratic, or nullopt when the rate has
/// no interior maximum (it then decreases in P_j from zero).
std::optional<double> stationary_pj(const LinkGains& l, double ps);

/// Unique rate-maximising jammer power P_j^o. Throws std::logic_error when
/// called outside the improvement/snatching regimes.
double optimal_pj(UserId m, UserId e, Subcarrier n, double ps, const ChannelRealization& ch);
double optimal_pj(const LinkGains& l, double ps);

// ---- Subcarrier snatching: main user has the smaller |h| ------------------

/// True iff |g_e|^2 |h_m|^2 > |g_m|^2 |h_e|^2. Requires |h_e| > |h_m|.
bool snatch_feasible(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch);
double pj_threshold_snatch(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch);
double pj_threshold_snatch(const LinkGains& l);

// ---- SNR-reordering bounds -------------------------------------------------

/// Bounds that keep m strongest and e the strongest eavesdropper on n. In
/// the improvement case the upper end is also capped by
/// pj_threshold_improve(ps); a snatching pair takes P_j^{th_s} as its lower
/// end. Infeasible regions come back with lower >= upper.
JammerBounds reorder_bounds(UserId m, UserId e, Subcarrier n, double ps,
                            const ChannelRealization& ch);

/// Same bounds without the improvement threshold (independent of P_s).
JammerBounds identity_bounds(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch);

/// Margin used to keep a clamped jammer power strictly inside its bounds.
double clamp_margin(const JammerBounds& b);

/// Pulls p into (lower, upper) by delta. Throws std::invalid_argument when
/// delta >= (upper - lower) / 2.
double clamp_pj(double p, double lower, double upper, double delta);
inline double clamp_pj(double p, const JammerBounds& b) {
  return clamp_pj(p, b.lower, b.upper, clamp_margin(b));
}

/// True when the interval can hold a clamped value at the default margin.
bool clampable(const JammerBounds& b);

// ---- Tabulated analysis ------------------------------------------------------

struct SnatchOption {
  UserId user = 0;
  double threshold = 0.0;
  JammerBounds bounds;
  double pj_opt = 0.0;
};

/// Everything the per-subcarrier analysis produces at equal source power ps.
struct JammerAnalysisResult {
  Subcarrier subcarrier = 0;
  UserId owner = 0;
  UserId eavesdropper = 0;
  bool improvable = false;
  double ps_threshold = 0.0;
  double pj_threshold_improve = 0.0;
  double pj_opt = 0.0;
  double pj_lower = 0.0;
  double pj_upper = 0.0;
  /// Improvement region exists at this ps (improvable, ps above threshold,
  /// non-empty bounds).
  bool jamming_feasible = false;
  std::vector<bool> snatchable_by;
  std::vector<SnatchOption> snatch_options;
};

JammerAnalysisResult analyze_subcarrier(Subcarrier n, const ChannelRealization& ch, double ps);

}  // namespace secjam
