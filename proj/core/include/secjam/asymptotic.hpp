#pragma once

#include <span>
#include <vector>

#include "secjam/channel.hpp"
#include "secjam/secure_rate.hpp"

namespace secjam {

enum class AsymptoticMode { NoJammer, Improvement, Snatch, Zero };

struct AsymptoticVerdict {
  UserId main_user = 0;
  UserId eavesdropper = 0;
  AsymptoticMode mode = AsymptoticMode::Zero;
  double limit_rate = 0.0;
};

/// The user whose jammed SNR stays largest as P_j grows without bound:
/// argmax |h|^2/|g|^2, ties to the lowest index.
UserId asymptotic_main_user(Subcarrier n, const ChannelRealization& ch);

/// Limit secure rate of the pair (m, e) as source and jammer power grow.
AsymptoticVerdict asymptotic_pair_rate(UserId m, UserId e, Subcarrier n,
                                       const ChannelRealization& ch);

/// Pair verdict against m's strongest asymptotic eavesdropper (minimum rate).
AsymptoticVerdict asymptotic_user_verdict(UserId m, Subcarrier n, const ChannelRealization& ch);

/// Mode with the larger limit: the unjammed best-gain pair or the jammed
/// asymptotic main user.
AsymptoticVerdict asymptotic_decision(Subcarrier n, const ChannelRealization& ch);

/// R_U(P_S): asymptotic decisions held fixed, unlimited jammer power,
/// source power water-filled across subcarriers.
std::vector<double> rate_upper_curve(const ChannelRealization& ch, const ScenarioConfig& cfg,
                                     std::span<const double> ps_grid);
double rate_upper_bound(const ChannelRealization& ch, const ScenarioConfig& cfg, double ps_budget);

/// Sum of the per-subcarrier limits of the asymptotic decisions.
double rate_limit_sum(const ChannelRealization& ch, std::span<const double> weights);

/// On-demand max-min allocation with an unlimited jammer budget.
SchemeOutcome maxmin_upper_bound(const ChannelRealization& ch, const ScenarioConfig& cfg);

}  // namespace secjam
