#pragma once

#include <string_view>
#include <vector>

#include "secjam/channel.hpp"
#include "secjam/jammer_analysis.hpp"
#include "secjam/power_optimizer.hpp"
#include "secjam/secure_rate.hpp"

namespace secjam {

/// How snatching is paid for and how powers are re-optimised.
enum class JammerPolicy {
  Pfa,    ///< equal per-subcarrier reserve, joint PD+AO re-optimisation
  Oda,    ///< first come first serve, joint re-optimisation
  Pfaso,  ///< equal reserve, sequential closed-form powers
  Odaso,  ///< first come first serve, no power optimisation
  Equal,  ///< equal source power, equal jammer reserve (EPA baseline)
  None,   ///< no jammer: per-user source water-filling only (OSPWJ baseline)
};

std::string_view to_string(JammerPolicy p);

struct SnatchCandidate {
  Subcarrier subcarrier = 0;
  UserId best_user = 0;
  double threshold = 0.0;
  JammerBounds bounds;
};

struct FairnessState {
  std::vector<bool> active;                 // U
  std::vector<bool> unallocated;            // C
  std::vector<std::vector<Subcarrier>> best;       // B_m
  std::vector<std::vector<SnatchCandidate>> snatch;  // S_m
  std::vector<std::vector<Subcarrier>> allocated_best;     // Ab_m
  std::vector<std::vector<Subcarrier>> allocated_snatched;  // As_m
  std::vector<double> rates;                // R_m
  PowerAllocation alloc;
  std::vector<UserId> eavesdropper;         // pinned per allocated subcarrier
  std::vector<JammerBounds> bounds;         // pinned identity bounds per snatched subcarrier
  std::vector<double> committed;            // jammer power committed per user
  double pj_leftover = 0.0;
  double ps_equal = 0.0;
  double pj_equal = 0.0;
  int iterations = 0;
};

FairnessState init_fairness_state(const ChannelRealization& ch, const ScenarioConfig& cfg,
                                  JammerPolicy policy, bool unbounded_jammer = false);

/// Greedy max-min loop: serve the minimum-rate active user from its best
/// subcarriers, then by snatching, otherwise retire it.
SchemeOutcome maxmin_loop(FairnessState& state, JammerPolicy policy,
                          const ChannelRealization& ch, const ScenarioConfig& cfg,
                          const OptimizerOptions& opts = {});

SchemeOutcome maxmin(const ChannelRealization& ch, const ScenarioConfig& cfg, JammerPolicy policy,
                     const OptimizerOptions& opts = {});

/// P_J/N reserve covers the snatch of candidate `c`.
bool pfa_budget_check(const SnatchCandidate& c, const FairnessState& state);

/// Committed-plus-leftover budget covers P_j^* on all of v's snatched
/// subcarriers plus the candidate.
bool oda_budget_policy(UserId v, const SnatchCandidate& c, const FairnessState& state,
                       const ChannelRealization& ch);

}  // namespace secjam
