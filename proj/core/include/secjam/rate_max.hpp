#pragma once

#include <span>
#include <vector>

#include "secjam/channel.hpp"
#include "secjam/power_optimizer.hpp"
#include "secjam/secure_rate.hpp"

namespace secjam {

/// Best-gain owner of every subcarrier (ties to the lowest index).
std::vector<UserId> allocate_subcarriers_best_gain(const ChannelRealization& ch);

/// Strongest |h| among users other than m on n.
UserId strongest_other(UserId m, Subcarrier n, const ChannelRealization& ch);

/// Unjammed (J0) and jammed (J1) subcarriers, with owners and eavesdroppers.
struct SetPartition {
  std::vector<Subcarrier> j0;
  std::vector<Subcarrier> j1;
  std::vector<UserId> owner;
  std::vector<UserId> eavesdropper;

  std::size_t n0() const { return j0.size(); }
  std::size_t n1() const { return j1.size(); }
};

/// n goes to J1 iff the eavesdropper's jammer gain beats the owner's, ps_init
/// clears the source threshold and a jamming region exists. J1 is empty when
/// the jammer budget is zero.
SetPartition partition_sets(std::span<const UserId> owners, const ChannelRealization& ch,
                            std::span<const double> ps_init, double jammer_budget);

/// Best-gain allocation, set partition at equal source power, then primal
/// decomposition with alternating optimisation.
SchemeOutcome jpa(const ChannelRealization& ch, const ScenarioConfig& cfg,
                  const OptimizerOptions& opts = {}, std::vector<PdTraceRow>* trace = nullptr);

/// Sequential variant: unjammed water-filling, then closed-form jammer powers.
SchemeOutcome jpaso(const ChannelRealization& ch, const ScenarioConfig& cfg);

/// Equal source power, equal jammer share over J1 clipped to the bounds.
SchemeOutcome epa_rate(const ChannelRealization& ch, const ScenarioConfig& cfg);

/// Best-gain owners with secure water-filling and no jammer.
SchemeOutcome ospwj(const ChannelRealization& ch, const ScenarioConfig& cfg);

}  // namespace secjam
