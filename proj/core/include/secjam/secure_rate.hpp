#pragma once

#include <optional>
#include <span>
#include <vector>

#include "secjam/channel.hpp"
#include "secjam/link.hpp"

namespace secjam {

/// Per-subcarrier source/jammer powers and ownership.
struct PowerAllocation {
  std::vector<double> ps;
  std::vector<double> pj;
  std::vector<std::optional<UserId>> owner;
  std::vector<bool> jammer_active;

  static PowerAllocation empty(std::size_t subcarriers);

  std::size_t size() const { return ps.size(); }
  double source_total() const;
  double jammer_total() const;
  /// Jammer power that actually reaches the users on n.
  double effective_pj(Subcarrier n) const { return jammer_active[n] ? pj[n] : 0.0; }

  friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;
};

/// Floating-point slack allowed on the budget constraints.
inline double budget_tolerance(double budget) { return 1e-9 * budget; }

/// Checks the PowerAllocation invariants against the budgets; returns an
/// empty string when they hold, otherwise a description of the first breach.
std::string check_allocation(const PowerAllocation& alloc, std::size_t users, double source_budget,
                             double jammer_budget);

struct IterationStats {
  int pd_iterations = 0;
  int ao_iterations = 0;
  int subgradient_steps = 0;
  int maxmin_iterations = 0;
  bool converged = true;
};

struct SchemeOutcome {
  std::vector<double> user_rates;
  double sum_weighted_rate = 0.0;
  double fairness_gap = 0.0;
  PowerAllocation allocation;
  IterationStats iterations;
};

/// Jammed SNR of one user on one subcarrier (gain magnitudes, not squares).
double snr(double ps, double h, double sigma2, double pj, double g);

/// Strongest eavesdropper of m on n; ties go to the lowest index.
UserId eavesdropper_of(UserId m, Subcarrier n, const PowerAllocation& alloc,
                       const ChannelRealization& ch);

/// [log2(1+snr_m) - max_e log2(1+snr_e)]^+ on n.
double secure_rate(UserId m, Subcarrier n, const PowerAllocation& alloc,
                   const ChannelRealization& ch);

/// Secure rate of each user summed over the subcarriers it owns.
std::vector<double> per_user_rates(const PowerAllocation& alloc, const ChannelRealization& ch);

double sum_weighted_rate(const PowerAllocation& alloc, const ChannelRealization& ch,
                         std::span<const double> weights);

/// (R_max - R_min) / R_max, zero when every rate is zero.
double fairness_gap(std::span<const double> rates);
inline double fairness_index(std::span<const double> rates) { return 1.0 - fairness_gap(rates); }

SchemeOutcome make_outcome(PowerAllocation alloc, const ChannelRealization& ch,
                           std::span<const double> weights, IterationStats stats = {});

/// Squared gains of the pair (m, e) on n.
LinkGains link_gains(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch);

}  // namespace secjam
