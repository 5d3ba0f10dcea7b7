#pragma once

// Test-only reference computations. Everything here is written from the
// defining formulas with plain loops; none of it calls the library's
// closed forms.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "secjam/channel.hpp"
#include "secjam/secure_rate.hpp"

namespace oracle {

using secjam::ChannelRealization;
using secjam::PowerAllocation;
using secjam::UserId;

/// log2(1 + ps h^2 / (sigma2 + pj g^2)) with gain magnitudes.
double capacity(double ps, double h, double sigma2, double pj, double g);

/// [C_m - max_{e != m} C_e]^+ on subcarrier n, recomputing every user's SNR.
double secure_rate(const ChannelRealization& ch, std::size_t m, std::size_t n, double ps, double pj);

/// Rate of m against a fixed eavesdropper e (no clamp).
double pinned_rate(const ChannelRealization& ch, std::size_t m, std::size_t e, std::size_t n,
                   double ps, double pj);

/// Per-user secure rates of an allocation.
std::vector<double> user_rates(const ChannelRealization& ch, const PowerAllocation& a);
double weighted_sum(const ChannelRealization& ch, const PowerAllocation& a,
                    std::span<const double> w = {});

/// Argmax of f over lo, lo+step, ..., hi.
std::pair<double, double> grid_argmax(const std::function<double(double)>& f, double lo, double hi,
                                      double step);

/// Central finite difference.
double derivative(const std::function<double(double)>& f, double x, double h = 1e-6);

/// Product of the four linear factors of the jammer stationarity condition,
/// evaluated directly (gain magnitudes).
double quartic_product(double hm, double he, double gm, double ge, double sigma2, double ps,
                       double p);

/// Kolmogorov-Smirnov distance of a sample from a CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// All ways to write `units` as an ordered sum of `parts` non-negative
/// integers, visited one at a time.
void compositions(int units, int parts, const std::function<void(const std::vector<int>&)>& visit);

/// True when jamming n at pj keeps m strictly strongest, keeps e the
/// strongest of the others, and does not lower m's rate against e below its
/// unjammed value. Checked on the SNRs directly.
bool jamming_admissible(const ChannelRealization& ch, UserId m, UserId e, std::size_t n, double ps,
                        double pj);

struct SplitPoint {
  double value = 0.0;
  std::vector<double> ps;
  std::vector<double> pj;
};

/// Best weighted sum rate over a grid: source power split over every
/// subcarrier and jammer power split over the `jammed` ones (with slack), both
/// in steps of budget/units. Rates are true secure rates for the given owners;
/// jammed points must satisfy jamming_admissible against `eavesdropper`.
SplitPoint exhaustive_split(const ChannelRealization& ch, const std::vector<UserId>& owner,
                            const std::vector<UserId>& eavesdropper, const std::vector<bool>& jammed, double ps_budget, double pj_budget,
                            int units, std::span<const double> weights = {});

/// Pattern search from `start`: moves power between pairs of subcarriers
/// (and in or out of the unused budget) with a halving step until no move
/// helps.
SplitPoint polish_split(const ChannelRealization& ch, const std::vector<UserId>& owner,
                        const std::vector<UserId>& eavesdropper, const std::vector<bool>& jammed, double ps_budget, double pj_budget,
                        SplitPoint start, std::span<const double> weights = {});

/// Random channels with gains uniform in [lo, hi] (independent of the
/// library's geometry model).
ChannelRealization random_channels(std::mt19937_64& rng, std::size_t users, std::size_t subcarriers,
                                   double lo = 0.2, double hi = 3.0, double sigma2 = 1.0);

}  // namespace oracle
