#include "secjam/secure_rate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace secjam {

PowerAllocation PowerAllocation::empty(std::size_t subcarriers) {
  return {std::vector<double>(subcarriers, 0.0), std::vector<double>(subcarriers, 0.0),
          std::vector<std::optional<UserId>>(subcarriers), std::vector<bool>(subcarriers, false)};
}

double PowerAllocation::source_total() const {
  double s = 0.0;
  for (double v : ps) s += v;
  return s;
}

double PowerAllocation::jammer_total() const {
  double s = 0.0;
  for (std::size_t n = 0; n < pj.size(); ++n) s += effective_pj(n);
  return s;
}

std::string check_allocation(const PowerAllocation& a, std::size_t users, double source_budget,
                             double jammer_budget) {
  const std::size_t N = a.ps.size();
  if (a.pj.size() != N || a.owner.size() != N || a.jammer_active.size() != N)
    return "allocation vectors have different lengths";
  for (std::size_t n = 0; n < N; ++n) {
    if (!(a.ps[n] >= 0.0) || !std::isfinite(a.ps[n]))
      return "negative or non-finite source power on subcarrier " + std::to_string(n);
    if (!(a.pj[n] >= 0.0) || !std::isfinite(a.pj[n]))
      return "negative or non-finite jammer power on subcarrier " + std::to_string(n);
    if (a.owner[n] && *a.owner[n] >= users) return "owner out of range on subcarrier " + std::to_string(n);
    if (!a.owner[n] && a.ps[n] > 0.0)
      return "unowned subcarrier " + std::to_string(n) + " carries source power";
    if (!a.jammer_active[n] && a.pj[n] > 0.0)
      return "inactive jammer carries power on subcarrier " + std::to_string(n);
    if (!a.owner[n] && a.jammer_active[n])
      return "jammer active on unowned subcarrier " + std::to_string(n);
  }
  if (a.source_total() > source_budget + budget_tolerance(source_budget)) {
    std::ostringstream os;
    os << "source budget exceeded: " << a.source_total() << " > " << source_budget;
    return os.str();
  }
  if (a.jammer_total() > jammer_budget + budget_tolerance(jammer_budget)) {
    std::ostringstream os;
    os << "jammer budget exceeded: " << a.jammer_total() << " > " << jammer_budget;
    return os.str();
  }
  return {};
}

double snr(double ps, double h, double sigma2, double pj, double g) {
  return ps * h * h / (sigma2 + pj * g * g);
}

UserId eavesdropper_of(UserId m, Subcarrier n, const PowerAllocation& alloc,
                       const ChannelRealization& ch) {
  const double pj = alloc.effective_pj(n);
  const double sigma2 = ch.noise_variance;
  UserId best = m == 0 ? 1 : 0;
  double best_snr = -1.0;
  for (UserId e = 0; e < ch.users(); ++e) {
    if (e == m) continue;
    // Compare the unscaled SNR so a zero source power still ranks users.
    const double s = snr(1.0, ch.h(e, n), sigma2, pj, ch.g(e, n));
    if (s > best_snr) {
      best_snr = s;
      best = e;
    }
  }
  return best;
}

double secure_rate(UserId m, Subcarrier n, const PowerAllocation& alloc,
                   const ChannelRealization& ch) {
  const UserId e = eavesdropper_of(m, n, alloc, ch);
  return pair_rate(link_gains(m, e, n, ch), alloc.ps[n], alloc.effective_pj(n));
}

std::vector<double> per_user_rates(const PowerAllocation& alloc, const ChannelRealization& ch) {
  std::vector<double> rates(ch.users(), 0.0);
  for (Subcarrier n = 0; n < alloc.size(); ++n)
    if (alloc.owner[n]) rates[*alloc.owner[n]] += secure_rate(*alloc.owner[n], n, alloc, ch);
  return rates;
}

double sum_weighted_rate(const PowerAllocation& alloc, const ChannelRealization& ch,
                         std::span<const double> weights) {
  const auto rates = per_user_rates(alloc, ch);
  double s = 0.0;
  for (std::size_t m = 0; m < rates.size(); ++m) s += (weights.empty() ? 1.0 : weights[m]) * rates[m];
  return s;
}

double fairness_gap(std::span<const double> rates) {
  if (rates.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
  if (!(*hi > 0.0)) return 0.0;
  return (*hi - *lo) / *hi;
}

SchemeOutcome make_outcome(PowerAllocation alloc, const ChannelRealization& ch,
                           std::span<const double> weights, IterationStats stats) {
  SchemeOutcome out;
  out.user_rates = per_user_rates(alloc, ch);
  for (std::size_t m = 0; m < out.user_rates.size(); ++m)
    out.sum_weighted_rate += (weights.empty() ? 1.0 : weights[m]) * out.user_rates[m];
  out.fairness_gap = fairness_gap(out.user_rates);
  out.allocation = std::move(alloc);
  out.iterations = stats;
  return out;
}

LinkGains link_gains(UserId m, UserId e, Subcarrier n, const ChannelRealization& ch) {
  return {ch.h2(m, n), ch.h2(e, n), ch.g2(m, n), ch.g2(e, n), ch.noise_variance};
}

}  // namespace secjam
