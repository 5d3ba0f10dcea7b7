#include "secjam/waterfill.hpp"

#include "root_find.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace secjam {

double waterfill_level(double eta, double nu, double kappa) {
  const double d = nu - eta;
  if (!(d > 0.0)) return 0.0;
  const double p = 0.5 * (std::sqrt(d * d + kappa * d) - (nu + eta));
  return p > 0.0 ? p : 0.0;
}

double waterfill_marginal(const WaterfillItem& it, double p) {
  return it.weight * (it.nu - it.eta) / (std::numbers::ln2 * (it.eta + p) * (it.nu + p));
}

double waterfill_utility(const WaterfillItem& it, double p) {
  return it.weight * (std::log1p(p / it.eta) - std::log1p(p / it.nu)) / std::numbers::ln2;
}

namespace {

bool useful(const WaterfillItem& it) { return it.nu > it.eta && it.upper > it.lower; }

}  // namespace

double waterfill_power(const WaterfillItem& it, double lambda) {
  if (!useful(it) || lambda == kInf) return it.lower;
  if (!(lambda > 0.0)) return it.upper;
  const double kappa = 4.0 * it.weight / (lambda * std::numbers::ln2);
  return std::clamp(waterfill_level(it.eta, it.nu, kappa), it.lower, it.upper);
}

double price_at_lower(std::span<const WaterfillItem> items) {
  double price = 0.0;
  for (const auto& it : items)
    if (useful(it)) price = std::max(price, waterfill_marginal(it, it.lower));
  return price;
}

WaterfillResult secure_waterfill(std::span<const WaterfillItem> items, double budget) {
  if (!(budget >= 0.0)) throw std::invalid_argument("secure_waterfill: negative budget");
  WaterfillResult res;
  res.powers.resize(items.size());
  double floor_sum = 0.0;
  for (const auto& it : items) {
    if (!(it.eta > 0.0) || !(it.nu > 0.0) || !(it.lower >= 0.0) || it.lower > it.upper)
      throw std::invalid_argument("secure_waterfill: malformed item");
    floor_sum += it.lower;
  }
  if (floor_sum > budget * (1.0 + 1e-12))
    throw std::invalid_argument("secure_waterfill: lower bounds exceed the budget");

  auto fill = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      res.powers[i] = waterfill_power(items[i], lambda);
      s += res.powers[i];
    }
    return s;
  };

  const double hi_price = price_at_lower(items);
  if (budget <= floor_sum) {
    fill(kInf);
    res.lambda = kInf;
    return res;
  }
  if (!(hi_price > 0.0)) {
    fill(kInf);
    res.lambda = 0.0;
    return res;
  }
  if (fill(0.0) <= budget) {
    res.lambda = 0.0;
    return res;
  }

  // Work in log(lambda): the filled power is smooth and decreasing there.
  double hi = std::log(hi_price);
  double lo = hi;
  double f_lo = 0.0;
  do {
    lo -= 1.0;
    f_lo = fill(std::exp(lo)) - budget;
  } while (f_lo <= 0.0);
  const double f_hi = fill(hi_price) - budget;
  if (f_hi < 0.0) {
    const auto br = detail::bracket_root([&](double s) { return fill(std::exp(s)) - budget; }, lo,
                                         hi, f_lo, f_hi, 1e-14 * std::max(1.0, std::abs(hi)));
    hi = br.second;
  }
  hi = std::exp(hi);
  fill(hi);
  res.lambda = hi;
  return res;
}

}  // namespace secjam
