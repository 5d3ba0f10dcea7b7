#pragma once

#include <span>
#include <vector>

#include "secjam/types.hpp"

namespace secjam {

/// One term w*[log2(1+p/eta) - log2(1+p/nu)] of a secure water-filling
/// problem, optionally boxed to [lower, upper].
struct WaterfillItem {
  double eta = 1.0;
  double nu = 1.0;
  double weight = 1.0;
  double lower = 0.0;
  double upper = kInf;
};

struct WaterfillResult {
  std::vector<double> powers;
  /// Budget multiplier; +inf when the budget is zero, 0 when it is slack.
  double lambda = 0.0;
};

/// max(0, 1/2 [sqrt((nu-eta)^2 + kappa (nu-eta)) - (nu+eta)]).
double waterfill_level(double eta, double nu, double kappa);

/// Marginal utility of an item at power p.
double waterfill_marginal(const WaterfillItem& item, double p);

/// Utility of an item at power p (no clamp to zero).
double waterfill_utility(const WaterfillItem& item, double p);

/// Power the item takes at multiplier lambda (box-clamped).
double waterfill_power(const WaterfillItem& item, double lambda);

/// Maximises the sum of utilities subject to sum(p) <= budget and the boxes.
/// Items with nu <= eta stay at their lower bound. The multiplier is found
/// by bisection; the powers meet the budget to 1e-8 relative when it binds.
WaterfillResult secure_waterfill(std::span<const WaterfillItem> items, double budget);

/// Smallest multiplier at which every item sits at its lower bound.
double price_at_lower(std::span<const WaterfillItem> items);

}  // namespace secjam
