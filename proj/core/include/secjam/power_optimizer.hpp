#pragma once

#include <span>
#include <vector>

#include "secjam/jammer_analysis.hpp"
#include "secjam/link.hpp"
#include "secjam/secure_rate.hpp"
#include "secjam/waterfill.hpp"

namespace secjam {

/// A subcarrier taking part in a power optimisation, with its pinned main
/// user and eavesdropper.
struct Carrier {
  Subcarrier index = 0;
  UserId owner = 0;
  UserId eavesdropper = 0;
  LinkGains link;
  double weight = 1.0;
  /// Identity-preservation bounds (no improvement threshold). J1 only.
  JammerBounds identity;
  /// Improvement regime (|h_m| > |h_e|) vs. snatching.
  bool improvement = true;
  /// Extra per-subcarrier jammer cap (proactively fair reserve).
  double jammer_cap = kInf;
};

Carrier make_carrier(Subcarrier n, UserId m, UserId e, const ChannelRealization& ch, double weight);

/// Bounds in force at source power ps: identity bounds, the improvement
/// threshold (improvement regime) and the jammer cap.
JammerBounds effective_bounds(const Carrier& c, double ps);

/// Clamped rate-maximising jammer power P_j^* at ps; zero when no jamming
/// region exists.
double clamped_optimal_pj(const Carrier& c, double ps);

double carrier_objective(const Carrier& c, double ps, double pj);

// ---- Quartic stationarity condition under a jammer budget -----------------

/// Both sides of (mu ln2 / w) (a P^4 + b P^3 + c P^2 + d P + e)
///                 = P_s (c' P^2 + d' P + e').
struct QuarticCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
  double cp = 0.0;
  double dp = 0.0;
  double ep = 0.0;
};

QuarticCoeffs quartic_coeffs(const LinkGains& l, double ps);

/// (mu ln2 / w) * quartic(P) - ps * quadratic(P).
double quartic_residual(const QuarticCoeffs& q, double ps, double mu, double weight, double p);

/// Root of the quartic condition in (lower, upper) where upper = P_j^*.
/// Returns `lower` when the price exceeds the marginal gain at `lower` and
/// `upper` when it is below the marginal gain at `upper`. Throws
/// std::invalid_argument on an inverted bracket.
double solve_quartic_root(const QuarticCoeffs& q, double ps, double mu, double weight,
                          double lower, double upper);

struct JammerAllocation {
  std::vector<double> pj;
  double mu = 0.0;
  int steps = 0;
  bool budget_binding = false;
};

/// Jammer powers for fixed source powers: P_j^* everywhere when the budget
/// allows, otherwise the budget-priced roots P_j^diamond.
JammerAllocation allocate_pj_fixed_ps(std::span<const Carrier> carriers,
                                      std::span<const double> ps, double pj_budget);

struct OptimizerOptions {
  int max_pd_iterations = 50;
  int max_ao_iterations = 30;
  double objective_tolerance = 1e-6;
  double multiplier_tolerance = 1e-4;
};

struct AoResult {
  std::vector<double> ps;
  std::vector<double> pj;
  double lambda = 0.0;
  double objective = 0.0;
  std::vector<double> trace;
  /// Positions (into the carrier span) whose jammer power ended at zero.
  std::vector<std::size_t> demoted;
  int iterations = 0;
  int subgradient_steps = 0;
};

/// Alternates jammer allocation at fixed source power with secure
/// water-filling at fixed jammer power, starting from equal source power.
AoResult alternating_optimization(std::span<const Carrier> carriers, double ps_budget,
                                  double pj_budget, const OptimizerOptions& opts = {});

struct PdTraceRow {
  int iter = 0;
  double t = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double objective = 0.0;
};

struct PdResult {
  PowerAllocation allocation;
  double objective = 0.0;
  IterationStats stats;
  std::vector<PdTraceRow> trace;
};

/// Primal decomposition over the source budget split t between the unjammed
/// set j0 and the jammed set j1. Returns the best allocation seen.
PdResult primal_decomposition(std::vector<Carrier> j0, std::vector<Carrier> j1,
                              double ps_budget, double pj_budget, std::size_t subcarriers,
                              const OptimizerOptions& opts = {});

/// Source water-filling over unjammed carriers.
std::vector<WaterfillItem> source_items(std::span<const Carrier> carriers,
                                        std::span<const double> pj = {});

// ---- Sequential (reduced complexity) jammer allocation ----------------------

/// Closed-form jammer powers maximising the log-ratio upper bound of the
/// secure rate. When the summed upper bounds fit the budget every carrier
/// gets the midpoint of its bounds (improvement) or `upper - delta`
/// (snatching, `midpoint_when_slack = false`).
std::vector<double> suboptimal_pj(std::span<const Carrier> carriers, std::span<const double> ps,
                                  double pj_budget, bool midpoint_when_slack = true);

}  // namespace secjam
