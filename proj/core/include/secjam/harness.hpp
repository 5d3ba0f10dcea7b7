#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "secjam/channel.hpp"
#include "secjam/power_optimizer.hpp"
#include "secjam/secure_rate.hpp"

namespace secjam {

/// Linear power for P/sigma^2 given in dB.
double db_to_power(double db, double sigma2);

/// Names accepted by run_scheme, in lexicographic order.
const std::vector<std::string>& scheme_names();
bool is_scheme(std::string_view name);

/// Runs a scheme by name. Throws std::invalid_argument on unknown names.
SchemeOutcome run_scheme(std::string_view name, const ChannelRealization& ch,
                         const ScenarioConfig& cfg);

enum class SweepVariable { PsDb, PjDb, NumUsers, JammerPos };
std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view s);

struct SweepSpec {
  SweepVariable variable = SweepVariable::PsDb;
  /// Grid values for numeric sweeps (dB values or user counts).
  std::vector<double> grid;
  /// Grid for jammer-position sweeps.
  std::vector<Point> positions;
  /// Remaining fields; budgets are linear powers.
  ScenarioConfig fixed;
  std::size_t trials = 1;
  std::vector<std::string> schemes;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  std::size_t grid_size() const;
  void validate() const;
};

struct TrialMetrics {
  double sum_rate = 0.0;
  double fairness = 0.0;
  double min_rate = 0.0;
  bool ok = true;
  std::string error;
};

struct AggregateRow {
  std::string sweep_var;
  std::string value;
  std::string scheme;
  double mean_sum_rate = 0.0;
  double mean_fairness = 0.0;
  double mean_min_rate = 0.0;
  std::size_t trials = 0;
  double stderr_sum_rate = 0.0;
  std::size_t errors = 0;
};

struct SweepResult {
  std::vector<AggregateRow> rows;
  /// metrics[grid][scheme][trial], scheme order as in `schemes`.
  std::vector<std::vector<std::vector<TrialMetrics>>> metrics;
  std::vector<std::string> schemes;
};

/// Scenario for one grid point and trial: seed = master ^ trial.
ScenarioConfig trial_config(const SweepSpec& spec, std::size_t grid_index, std::size_t trial);

/// Metrics of one outcome; rates are sorted ascending before the fairness
/// index so user identity plays no part.
TrialMetrics trial_metrics(const SchemeOutcome& outcome);

SweepResult run_sweep_detailed(const SweepSpec& spec);
std::vector<AggregateRow> run_sweep(const SweepSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "sweep_var,value,scheme,mean_sum_rate,mean_fairness,mean_min_rate,trials,stderr";

std::string emit_csv(const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> parse_csv(std::string_view text);
std::string emit_summary(const std::vector<AggregateRow>& rows);
std::string emit_trace_csv(const std::vector<PdTraceRow>& trace);

/// Expands "start:step:stop" (inclusive) or a comma list.
std::vector<double> parse_grid(std::string_view text);

}  // namespace secjam
