#include "secjam/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "secjam/asymptotic.hpp"
#include "secjam/maxmin.hpp"
#include "secjam/rate_max.hpp"

namespace secjam {

double db_to_power(double db, double sigma2) { return sigma2 * std::pow(10.0, db / 10.0); }

namespace {

using SchemeFn = SchemeOutcome (*)(const ChannelRealization&, const ScenarioConfig&);

const std::map<std::string, SchemeFn, std::less<>>& registry() {
  static const std::map<std::string, SchemeFn, std::less<>> r = {
      {"epa", [](const ChannelRealization& ch, const ScenarioConfig& c) { return epa_rate(ch, c); }},
      {"epa_fair",
       [](const ChannelRealization& ch, const ScenarioConfig& c) {
         return maxmin(ch, c, JammerPolicy::Equal);
       }},
      {"jpa", [](const ChannelRealization& ch, const ScenarioConfig& c) { return jpa(ch, c); }},
      {"jpaso", [](const ChannelRealization& ch, const ScenarioConfig& c) { return jpaso(ch, c); }},
      {"maxmin_ub",
       [](const ChannelRealization& ch, const ScenarioConfig& c) { return maxmin_upper_bound(ch, c); }},
      {"oda",
       [](const ChannelRealization& ch, const ScenarioConfig& c) {
         return maxmin(ch, c, JammerPolicy::Oda);
       }},
      {"odaso",
       [](const ChannelRealization& ch, const ScenarioConfig& c) {
         return maxmin(ch, c, JammerPolicy::Odaso);
       }},
      {"ospwj", [](const ChannelRealization& ch, const ScenarioConfig& c) { return ospwj(ch, c); }},
      {"ospwj_fair",
       [](const ChannelRealization& ch, const ScenarioConfig& c) {
         return maxmin(ch, c, JammerPolicy::None);
       }},
      {"pfa",
       [](const ChannelRealization& ch, const ScenarioConfig& c) {
         return maxmin(ch, c, JammerPolicy::Pfa);
       }},
      {"pfaso",
       [](const ChannelRealization& ch, const ScenarioConfig& c) {
         return maxmin(ch, c, JammerPolicy::Pfaso);
       }},
  };
  return r;
}

std::string format_value(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string format_fixed(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

std::string grid_label(const SweepSpec& spec, std::size_t g) {
  if (spec.variable == SweepVariable::JammerPos)
    return format_value(spec.positions[g].x) + ";" + format_value(spec.positions[g].y);
  return format_value(spec.grid[g]);
}

}  // namespace

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, f] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

bool is_scheme(std::string_view name) { return registry().contains(name); }

SchemeOutcome run_scheme(std::string_view name, const ChannelRealization& ch,
                         const ScenarioConfig& cfg) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown scheme: " + std::string(name));
  return it->second(ch, cfg);
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::PsDb: return "ps_db";
    case SweepVariable::PjDb: return "pj_db";
    case SweepVariable::NumUsers: return "num_users";
    case SweepVariable::JammerPos: return "jammer_pos";
  }
  return "unknown";
}

SweepVariable parse_sweep_variable(std::string_view s) {
  for (auto v : {SweepVariable::PsDb, SweepVariable::PjDb, SweepVariable::NumUsers,
                 SweepVariable::JammerPos})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown sweep variable: " + std::string(s));
}

std::size_t SweepSpec::grid_size() const {
  return variable == SweepVariable::JammerPos ? positions.size() : grid.size();
}

void SweepSpec::validate() const {
  if (grid_size() == 0) throw std::invalid_argument("sweep grid is empty");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (schemes.empty()) throw std::invalid_argument("no schemes selected");
  for (const auto& s : schemes)
    if (!is_scheme(s)) throw std::invalid_argument("unknown scheme: " + s);
  if (variable == SweepVariable::NumUsers)
    for (double v : grid)
      if (!(v >= 2.0) || v != std::floor(v))
        throw std::invalid_argument("num_users grid values must be integers >= 2");
}

ScenarioConfig trial_config(const SweepSpec& spec, std::size_t g, std::size_t trial) {
  ScenarioConfig cfg = spec.fixed;
  switch (spec.variable) {
    case SweepVariable::PsDb: cfg.source_budget = db_to_power(spec.grid[g], cfg.noise_variance); break;
    case SweepVariable::PjDb: cfg.jammer_budget = db_to_power(spec.grid[g], cfg.noise_variance); break;
    case SweepVariable::NumUsers:
      cfg.num_users = static_cast<std::size_t>(spec.grid[g]);
      if (cfg.weights.size() != cfg.num_users) cfg.weights.clear();
      break;
    case SweepVariable::JammerPos: cfg.jammer_pos = spec.positions[g]; break;
  }
  cfg.rng_seed = spec.fixed.rng_seed ^ static_cast<std::uint64_t>(trial);
  return cfg;
}

TrialMetrics trial_metrics(const SchemeOutcome& outcome) {
  TrialMetrics m;
  std::vector<double> rates = outcome.user_rates;
  std::sort(rates.begin(), rates.end());
  m.sum_rate = outcome.sum_weighted_rate;
  m.fairness = fairness_index(rates);
  m.min_rate = rates.empty() ? 0.0 : rates.front();
  return m;
}

SweepResult run_sweep_detailed(const SweepSpec& spec) {
  spec.validate();
  const std::size_t G = spec.grid_size();
  const std::size_t S = spec.schemes.size();
  const std::size_t T = spec.trials;
  SweepResult res;
  res.schemes = spec.schemes;
  res.metrics.assign(G, std::vector<std::vector<TrialMetrics>>(S, std::vector<TrialMetrics>(T)));

  const std::size_t jobs = G * T;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t g = job / T;
      const std::size_t t = job % T;
      ChannelRealization ch;
      ScenarioConfig cfg;
      std::string setup_error;
      try {
        cfg = trial_config(spec, g, t);
        ch = generate_channels(cfg);
      } catch (const std::exception& e) {
        setup_error = e.what();
      }
      for (std::size_t s = 0; s < S; ++s) {
        TrialMetrics& out = res.metrics[g][s][t];
        if (!setup_error.empty()) {
          out.ok = false;
          out.error = setup_error;
          continue;
        }
        try {
          out = trial_metrics(run_scheme(spec.schemes[s], ch, cfg));
        } catch (const std::exception& e) {
          out = TrialMetrics{};
          out.ok = false;
          out.error = e.what();
        }
      }
    }
  };
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<std::size_t> order(S);
  for (std::size_t s = 0; s < S; ++s) order[s] = s;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return spec.schemes[a] < spec.schemes[b]; });
  for (std::size_t g = 0; g < G; ++g) {
    for (std::size_t s : order) {
      AggregateRow row;
      row.sweep_var = std::string(to_string(spec.variable));
      row.value = grid_label(spec, g);
      row.scheme = spec.schemes[s];
      double sum = 0.0, sum_sq = 0.0;
      for (const TrialMetrics& m : res.metrics[g][s]) {
        if (!m.ok) {
          ++row.errors;
          continue;
        }
        ++row.trials;
        sum += m.sum_rate;
        sum_sq += m.sum_rate * m.sum_rate;
        row.mean_fairness += m.fairness;
        row.mean_min_rate += m.min_rate;
      }
      if (row.trials > 0) {
        const double n = static_cast<double>(row.trials);
        row.mean_sum_rate = sum / n;
        row.mean_fairness /= n;
        row.mean_min_rate /= n;
        if (row.trials > 1) {
          const double var = std::max(0.0, (sum_sq - n * row.mean_sum_rate * row.mean_sum_rate) / (n - 1.0));
          row.stderr_sum_rate = std::sqrt(var / n);
        }
      }
      res.rows.push_back(row);
    }
  }
  return res;
}

std::vector<AggregateRow> run_sweep(const SweepSpec& spec) { return run_sweep_detailed(spec).rows; }

std::string emit_csv(const std::vector<AggregateRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.sweep_var + ',' + r.value + ',' + r.scheme + ',' + format_fixed(r.mean_sum_rate) + ',' +
           format_fixed(r.mean_fairness) + ',' + format_fixed(r.mean_min_rate) + ',' +
           std::to_string(r.trials) + ',' + format_fixed(r.stderr_sum_rate) + '\n';
  }
  return out;
}

namespace {

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'", line, 0);
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<AggregateRow> parse_csv(std::string_view text) {
  std::vector<AggregateRow> rows;
  std::size_t line_no = 0;
  bool header = true;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw ParseError("unexpected CSV header", line_no, 0);
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 8) throw ParseError("line " + std::to_string(line_no) + ": expected 8 fields", line_no, 0);
    AggregateRow r;
    r.sweep_var = f[0];
    r.value = f[1];
    r.scheme = f[2];
    r.mean_sum_rate = parse_double(f[3], line_no);
    r.mean_fairness = parse_double(f[4], line_no);
    r.mean_min_rate = parse_double(f[5], line_no);
    r.trials = static_cast<std::size_t>(parse_double(f[6], line_no));
    r.stderr_sum_rate = parse_double(f[7], line_no);
    rows.push_back(std::move(r));
  }
  if (header) throw ParseError("missing CSV header", 0, 0);
  return rows;
}

std::string emit_summary(const std::vector<AggregateRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "sweep_var" << std::setw(12) << "value" << std::setw(12)
     << "scheme" << std::right << std::setw(14) << "sum_rate" << std::setw(12) << "fairness"
     << std::setw(12) << "min_rate" << std::setw(8) << "trials" << std::setw(12) << "stderr"
     << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(12) << r.sweep_var << std::setw(12) << r.value << std::setw(12)
       << r.scheme << std::right << std::fixed << std::setprecision(4) << std::setw(14)
       << r.mean_sum_rate << std::setw(12) << r.mean_fairness << std::setw(12) << r.mean_min_rate
       << std::setw(8) << r.trials << std::setw(12) << r.stderr_sum_rate;
    if (r.errors) os << "  (" << r.errors << " errors)";
    os << '\n';
  }
  return os.str();
}

std::string emit_trace_csv(const std::vector<PdTraceRow>& trace) {
  std::string out = "iter,t,lambda1,lambda2,objective\n";
  for (const auto& r : trace)
    out += std::to_string(r.iter) + ',' + format_fixed(r.t) + ',' + format_fixed(r.lambda1) + ',' +
           format_fixed(r.lambda2) + ',' + format_fixed(r.objective) + '\n';
  return out;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto f = split(text, ':');
    if (f.size() != 3) throw std::invalid_argument("grid must be start:step:stop");
    const double start = parse_double(f[0], 0), step = parse_double(f[1], 0),
                 stop = parse_double(f[2], 0);
    if (!(step > 0.0) || stop < start)
      throw std::invalid_argument("grid needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
  }
  for (std::string_view tok : split(text, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty grid entry");
    out.push_back(parse_double(tok, 0));
  }
  return out;
}

}  // namespace secjam
