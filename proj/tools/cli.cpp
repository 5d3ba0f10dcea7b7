#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "secjam/fixtures.hpp"
#include "secjam/harness.hpp"
#include "secjam/jammer_analysis.hpp"
#include "secjam/rate_max.hpp"

namespace secjam::cli {
namespace {

constexpr const char* kBuiltinFixture = "paper3x5";
constexpr const char* kOutputDirEnv = "SECJAM_OUTPUT_DIR";

struct ScenarioFlags {
  std::size_t users = 8;
  std::size_t subcarriers = 64;
  double ps_db = 15.0;
  double pj_db = 6.0;
  std::vector<double> jammer_pos{0.5, 0.5};
  std::vector<double> weights;
  std::uint64_t seed = 0;
  std::string fixture;
};

void add_scenario_flags(CLI::App* app, ScenarioFlags& f) {
  app->add_option("--users", f.users, "Number of users M")->check(CLI::Range(2, 100000));
  app->add_option("--subcarriers", f.subcarriers, "Number of subcarriers N")
      ->check(CLI::Range(1, 1000000));
  app->add_option("--ps-db", f.ps_db, "Source budget P_S/sigma^2 in dB");
  app->add_option("--pj-db", f.pj_db, "Jammer budget P_J/sigma^2 in dB");
  app->add_option("--jammer-pos", f.jammer_pos, "Jammer position X,Y")
      ->delimiter(',')
      ->expected(2);
  app->add_option("--weights", f.weights, "Per-user weights w1,w2,...")->delimiter(',');
  app->add_option("--seed", f.seed, "Master RNG seed");
}

ScenarioConfig to_config(const ScenarioFlags& f) {
  ScenarioConfig cfg;
  cfg.num_users = f.users;
  cfg.num_subcarriers = f.subcarriers;
  cfg.jammer_pos = {f.jammer_pos.at(0), f.jammer_pos.at(1)};
  cfg.weights = f.weights;
  cfg.rng_seed = f.seed;
  cfg.source_budget = db_to_power(f.ps_db, cfg.noise_variance);
  cfg.jammer_budget = db_to_power(f.pj_db, cfg.noise_variance);
  return cfg;
}

ChannelRealization load_fixture(const std::string& name) {
  if (name == kBuiltinFixture) return example3x5();
  if (!std::filesystem::exists(name)) throw std::runtime_error("fixture file not found: " + name);
  return load_channels_file(name);
}

// Budgets in dB are relative to the fixture's own noise variance.
void adopt_fixture(ScenarioConfig& cfg, const ScenarioFlags& f, const ChannelRealization& ch) {
  cfg.num_users = ch.users();
  cfg.num_subcarriers = ch.subcarriers();
  cfg.noise_variance = ch.noise_variance;
  cfg.source_budget = db_to_power(f.ps_db, ch.noise_variance);
  cfg.jammer_budget = db_to_power(f.pj_db, ch.noise_variance);
}

std::string resolve_output(const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p.string();
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  const std::string target = resolve_output(path);
  std::ofstream f(target);
  if (!f) throw std::runtime_error("cannot write output file: " + target);
  f << text;
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

std::string label(char prefix, std::size_t idx) { return std::string(1, prefix) + std::to_string(idx + 1); }

std::string run_report(const SchemeOutcome& o, const std::string& scheme, const std::string& emit) {
  std::ostringstream os;
  if (emit == "csv") {
    os << "user,rate\n";
    for (std::size_t m = 0; m < o.user_rates.size(); ++m) os << m + 1 << ',' << fmt(o.user_rates[m], 6) << '\n';
    return os.str();
  }
  os << "scheme: " << scheme << '\n';
  for (std::size_t m = 0; m < o.user_rates.size(); ++m)
    os << "  " << label('u', m) << "  rate " << fmt(o.user_rates[m], 6) << '\n';
  os << "sum weighted rate: " << fmt(o.sum_weighted_rate, 6) << '\n';
  os << "fairness index: " << fmt(1.0 - o.fairness_gap, 6) << '\n';
  os << "source power used: " << fmt(o.allocation.source_total(), 6) << '\n';
  os << "jammer power used: " << fmt(o.allocation.jammer_total(), 6) << '\n';
  return os.str();
}

std::string analyze_report(const ChannelRealization& ch, double ps) {
  std::ostringstream os;
  os << "equal source power per subcarrier: " << fmt(ps) << '\n';
  os << std::left << std::setw(5) << "sub" << std::setw(7) << "owner" << std::setw(7) << "eaves"
     << std::setw(11) << "improvable" << std::right << std::setw(10) << "ps_th" << std::setw(10)
     << "pj_th_i" << std::setw(10) << "pj_opt" << std::setw(10) << "pj_lower" << std::setw(10)
     << "pj_upper" << std::setw(10) << "feasible" << '\n';
  std::vector<JammerAnalysisResult> all;
  for (Subcarrier n = 0; n < ch.subcarriers(); ++n) {
    const auto r = analyze_subcarrier(n, ch, ps);
    all.push_back(r);
    os << std::left << std::setw(5) << label('c', n) << std::setw(7) << label('u', r.owner)
       << std::setw(7) << label('u', r.eavesdropper) << std::setw(11) << (r.improvable ? "yes" : "no")
       << std::right;
    if (r.improvable) {
      os << std::setw(10) << fmt(r.ps_threshold) << std::setw(10) << fmt(r.pj_threshold_improve)
         << std::setw(10) << fmt(r.pj_opt);
    } else {
      os << std::setw(10) << "-" << std::setw(10) << "-" << std::setw(10) << "-";
    }
    os << std::setw(10) << fmt(r.pj_lower) << std::setw(10) << fmt(r.pj_upper) << std::setw(10)
       << (r.jamming_feasible ? "yes" : "no") << '\n';
  }
  os << "\nsnatching options\n";
  os << std::left << std::setw(5) << "sub" << std::setw(7) << "user" << std::setw(7) << "from"
     << std::right << std::setw(10) << "pj_th_s" << std::setw(10) << "pj_opt" << std::setw(10)
     << "pj_lower" << std::setw(10) << "pj_upper" << '\n';
  for (const auto& r : all)
    for (const auto& s : r.snatch_options)
      os << std::left << std::setw(5) << label('c', r.subcarrier) << std::setw(7) << label('u', s.user)
         << std::setw(7) << label('u', r.owner) << std::right << std::setw(10) << fmt(s.threshold)
         << std::setw(10) << fmt(s.pj_opt) << std::setw(10) << fmt(s.bounds.lower) << std::setw(10)
         << fmt(s.bounds.upper) << '\n';
  return os.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

std::vector<Point> parse_positions(const std::string& s) {
  std::vector<Point> out;
  for (const auto& tok : split_list(s)) {
    const auto semi = tok.find(';');
    if (semi == std::string::npos) throw CLI::ValidationError("--grid", "jammer positions are x;y pairs");
    try {
      out.push_back({std::stod(tok.substr(0, semi)), std::stod(tok.substr(semi + 1))});
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--grid", "bad jammer position '" + tok + "'");
    }
  }
  return out;
}

// CLI11 only reads config files attached to the top-level app, so subcommand
// files are applied by hand. Flags given on the command line win.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  if (!std::filesystem::exists(path)) throw CLI::FileError::Missing(path);
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == sub->get_name()))
      continue;
    if (item.name == "--" || item.name == "++" || item.name.empty()) continue;
    CLI::Option* opt = sub->get_option_no_throw("--" + item.name);
    if (!opt) throw CLI::ConfigError::NotConfigurable(item.fullname());
    if (opt->count() > 0) continue;
    for (const auto& v : item.inputs) opt->add_result(v);
    opt->run_callback();
  }
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jammer-assisted secure OFDMA resource allocation"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  ScenarioFlags run_f, sweep_f, analyze_f;
  std::string output, emit = "summary", scheme, objective = "sumrate", trace_path;

  auto* run = app.add_subcommand("run", "Run one scheme on one scenario");
  std::string run_config, sweep_config;
  run->add_option("--config", run_config, "key=value file with flag defaults");
  add_scenario_flags(run, run_f);
  run->add_option("--scheme", scheme, "Scheme name (default depends on --objective)");
  run->add_option("--objective", objective, "sumrate or maxmin")
      ->check(CLI::IsMember({"sumrate", "maxmin"}));
  run->add_option("--fixture", run_f.fixture, "Built-in fixture name or channel file");
  run->add_option("--output", output, "Write data here instead of stdout");
  run->add_option("--emit", emit, "summary or csv")->check(CLI::IsMember({"summary", "csv"}));
  run->add_option("--trace", trace_path, "Write the decomposition trace CSV (jpa only)");

  std::string var = "ps_db", grid_text, schemes_text = "jpa,jpaso,epa,ospwj";
  std::size_t trials = 500;
  unsigned threads = 0;
  std::string sweep_emit = "csv";
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over one variable");
  sweep->add_option("--config", sweep_config, "key=value file with flag defaults");
  add_scenario_flags(sweep, sweep_f);
  sweep->add_option("--var", var, "ps_db, pj_db, num_users or jammer_pos")
      ->check(CLI::IsMember({"ps_db", "pj_db", "num_users", "jammer_pos"}));
  sweep->add_option("--grid", grid_text, "start:step:stop, a comma list, or x;y pairs")->required();
  sweep->add_option("--trials", trials, "Trials per grid point")->check(CLI::PositiveNumber);
  sweep->add_option("--schemes", schemes_text, "Comma-separated scheme names");
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sweep->add_option("--output", output, "Write data here instead of stdout");
  sweep->add_option("--emit", sweep_emit, "csv or summary")->check(CLI::IsMember({"summary", "csv"}));

  analyze_f.fixture = kBuiltinFixture;
  analyze_f.ps_db = 10.0;
  auto* analyze = app.add_subcommand("analyze", "Per-subcarrier jammer analysis of a fixture");
  analyze->add_option("--fixture", analyze_f.fixture, "Built-in fixture name or channel file");
  analyze->add_option("--ps-db", analyze_f.ps_db, "Total source budget P_S/sigma^2 in dB");
  analyze->add_option("--output", output, "Write data here instead of stdout");

  std::string fixture_name = kBuiltinFixture;
  auto* fixture = app.add_subcommand("fixture", "Print a built-in channel fixture");
  fixture->add_option("name", fixture_name, "Fixture name")->check(CLI::IsMember({kBuiltinFixture}));
  fixture->add_option("--output", output, "Write data here instead of stdout");

  try {
    app.parse(argc, argv);
    apply_config(run, run_config);
    apply_config(sweep, sweep_config);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run) {
      ScenarioConfig cfg = to_config(run_f);
      ChannelRealization ch;
      if (!run_f.fixture.empty()) {
        ch = load_fixture(run_f.fixture);
        adopt_fixture(cfg, run_f, ch);
      } else {
        cfg.validate();
        ch = generate_channels(cfg);
      }
      cfg.validate();
      if (scheme.empty()) scheme = objective == "maxmin" ? "pfa" : "jpa";
      if (!is_scheme(scheme)) {
        err << "error: unknown scheme '" << scheme << "'\n";
        return 2;
      }
      SchemeOutcome o;
      if (scheme == "jpa" && !trace_path.empty()) {
        std::vector<PdTraceRow> trace;
        o = jpa(ch, cfg, {}, &trace);
        write_output(emit_trace_csv(trace), trace_path, out);
      } else {
        o = run_scheme(scheme, ch, cfg);
      }
      const std::string problem =
          check_allocation(o.allocation, ch.users(), cfg.source_budget, cfg.jammer_budget);
      if (!problem.empty()) {
        err << "error: " << problem << '\n';
        return 1;
      }
      write_output(run_report(o, scheme, emit), output, out);
      return 0;
    }

    if (*sweep) {
      SweepSpec spec;
      spec.variable = parse_sweep_variable(var);
      if (spec.variable == SweepVariable::JammerPos) {
        spec.positions = parse_positions(grid_text);
      } else {
        spec.grid = parse_grid(grid_text);
      }
      spec.fixed = to_config(sweep_f);
      spec.trials = trials;
      spec.threads = threads;
      spec.schemes = split_list(schemes_text);
      spec.validate();
      const auto rows = run_sweep(spec);
      std::size_t errors = 0;
      for (const auto& r : rows) errors += r.errors;
      write_output(sweep_emit == "csv" ? emit_csv(rows) : emit_summary(rows), output, out);
      if (errors) {
        err << "error: " << errors << " scheme trials failed\n";
        return 1;
      }
      return 0;
    }

    if (*analyze) {
      const ChannelRealization ch = load_fixture(analyze_f.fixture);
      const double ps =
          db_to_power(analyze_f.ps_db, ch.noise_variance) / static_cast<double>(ch.subcarriers());
      write_output(analyze_report(ch, ps), output, out);
      return 0;
    }

    if (*fixture) {
      write_output(format_channels(example3x5()), output, out);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace secjam::cli
