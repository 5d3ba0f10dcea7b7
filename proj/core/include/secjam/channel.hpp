#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "secjam/types.hpp"

namespace secjam {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

/// Scenario geometry, budgets and weights. Users are dropped uniformly in the
/// unit square [0,1]^2.
struct ScenarioConfig {
  std::size_t num_users = 8;
  std::size_t num_subcarriers = 64;
  Point source_pos{0.0, 0.0};
  Point jammer_pos{0.5, 0.5};
  double path_loss_exponent = 3.0;
  double noise_variance = 1.0;
  double source_budget = 1.0;
  double jammer_budget = 1.0;
  /// Per-user priority weights; empty means all ones.
  std::vector<double> weights;
  std::uint64_t rng_seed = 0;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  double weight(UserId m) const { return weights.empty() ? 1.0 : weights.at(m); }
  std::vector<double> weight_vector() const;
};

/// Gain magnitudes |h| (source to user) and |g| (jammer to user), M x N each.
struct ChannelRealization {
  Matrix h;
  Matrix g;
  double noise_variance = 1.0;

  std::size_t users() const { return h.rows(); }
  std::size_t subcarriers() const { return h.cols(); }
  double h2(UserId m, Subcarrier n) const { return h(m, n) * h(m, n); }
  double g2(UserId m, Subcarrier n) const { return g(m, n) * g(m, n); }

  void validate() const;
  friend bool operator==(const ChannelRealization&, const ChannelRealization&) = default;
};

/// Minimum user distance to the source or jammer; closer drops are redrawn.
inline constexpr double kMinNodeDistance = 1e-3;

/// Path loss d^(-ple/2) on the amplitude times a unit mean-square Rayleigh
/// draw. Deterministic for a fixed cfg.rng_seed.
ChannelRealization generate_channels(const ScenarioConfig& cfg);

/// User positions drawn for cfg.rng_seed (same stream generate_channels uses).
std::vector<Point> draw_user_positions(const ScenarioConfig& cfg);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the fixture text format:
///
///   # M N sigma2
///   <M rows of N |h| values>
///   <blank line>
///   <M rows of N |g| values>
ChannelRealization load_channels(std::string_view text);
ChannelRealization load_channels_file(const std::string& path);

/// Inverse of load_channels. Values are printed with `precision` decimals.
std::string format_channels(const ChannelRealization& ch, int precision = 4);

}  // namespace secjam
