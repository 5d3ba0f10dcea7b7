#include "secjam/channel.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace secjam {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void ScenarioConfig::validate() const {
  if (num_users < 2) throw std::invalid_argument("num_users must be >= 2");
  if (num_subcarriers < 1) throw std::invalid_argument("num_subcarriers must be >= 1");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
    throw std::invalid_argument("noise_variance must be positive");
  if (!(source_budget >= 0.0) || !std::isfinite(source_budget))
    throw std::invalid_argument("source_budget must be non-negative");
  if (!(jammer_budget >= 0.0) || !std::isfinite(jammer_budget))
    throw std::invalid_argument("jammer_budget must be non-negative");
  if (!(path_loss_exponent > 0.0)) throw std::invalid_argument("path_loss_exponent must be positive");
  if (!weights.empty()) {
    if (weights.size() != num_users) throw std::invalid_argument("weights must have num_users entries");
    for (double w : weights)
      if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive");
  }
}

std::vector<double> ScenarioConfig::weight_vector() const {
  if (!weights.empty()) return weights;
  return std::vector<double>(num_users, 1.0);
}

void ChannelRealization::validate() const {
  if (h.rows() != g.rows() || h.cols() != g.cols())
    throw std::invalid_argument("h and g dimensions differ");
  if (!(noise_variance > 0.0)) throw std::invalid_argument("noise_variance must be positive");
  for (const Matrix* mat : {&h, &g})
    for (double v : mat->data())
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("channel gains must be positive and finite");
}

namespace {

double uniform01(std::mt19937_64& rng) { return std::generate_canonical<double, 53>(rng); }

Point draw_position(std::mt19937_64& rng, const ScenarioConfig& cfg) {
  for (;;) {
    Point p{uniform01(rng), uniform01(rng)};
    if (distance(p, cfg.source_pos) > kMinNodeDistance &&
        distance(p, cfg.jammer_pos) > kMinNodeDistance)
      return p;
  }
}

// Rayleigh amplitude with E[r^2] = 1 by inversion of 1 - exp(-r^2).
double rayleigh(std::mt19937_64& rng) { return std::sqrt(-std::log1p(-uniform01(rng))); }

}  // namespace

std::vector<Point> draw_user_positions(const ScenarioConfig& cfg) {
  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<Point> pos(cfg.num_users);
  for (auto& p : pos) p = draw_position(rng, cfg);
  return pos;
}

ChannelRealization generate_channels(const ScenarioConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.rng_seed);
  const std::size_t M = cfg.num_users;
  const std::size_t N = cfg.num_subcarriers;
  std::vector<Point> pos(M);
  for (auto& p : pos) p = draw_position(rng, cfg);

  ChannelRealization ch{Matrix(M, N), Matrix(M, N), cfg.noise_variance};
  for (std::size_t m = 0; m < M; ++m) {
    const double ls = std::pow(distance(pos[m], cfg.source_pos), -cfg.path_loss_exponent / 2.0);
    const double lj = std::pow(distance(pos[m], cfg.jammer_pos), -cfg.path_loss_exponent / 2.0);
    for (std::size_t n = 0; n < N; ++n) {
      double r = rayleigh(rng);
      // log1p(-u) hits zero only for u == 0; redraw so gains stay positive.
      while (!(r > 0.0)) r = rayleigh(rng);
      ch.h(m, n) = ls * r;
    }
    for (std::size_t n = 0; n < N; ++n) {
      double r = rayleigh(rng);
      while (!(r > 0.0)) r = rayleigh(rng);
      ch.g(m, n) = lj * r;
    }
  }
  return ch;
}

namespace {

struct Line {
  std::string text;
  std::size_t number;
};

std::vector<double> parse_row(const Line& line, std::size_t expected) {
  std::vector<double> row;
  std::istringstream in(line.text);
  std::string tok;
  while (in >> tok) {
    const std::size_t col = row.size() + 1;
    double v = 0.0;
    std::size_t used = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size())
      throw ParseError("line " + std::to_string(line.number) + ", column " + std::to_string(col) +
                           ": non-numeric entry '" + tok + "'",
                       line.number, col);
    if (!(v > 0.0) || !std::isfinite(v))
      throw ParseError("line " + std::to_string(line.number) + ", column " + std::to_string(col) +
                           ": gain must be positive and finite",
                       line.number, col);
    row.push_back(v);
  }
  if (row.size() != expected)
    throw ParseError("line " + std::to_string(line.number) + ": expected " +
                         std::to_string(expected) + " columns, found " + std::to_string(row.size()),
                     line.number, row.size());
  return row;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

ChannelRealization load_channels(std::string_view text) {
  std::vector<Line> lines;
  {
    std::istringstream in{std::string(text)};
    std::string s;
    std::size_t no = 0;
    while (std::getline(in, s)) lines.push_back({s, ++no});
  }
  std::size_t i = 0;
  while (i < lines.size() && blank(lines[i].text)) ++i;
  if (i == lines.size()) throw ParseError("empty channel payload", 0, 0);

  std::size_t M = 0, N = 0;
  double sigma2 = 0.0;
  {
    std::istringstream hdr(lines[i].text);
    std::string hash;
    if (!(hdr >> hash) || hash != "#" || !(hdr >> M >> N >> sigma2) || M == 0 || N == 0 ||
        !(sigma2 > 0.0))
      throw ParseError("line " + std::to_string(lines[i].number) +
                           ": header must be '# M N sigma2' with positive values",
                       lines[i].number, 1);
    ++i;
  }

  auto read_block = [&](Matrix& out, const char* name) {
    while (i < lines.size() && blank(lines[i].text)) ++i;
    for (std::size_t m = 0; m < M; ++m, ++i) {
      if (i >= lines.size() || blank(lines[i].text))
        throw ParseError(std::string(name) + " block: expected " + std::to_string(M) + " rows",
                         i < lines.size() ? lines[i].number : lines.back().number + 1, 0);
      auto row = parse_row(lines[i], N);
      for (std::size_t n = 0; n < N; ++n) out(m, n) = row[n];
    }
  };

  ChannelRealization ch{Matrix(M, N), Matrix(M, N), sigma2};
  read_block(ch.h, "h");
  if (i < lines.size() && !blank(lines[i].text))
    throw ParseError("line " + std::to_string(lines[i].number) +
                         ": expected a blank line between the h and g blocks",
                     lines[i].number, 0);
  read_block(ch.g, "g");
  for (; i < lines.size(); ++i)
    if (!blank(lines[i].text))
      throw ParseError("line " + std::to_string(lines[i].number) + ": trailing content",
                       lines[i].number, 0);
  return ch;
}

ChannelRealization load_channels_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open channel file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_channels(buf.str());
}

std::string format_channels(const ChannelRealization& ch, int precision) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(precision);
  out << "# " << ch.users() << ' ' << ch.subcarriers() << ' ' << ch.noise_variance << '\n';
  auto block = [&](const Matrix& mat) {
    for (std::size_t m = 0; m < mat.rows(); ++m) {
      for (std::size_t n = 0; n < mat.cols(); ++n) out << (n ? " " : "") << mat(m, n);
      out << '\n';
    }
  };
  block(ch.h);
  out << '\n';
  block(ch.g);
  return out.str();
}

}  // namespace secjam
