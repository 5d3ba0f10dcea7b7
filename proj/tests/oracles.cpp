#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracle {

double capacity(double ps, double h, double sigma2, double pj, double g) {
  return std::log2(1.0 + ps * h * h / (sigma2 + pj * g * g));
}

double secure_rate(const ChannelRealization& ch, std::size_t m, std::size_t n, double ps, double pj) {
  double eve = -1.0;
  for (std::size_t e = 0; e < ch.users(); ++e)
    if (e != m) eve = std::max(eve, capacity(ps, ch.h(e, n), ch.noise_variance, pj, ch.g(e, n)));
  const double r = capacity(ps, ch.h(m, n), ch.noise_variance, pj, ch.g(m, n)) - eve;
  return r > 0.0 ? r : 0.0;
}

double pinned_rate(const ChannelRealization& ch, std::size_t m, std::size_t e, std::size_t n,
                   double ps, double pj) {
  return capacity(ps, ch.h(m, n), ch.noise_variance, pj, ch.g(m, n)) -
         capacity(ps, ch.h(e, n), ch.noise_variance, pj, ch.g(e, n));
}

std::vector<double> user_rates(const ChannelRealization& ch, const PowerAllocation& a) {
  std::vector<double> r(ch.users(), 0.0);
  for (std::size_t n = 0; n < a.ps.size(); ++n) {
    if (!a.owner[n]) continue;
    const double pj = a.jammer_active[n] ? a.pj[n] : 0.0;
    r[*a.owner[n]] += secure_rate(ch, *a.owner[n], n, a.ps[n], pj);
  }
  return r;
}

double weighted_sum(const ChannelRealization& ch, const PowerAllocation& a, std::span<const double> w) {
  const auto r = user_rates(ch, a);
  double s = 0.0;
  for (std::size_t m = 0; m < r.size(); ++m) s += (w.empty() ? 1.0 : w[m]) * r[m];
  return s;
}

std::pair<double, double> grid_argmax(const std::function<double(double)>& f, double lo, double hi,
                                      double step) {
  double best_x = lo, best_f = f(lo);
  const auto count = static_cast<long>(std::floor((hi - lo) / step));
  for (long k = 1; k <= count; ++k) {
    const double x = lo + static_cast<double>(k) * step;
    const double v = f(x);
    if (v > best_f) {
      best_f = v;
      best_x = x;
    }
  }
  return {best_x, best_f};
}

double derivative(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double quartic_product(double hm, double he, double gm, double ge, double sigma2, double ps,
                       double p) {
  const double a = sigma2 + p * ge * ge;
  const double b = sigma2 + p * ge * ge + ps * he * he;
  const double c = sigma2 + p * gm * gm;
  const double d = sigma2 + p * gm * gm + ps * hm * hm;
  return a * b * c * d;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
  }
  return d;
}

namespace {

void compose(int left, std::size_t slot, std::vector<int>& cur,
             const std::function<void(const std::vector<int>&)>& visit) {
  if (slot + 1 == cur.size()) {
    cur[slot] = left;
    visit(cur);
    return;
  }
  for (int k = 0; k <= left; ++k) {
    cur[slot] = k;
    compose(left - k, slot + 1, cur, visit);
  }
}

}  // namespace

void compositions(int units, int parts, const std::function<void(const std::vector<int>&)>& visit) {
  if (parts <= 0) return;
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  compose(units, 0, cur, visit);
}

bool jamming_admissible(const ChannelRealization& ch, UserId m, UserId e, std::size_t n, double ps,
                        double pj) {
  if (pj == 0.0) return true;
  const double s2 = ch.noise_variance;
  auto snr = [&](UserId u) { return ch.h(u, n) * ch.h(u, n) / (s2 + pj * ch.g(u, n) * ch.g(u, n)); };
  for (UserId u = 0; u < ch.users(); ++u) {
    if (u == m) continue;
    if (!(snr(m) > snr(u))) return false;
    if (u != e && !(snr(e) > snr(u))) return false;
  }
  return pinned_rate(ch, m, e, n, ps, pj) >= pinned_rate(ch, m, e, n, ps, 0.0);
}

SplitPoint exhaustive_split(const ChannelRealization& ch, const std::vector<UserId>& owner,
                            const std::vector<UserId>& eavesdropper, const std::vector<bool>& jammed, double ps_budget, double pj_budget,
                            int units, std::span<const double> weights) {
  const std::size_t K = owner.size();
  const auto U = static_cast<std::size_t>(units) + 1;
  std::vector<std::size_t> jam_slot(K, 0);
  std::size_t J = 0;
  for (std::size_t n = 0; n < K; ++n)
    if (jammed[n]) jam_slot[n] = J++;

  // table[n][a * U + b]: weighted rate at a source units and b jammer units.
  std::vector<std::vector<double>> table(K);
  for (std::size_t n = 0; n < K; ++n) {
    const double w = weights.empty() ? 1.0 : weights[owner[n]];
    const std::size_t bmax = jammed[n] ? U : 1;
    table[n].resize(U * bmax);
    for (std::size_t a = 0; a < U; ++a)
      for (std::size_t b = 0; b < bmax; ++b) {
        const double ps = ps_budget * static_cast<double>(a) / units;
        const double pj = pj_budget * static_cast<double>(b) / units;
        table[n][a * bmax + b] = jamming_admissible(ch, owner[n], eavesdropper[n], n, ps, pj)
                                     ? w * secure_rate(ch, owner[n], n, ps, pj)
                                     : -1e300;
      }
  }

  SplitPoint best;
  best.value = -1.0;
  auto record = [&](double v, const std::vector<int>& a, const std::vector<int>* b) {
    if (!(v > best.value)) return;
    best.value = v;
    best.ps.assign(K, 0.0);
    best.pj.assign(K, 0.0);
    for (std::size_t n = 0; n < K; ++n) {
      best.ps[n] = ps_budget * a[n] / units;
      if (b && jammed[n]) best.pj[n] = pj_budget * (*b)[jam_slot[n]] / units;
    }
  };
  compositions(units, static_cast<int>(K), [&](const std::vector<int>& a) {
    double base = 0.0;
    for (std::size_t n = 0; n < K; ++n)
      if (!jammed[n]) base += table[n][static_cast<std::size_t>(a[n])];
    if (J == 0) {
      record(base, a, nullptr);
      return;
    }
    compositions(units, static_cast<int>(J) + 1, [&](const std::vector<int>& b) {
      double s = base;
      for (std::size_t n = 0; n < K; ++n)
        if (jammed[n])
          s += table[n][static_cast<std::size_t>(a[n]) * U + static_cast<std::size_t>(b[jam_slot[n]])];
      record(s, a, &b);
    });
  });
  return best;
}

SplitPoint polish_split(const ChannelRealization& ch, const std::vector<UserId>& owner,
                        const std::vector<UserId>& eavesdropper, const std::vector<bool>& jammed, double ps_budget, double pj_budget,
                        SplitPoint p, std::span<const double> weights) {
  const std::size_t K = owner.size();
  auto value = [&](const std::vector<double>& ps, const std::vector<double>& pj) {
    double s = 0.0;
    for (std::size_t n = 0; n < K; ++n) {
      const double j = jammed[n] ? pj[n] : 0.0;
      if (!jamming_admissible(ch, owner[n], eavesdropper[n], n, ps[n], j)) return -1e300;
      s += (weights.empty() ? 1.0 : weights[owner[n]]) * secure_rate(ch, owner[n], n, ps[n], j);
    }
    return s;
  };
  p.value = value(p.ps, p.pj);

  // Index K stands for the unused part of the budget.
  auto search = [&](std::vector<double>& x, double budget, const std::vector<bool>& movable,
                    double step) {
    bool moved = false;
    for (std::size_t i = 0; i <= K; ++i)
      for (std::size_t j = 0; j <= K; ++j) {
        if (i == j || (i < K && !movable[i]) || (j < K && !movable[j])) continue;
        const double spare = budget - std::accumulate(x.begin(), x.end(), 0.0);
        const double have = i < K ? x[i] : spare;
        const double d = std::min(step, have);
        if (!(d > 0.0)) continue;
        std::vector<double> y = x;
        if (i < K) y[i] -= d;
        if (j < K) y[j] += d;
        const double v = &x == &p.ps ? value(y, p.pj) : value(p.ps, y);
        if (v > p.value + 1e-13) {
          x = std::move(y);
          p.value = v;
          moved = true;
        }
      }
    return moved;
  };

  const std::vector<bool> all(K, true);
  for (double frac = 0.05; frac > 1e-7; frac *= 0.5) {
    bool moved = true;
    for (int rounds = 0; moved && rounds < 200; ++rounds) {
      moved = search(p.ps, ps_budget, all, frac * ps_budget);
      if (pj_budget > 0.0) moved = search(p.pj, pj_budget, jammed, frac * pj_budget) || moved;
    }
  }
  return p;
}

ChannelRealization random_channels(std::mt19937_64& rng, std::size_t users, std::size_t subcarriers,
                                   double lo, double hi, double sigma2) {
  std::uniform_real_distribution<double> u(lo, hi);
  ChannelRealization ch{secjam::Matrix(users, subcarriers), secjam::Matrix(users, subcarriers), sigma2};
  for (std::size_t m = 0; m < users; ++m)
    for (std::size_t n = 0; n < subcarriers; ++n) ch.h(m, n) = u(rng);
  for (std::size_t m = 0; m < users; ++m)
    for (std::size_t n = 0; n < subcarriers; ++n) ch.g(m, n) = u(rng);
  return ch;
}

}  // namespace oracle
