#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

namespace secjam::detail {

/// Bracketed root of f on [a, b] with f(a) and f(b) of opposite sign.
/// Returns the final bracket; the caller picks the side it needs.
template <class F>
std::pair<double, double> bracket_root(F f, double a, double b, double fa, double fb,
                                       double abs_tol, int* iterations = nullptr) {
  std::uintmax_t max_iter = 200;
  auto tol = [abs_tol](double x, double y) { return std::abs(y - x) <= abs_tol; };
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, max_iter);
  if (iterations) *iterations += static_cast<int>(max_iter);
  return {std::min(r.first, r.second), std::max(r.first, r.second)};
}

}  // namespace secjam::detail
