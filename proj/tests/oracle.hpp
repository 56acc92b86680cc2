// Test-only brute-force oracles, kept independent of the library's
// closed-form resolvent implementations.
//
// Ternary-search comparisons evaluate the objective DIFFERENCE
//   f(m1) - f(m2) = 0.5 (m1 + m2 - 2x)(m1 - m2) + gamma (g(m1) - g(m2))
// in expanded form: the raw difference of two nearly equal objective values
// drowns in rounding once |u - u*| ~ sqrt(eps), which would cap the oracle
// accuracy near 1e-8.  The expanded form resolves steps down to ~1e-14.
#ifndef KMLAB_TESTS_ORACLE_HPP
#define KMLAB_TESTS_ORACLE_HPP

#include <Eigen/Core>
#include <cmath>

#include "kmlab/point.hpp"

namespace kmlab::testing {

/// Brute-force 1-D proximal oracle: minimizes f(u) = 0.5 (u-x)^2 + gamma g(u)
/// by scanning a uniform grid on [x - 10 gamma, x + 10 gamma] and refining the
/// best cell by ternary search down to width 1e-10.  g_diff(a, b) must return
/// g(a) - g(b) with the subtraction done before any multiplication, otherwise
/// rounding of the two products caps the resolution near sqrt(eps).
template <typename G, typename GDiff>
double prox_1d_bruteforce(double x, double gamma, G&& g, GDiff&& g_diff,
                          long grid_points = 1000000) {
  const auto objective = [&](double u) { return 0.5 * (u - x) * (u - x) + gamma * g(u); };
  // f(m1) - f(m2), expanded to avoid cancellation between nearly equal values.
  const auto objective_diff = [&](double m1, double m2) {
    return 0.5 * (m1 + m2 - 2.0 * x) * (m1 - m2) + gamma * g_diff(m1, m2);
  };

  const double lo = x - 10.0 * gamma;
  const double hi = x + 10.0 * gamma;
  const double step = (hi - lo) / static_cast<double>(grid_points);

  double best_u = lo;
  double best_f = objective(lo);
  for (long i = 1; i <= grid_points; ++i) {
    const double u = lo + step * static_cast<double>(i);
    const double f = objective(u);
    if (f < best_f) {
      best_f = f;
      best_u = u;
    }
  }

  double a = best_u - step;
  double b = best_u + step;
  while (b - a > 1e-10) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (objective_diff(m1, m2) <= 0.0) {
      b = m2;
    } else {
      a = m1;
    }
  }
  return 0.5 * (a + b);
}

/// Coordinate-wise oracle for separable g: the 1-D oracle per coordinate.
template <typename G, typename GDiff>
Point prox_separable_bruteforce(const Point& x, double gamma, G&& g1d, GDiff&& g1d_diff,
                                long grid_points = 1000000) {
  Point u(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    u[i] = prox_1d_bruteforce(x[i], gamma, g1d, g1d_diff, grid_points);
  }
  return u;
}

/// Brute-force proximal oracle for g(u) = 0.5 u'Qu + b'u: cyclic coordinate
/// minimization of 0.5||u - x||^2 + gamma g(u), each coordinate minimized by
/// derivative-free ternary search with expanded-difference comparisons.
/// No matrix factorization anywhere.
inline Point prox_quadratic_bruteforce(const Point& x, double gamma, const Eigen::MatrixXd& Q,
                                       const Point& b, int max_sweeps = 2000) {
  Point u = x;
  double bracket = 10.0 * (1.0 + gamma) * (1.0 + x.norm());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_move = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      // Off-diagonal coupling at the current sweep state.
      double s = b[i];
      for (Eigen::Index j = 0; j < u.size(); ++j) {
        if (j != i) s += Q(i, j) * u[j];
      }
      const double qii = Q(i, i);
      // f(a) - f(b) along coordinate i, expanded:
      //   (a - b) [ 0.5 (a + b) - x_i + gamma (0.5 (a + b) q_ii + s) ].
      const auto diff = [&](double m1, double m2) {
        const double mid = 0.5 * (m1 + m2);
        return (m1 - m2) * (mid - x[i] + gamma * (mid * qii + s));
      };
      double lo = u[i] - bracket;
      double hi = u[i] + bracket;
      while (hi - lo > 1e-14 * (1.0 + std::abs(u[i]))) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (diff(m1, m2) <= 0.0) {
          hi = m2;
        } else {
          lo = m1;
        }
      }
      const double next = 0.5 * (lo + hi);
      max_move = std::max(max_move, std::abs(next - u[i]));
      u[i] = next;
    }
    bracket = std::max(1e-7, 8.0 * max_move);
    if (max_move < 1e-13) break;
  }
  return u;
}

}  // namespace kmlab::testing

#endif
