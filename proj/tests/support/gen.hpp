#pragma once

// Random inputs and independent oracles shared by the test executables.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "neutro/expr.hpp"
#include "neutro/funcspec.hpp"
#include "neutro/realset.hpp"

namespace neutro::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  // Multiples of 1/4 so that endpoints coincide now and then.
  double grid(double lo, double hi) {
    return std::round(real(lo, hi) * 4.0) / 4.0;
  }

  Interval interval(double lo = -10, double hi = 10) {
    double a = grid(lo, hi);
    double b = grid(lo, hi);
    if (a == b) b = a + 0.5;
    return Interval::make(a, b, coin(0.3), coin(0.3));
  }

  /// Non-empty union of 1-3 pieces.
  RealSet set(double lo = -10, double hi = 10) {
    std::vector<Interval> ivs;
    std::vector<double> pts;
    const int n = integer(1, 3);
    for (int i = 0; i < n; ++i) {
      if (coin(0.25)) {
        pts.push_back(grid(lo, hi));
      } else {
        ivs.push_back(interval(lo, hi));
      }
    }
    return RealSet::normalize(ivs, pts);
  }

  RealSet finite_points(int max_n, double lo, double hi) {
    std::vector<double> pts;
    const int n = integer(1, max_n);
    for (int i = 0; i < n; ++i) pts.push_back(grid(lo, hi));
    return RealSet::normalize({}, pts);
  }

  /// A subset of s: each piece is kept whole, shrunk strictly inside, or
  /// replaced by an interior point.
  RealSet subset_of(const RealSet& s) {
    std::vector<Interval> ivs;
    std::vector<double> pts;
    for (const Interval& p : s.pieces()) {
      const int mode = integer(0, 2);
      if (p.lo == p.hi || mode == 0) {
        ivs.push_back(p);
        continue;
      }
      const double w = p.hi - p.lo;
      const double u = p.lo + w * real(0.05, 0.45);
      const double v = p.lo + w * real(0.55, 0.95);
      if (mode == 1) {
        ivs.push_back(Interval::make(u, v, coin(0.3), coin(0.3)));
      } else {
        pts.push_back(u);
      }
    }
    return RealSet::normalize(ivs, pts);
  }

  /// Polynomial with `degree` random coefficients in [-3,3].
  std::vector<double> poly(int degree) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (double& v : c) v = std::round(real(-3, 3) * 8.0) / 8.0;
    return c;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double poly_at(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Exact antiderivative value with zero constant.
inline double poly_integral(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * std::pow(x, k + 1) / (k + 1);
  return acc;
}

inline Expr poly_expr(const std::vector<double>& c) {
  Expr e = Expr::constant(c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    e = e + Expr::constant(c[k]) * Expr::pow(Expr::var(), static_cast<int>(k));
  }
  return e;
}

/// Simpson's rule on a smooth scalar function; the oracle for envelope
/// integrals whose closed form is not at hand.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double centered_difference(const std::function<double(double)>& f, double x,
                                  double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace neutro::testing
