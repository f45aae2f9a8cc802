// Test-only oracles, deliberately independent of the library's solvers:
// Gauss-Legendre by Newton iteration on the Legendre recurrence (the library
// uses a tridiagonal eigen-solve), Halton points for quasi-random reference
// integrals, and brute-force enumeration for partition counts.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cq/distribution.hpp"

namespace oracle {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

inline GaussLegendre gauss_legendre(int n) {
  GaussLegendre out;
  out.nodes.resize(n);
  out.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    out.nodes[i] = -x;
    out.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.weights[i] = w;
    out.weights[n - 1 - i] = w;
  }
  return out;
}

/// Integral of f over [lo, hi] with a composite 200-node Gauss-Legendre rule.
inline double integrate(const std::function<double(double)>& f, double lo, double hi) {
  static const GaussLegendre gl = gauss_legendre(200);
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double sum = 0.0;
  for (int i = 0; i < 200; ++i) sum += gl.weights[i] * f(c + h * gl.nodes[i]);
  return sum * h;
}

/// Raw moment of a distribution by numerical quadrature (normal support
/// truncated at +-12 sigma), panelled for accuracy.
inline double raw_moment(const cq::Distribution& dist, int j) {
  double lo = dist.lower(), hi = dist.upper();
  if (!dist.bounded()) {
    lo = dist.center() - 12.0 * dist.scale();
    hi = dist.center() + 12.0 * dist.scale();
  }
  const int panels = 8;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels;
    const double b = lo + (hi - lo) * (p + 1) / panels;
    sum += integrate([&](double x) { return std::pow(x, j) * dist.pdf(x); }, a, b);
  }
  return sum;
}

/// E[|x|^j], the natural scale for near-zero odd moments.
inline double abs_moment(const cq::Distribution& dist, int j) {
  double lo = dist.lower(), hi = dist.upper();
  if (!dist.bounded()) {
    lo = dist.center() - 12.0 * dist.scale();
    hi = dist.center() + 12.0 * dist.scale();
  }
  const int panels = 8;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels;
    const double b = lo + (hi - lo) * (p + 1) / panels;
    sum += integrate([&](double x) { return std::pow(std::abs(x), j) * dist.pdf(x); }, a, b);
  }
  return sum;
}

inline double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  for (std::uint64_t i = index + 1; i > 0; i /= base) {
    f /= base;
    r += f * static_cast<double>(i % base);
  }
  return r;
}

inline std::vector<int> halton_bases(int n) {
  static const int primes[] = {2, 3, 5, 7, 11, 13};
  if (n > 6) throw std::invalid_argument("halton oracle supports n <= 6");
  return std::vector<int>(primes, primes + n);
}

/// Brute-force count of weakly increasing nonnegative d-tuples with sum <= b.
inline std::int64_t count_weakly_increasing(int b, int d) {
  std::int64_t count = 0;
  std::function<void(int, int, int)> rec = [&](int pos, int minimum, int remaining) {
    if (pos == d) {
      ++count;
      return;
    }
    for (int v = minimum; v <= remaining; ++v) rec(pos + 1, v, remaining - v);
  };
  rec(0, 0, b);
  return count;
}

/// Brute-force count of weakly increasing nonnegative d-tuples with sum == l.
inline std::int64_t count_partitions(int l, int d) {
  return count_weakly_increasing(l, d) - (l > 0 ? count_weakly_increasing(l - 1, d) : 0);
}

}  // namespace oracle
