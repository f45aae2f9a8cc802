#include "cq/genz.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cq/quadrature.hpp"

namespace cq {

namespace {

double u01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

void GenzSpec::validate() const {
  if (family < 1 || family > 6) throw std::invalid_argument("genz family must be 1..6");
  if (n < 1 || a.size() != n || u.size() != n) {
    throw std::invalid_argument("genz spec has inconsistent dimensions");
  }
  if (std::abs(a.norm() - 2.5) > 1e-12) throw std::invalid_argument("||a||_2 must be 2.5");
  if (std::abs(u.norm() - 1.0) > 1e-12) throw std::invalid_argument("||u||_2 must be 1");
  if (a.minCoeff() <= 0.0 || u.minCoeff() <= 0.0) {
    throw std::invalid_argument("genz coefficients must be positive");
  }
}

double genz_evaluate(const GenzSpec& spec, const Eigen::RowVectorXd& x) {
  const int n = spec.n;
  switch (spec.family) {
    case 1: {
      double s = 2.0 * M_PI * spec.u(0);
      for (int i = 0; i < n; ++i) s += spec.a(i) * x(i);
      return std::cos(s);
    }
    case 2: {
      double p = 1.0;
      for (int i = 0; i < n; ++i) {
        const double dx = x(i) - spec.u(i);
        p *= 1.0 / (1.0 / (spec.a(i) * spec.a(i)) + dx * dx);
      }
      return p;
    }
    case 3: {
      double s = 1.0;
      for (int i = 0; i < n; ++i) s += spec.a(i) * x(i);
      return std::pow(s, -(n + 1));
    }
    case 4: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const double dx = x(i) - spec.u(i);
        s += spec.a(i) * spec.a(i) * dx * dx;
      }
      return std::exp(-s);
    }
    case 5: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += spec.a(i) * std::abs(x(i) - spec.u(i));
      return std::exp(-s);
    }
    case 6: {
      if (x(0) > spec.u(0)) return 0.0;
      if (n >= 2 && x(1) > spec.u(1)) return 0.0;
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += spec.a(i) * x(i);
      return std::exp(s);
    }
  }
  throw std::invalid_argument("genz family must be 1..6");
}

double genz_exact_uniform(const GenzSpec& spec) {
  const int n = spec.n;
  switch (spec.family) {
    case 1: {
      // prod 2 sin(a_i/2)/a_i * cos(2 pi u_1 + sum a_i/2)
      double phase = 2.0 * M_PI * spec.u(0);
      double amp = 1.0;
      for (int i = 0; i < n; ++i) {
        phase += 0.5 * spec.a(i);
        amp *= 2.0 * std::sin(0.5 * spec.a(i)) / spec.a(i);
      }
      return amp * std::cos(phase);
    }
    case 2: {
      double p = 1.0;
      for (int i = 0; i < n; ++i) {
        p *= spec.a(i) * (std::atan(spec.a(i) * (1.0 - spec.u(i))) +
                          std::atan(spec.a(i) * spec.u(i)));
      }
      return p;
    }
    case 3: {
      // inclusion-exclusion over the corners of the cube
      double prod_a = 1.0;
      for (int i = 0; i < n; ++i) prod_a *= spec.a(i);
      double fact = 1.0;
      for (int i = 2; i <= n; ++i) fact *= i;
      double sum = 0.0;
      for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        double s = 1.0;
        int bits = 0;
        for (int i = 0; i < n; ++i) {
          if (mask & (1ULL << i)) {
            s += spec.a(i);
            ++bits;
          }
        }
        sum += (bits % 2 == 0 ? 1.0 : -1.0) / s;
      }
      return sum / (fact * prod_a);
    }
    case 4: {
      double p = 1.0;
      const double sqrt_pi = std::sqrt(M_PI);
      for (int i = 0; i < n; ++i) {
        p *= sqrt_pi / (2.0 * spec.a(i)) *
             (std::erf(spec.a(i) * (1.0 - spec.u(i))) + std::erf(spec.a(i) * spec.u(i)));
      }
      return p;
    }
    case 5: {
      double p = 1.0;
      for (int i = 0; i < n; ++i) {
        p *= (2.0 - std::exp(-spec.a(i) * spec.u(i)) -
              std::exp(-spec.a(i) * (1.0 - spec.u(i)))) /
             spec.a(i);
      }
      return p;
    }
    case 6: {
      double p = 1.0;
      for (int i = 0; i < n; ++i) {
        const double hi = (i < 2) ? std::min(spec.u(i), 1.0) : 1.0;
        p *= (std::exp(spec.a(i) * hi) - 1.0) / spec.a(i);
      }
      return p;
    }
  }
  throw std::invalid_argument("genz family must be 1..6");
}

ReferenceIntegral genz_reference(const GenzSpec& spec, const std::vector<Distribution>& axes) {
  if (static_cast<int>(axes.size()) != spec.n) {
    throw std::invalid_argument("genz_reference: axis count must match spec dimension");
  }
  if (spec.n > 6) {
    throw std::invalid_argument(
        "genz_reference: tensor oracle infeasible for n > 6; use the closed form for the "
        "uniform measure");
  }

  auto tensor_estimate = [&](int per_axis) {
    std::vector<QuadratureRule> rules;
    rules.reserve(axes.size());
    for (const auto& dist : axes) rules.push_back(gauss_rule(dist, per_axis));
    std::vector<int> counter(spec.n, 0);
    Eigen::RowVectorXd x(spec.n);
    double sum = 0.0;
    while (true) {
      double w = 1.0;
      for (int a = 0; a < spec.n; ++a) {
        x(a) = rules[a].nodes[counter[a]];
        w *= rules[a].weights[counter[a]];
      }
      sum += w * genz_evaluate(spec, x);
      int ax = spec.n - 1;
      for (; ax >= 0; --ax) {
        if (++counter[ax] < per_axis) break;
        counter[ax] = 0;
      }
      if (ax < 0) break;
    }
    return sum;
  };

  ReferenceIntegral ref;
  ref.value = tensor_estimate(30);
  ref.error_estimate = std::abs(ref.value - tensor_estimate(25));
  return ref;
}

GenzSpec genz_random_spec(int family, int n, std::uint64_t seed) {
  if (family < 1 || family > 6) throw std::invalid_argument("genz family must be 1..6");
  if (n < 1) throw std::invalid_argument("genz dimension must be >= 1");
  std::mt19937_64 gen(seed);
  GenzSpec spec;
  spec.family = family;
  spec.n = n;
  spec.seed = seed;
  spec.a.resize(n);
  spec.u.resize(n);
  for (int i = 0; i < n; ++i) {
    double v;
    do {
      v = u01(gen);
    } while (v == 0.0);
    spec.a(i) = v;
  }
  for (int i = 0; i < n; ++i) {
    double v;
    do {
      v = u01(gen);
    } while (v == 0.0);
    spec.u(i) = v;
  }
  spec.a *= 2.5 / spec.a.norm();
  spec.u *= 1.0 / spec.u.norm();
  spec.validate();
  return spec;
}

std::vector<StudyRow> convergence_study(const std::vector<LadderEntry>& ladder, int family,
                                        int n, int runs, std::uint64_t base_seed) {
  if (runs < 1) throw std::invalid_argument("convergence_study requires runs >= 1");
  std::vector<StudyRow> rows;
  rows.reserve(ladder.size());
  for (const auto& entry : ladder) {
    if (entry.rule.dim() != n) {
      throw std::invalid_argument("convergence_study: rule dimension mismatch");
    }
    rows.push_back({entry.name, entry.rule.size(), entry.rule.degree, 0.0});
  }
  for (int r = 0; r < runs; ++r) {
    const GenzSpec spec = genz_random_spec(family, n, base_seed + static_cast<std::uint64_t>(r));
    const double exact = genz_exact_uniform(spec);
    for (size_t i = 0; i < ladder.size(); ++i) {
      const double est = ladder[i].rule.integrate(
          [&](const Eigen::RowVectorXd& x) { return genz_evaluate(spec, x); });
      rows[i].mean_error += std::abs(est - exact);
    }
  }
  for (auto& row : rows) row.mean_error /= static_cast<double>(runs);
  return rows;
}

}  // namespace cq
