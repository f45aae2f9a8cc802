#include "cq/distribution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be a positive finite real");
  }
}

}  // namespace

Distribution Distribution::uniform(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform: lo must be < hi");
  Distribution d;
  d.kind_ = DistKind::uniform;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

Distribution Distribution::beta(double a, double b) { return beta(a, b, 0.0, 1.0); }

Distribution Distribution::beta(double a, double b, double lo, double hi) {
  require_positive(a, "beta shape a");
  require_positive(b, "beta shape b");
  if (!(lo < hi)) throw std::invalid_argument("beta: lo must be < hi");
  Distribution d;
  d.kind_ = DistKind::beta;
  d.a_ = a;
  d.b_ = b;
  d.lo_ = lo;
  d.hi_ = hi;
  // log B(a,b) via log-gamma; direct Gamma ratios overflow for large shapes.
  d.log_beta_norm_ = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return d;
}

Distribution Distribution::normal(double mean, double stddev) {
  require_positive(stddev, "normal stddev");
  if (!std::isfinite(mean)) throw std::invalid_argument("normal mean must be finite");
  Distribution d;
  d.kind_ = DistKind::normal;
  d.mean_ = mean;
  d.stddev_ = stddev;
  d.lo_ = -kInf;
  d.hi_ = kInf;
  return d;
}

double Distribution::center() const {
  return kind_ == DistKind::normal ? mean_ : 0.5 * (lo_ + hi_);
}

double Distribution::scale() const {
  return kind_ == DistKind::normal ? stddev_ : 0.5 * (hi_ - lo_);
}

double Distribution::pdf(double x) const {
  switch (kind_) {
    case DistKind::uniform:
      return (x >= lo_ && x <= hi_) ? 1.0 / (hi_ - lo_) : 0.0;
    case DistKind::beta: {
      if (x <= lo_ || x >= hi_) return 0.0;
      const double width = hi_ - lo_;
      const double u = (x - lo_) / width;
      const double log_pdf =
          (a_ - 1.0) * std::log(u) + (b_ - 1.0) * std::log1p(-u) - log_beta_norm_;
      return std::exp(log_pdf) / width;
    }
    case DistKind::normal: {
      const double z = (x - mean_) / stddev_;
      return std::exp(-0.5 * z * z) / (stddev_ * std::sqrt(2.0 * M_PI));
    }
  }
  return 0.0;
}

double Distribution::normalized_moment(int j) const {
  if (j < 0) throw std::invalid_argument("moment order must be nonnegative");
  switch (kind_) {
    case DistKind::uniform:
      return (j % 2 == 1) ? 0.0 : 1.0 / static_cast<double>(j + 1);
    case DistKind::beta: {
      // m_{k+1} = ((a-b) m_k + k m_{k-1}) / (a+b+k) for t = 2u - 1,
      // u ~ beta(a,b) on (0,1). All |m_k| <= 1, so the recurrence is stable.
      if (j == 0) return 1.0;
      double prev = 1.0;
      double cur = (a_ - b_) / (a_ + b_);
      for (int k = 1; k < j; ++k) {
        const double next = ((a_ - b_) * cur + k * prev) / (a_ + b_ + k);
        prev = cur;
        cur = next;
      }
      return cur;
    }
    case DistKind::normal: {
      if (j % 2 == 1) return 0.0;
      double m = 1.0;  // (j-1)!! for even j
      for (int k = 2; k <= j; k += 2) {
        m *= static_cast<double>(k - 1);
        if (!std::isfinite(m)) {
          throw std::overflow_error("normal moment of order " + std::to_string(j) +
                                    " exceeds representable range");
        }
      }
      return m;
    }
  }
  return 0.0;
}

double Distribution::raw_moment(int j) const {
  if (j < 0) throw std::invalid_argument("moment order must be nonnegative");
  const double c = center();
  const double h = scale();
  // E[(c + h t)^j] expanded over standardized moments.
  double sum = 0.0;
  double binom = 1.0;  // C(j, k)
  for (int k = 0; k <= j; ++k) {
    if (k > 0) binom *= static_cast<double>(j - k + 1) / static_cast<double>(k);
    const double term = binom * std::pow(c, j - k) * std::pow(h, k) * normalized_moment(k);
    sum += term;
    if (!std::isfinite(sum)) {
      throw std::overflow_error("raw moment of order " + std::to_string(j) +
                                " exceeds representable range");
    }
  }
  return sum;
}

std::optional<double> Distribution::symmetry_center() const {
  switch (kind_) {
    case DistKind::uniform:
      return center();
    case DistKind::beta:
      return a_ == b_ ? std::optional<double>(center()) : std::nullopt;
    case DistKind::normal:
      return mean_;
  }
  return std::nullopt;
}

bool Distribution::operator==(const Distribution& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case DistKind::uniform:
      return lo_ == o.lo_ && hi_ == o.hi_;
    case DistKind::beta:
      return a_ == o.a_ && b_ == o.b_ && lo_ == o.lo_ && hi_ == o.hi_;
    case DistKind::normal:
      return mean_ == o.mean_ && stddev_ == o.stddev_;
  }
  return false;
}

std::string Distribution::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case DistKind::uniform:
      os << "uniform[" << lo_ << ", " << hi_ << "]";
      break;
    case DistKind::beta:
      os << "beta(" << a_ << ", " << b_ << ") on (" << lo_ << ", " << hi_ << ")";
      break;
    case DistKind::normal:
      os << "normal(" << mean_ << ", " << stddev_ << ")";
      break;
  }
  return os.str();
}

}  // namespace cq
