#pragma once

#include <optional>
#include <string>

namespace cq {

enum class DistKind { uniform, beta, normal };

/// A one-dimensional probability measure with closed-form moments.
///
/// Three families are supported: uniform on a closed interval, beta(a, b)
/// affinely mapped onto an interval, and normal(mean, stddev). Moments are
/// evaluated by per-family recurrences rather than numerical integration, so
/// the right-hand sides of Vandermonde systems are accurate to machine
/// precision.
///
/// Instances are immutable value objects and safe to share across threads.
class Distribution {
 public:
  static Distribution uniform(double lo, double hi);
  static Distribution beta(double a, double b);  // on (0, 1)
  static Distribution beta(double a, double b, double lo, double hi);
  static Distribution normal(double mean, double stddev);

  DistKind kind() const { return kind_; }

  /// Beta shape parameters; only meaningful for kind() == beta.
  double shape_a() const { return a_; }
  double shape_b() const { return b_; }
  double mean_param() const { return mean_; }
  double stddev_param() const { return stddev_; }

  /// Density value; 0 outside the support.
  double pdf(double x) const;

  /// E[x^j] in physical coordinates. Throws std::overflow_error when the
  /// closed form exceeds the representable range.
  double raw_moment(int j) const;

  /// E[t^j] for the standardized variable t, where x = center() + scale()*t.
  /// For uniform/beta t ranges over [-1, 1]; for normal t is standard normal.
  double normalized_moment(int j) const;

  /// Present iff the density is mirror symmetric (uniform, beta(a,a), normal).
  std::optional<double> symmetry_center() const;

  bool bounded() const { return kind_ != DistKind::normal; }
  double lower() const { return lo_; }  // -inf for normal
  double upper() const { return hi_; }  // +inf for normal

  /// Affine standardization x = center + scale * t.
  double center() const;
  double scale() const;

  bool operator==(const Distribution& o) const;

  std::string describe() const;

 private:
  Distribution() = default;

  DistKind kind_ = DistKind::uniform;
  double a_ = 0.0, b_ = 0.0;        // beta shapes
  double mean_ = 0.0, stddev_ = 1.0;  // normal parameters
  double lo_ = -1.0, hi_ = 1.0;     // support (uniform/beta)
  double log_beta_norm_ = 0.0;      // log B(a, b), cached for pdf
};

}  // namespace cq
