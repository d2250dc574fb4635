#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dunbar {

enum class TrustKind { Uniform, BoundedPowerLaw };

// Range of the uniform driver y fed through the inverse transform.
// FullUnit draws y from [0, 1]; Truncated draws y from [0.1, 1], which
// removes the lowest decile of the trust mass.
enum class DriverRange { FullUnit, Truncated };

/// Static trust values assigned to individuals.
///
/// Uniform trust is spread evenly over [lo, hi]. Bounded power-law trust has
/// density proportional to x^(-alpha) on [lo, hi] and is generated from a
/// uniform driver by inverse transform. All CDF math lives here so that the
/// analysis and simulation layers only ever ask for survival fractions,
/// cutoffs or samples.
///
/// Objects are immutable after construction.
class TrustDistribution {
 public:
  static constexpr double kTruncatedDriverLow = 0.1;

  /// Uniform trust on [lo, hi]; requires 0 <= lo < hi <= 1.
  static TrustDistribution uniform(double lo = 0.0, double hi = 1.0);

  /// Decaying power law x^(-alpha) on [lo, hi]; requires 0 < lo < hi <= 1 and
  /// alpha != 1. Exponents outside (2, 3) are accepted; check
  /// alpha_in_typical_range() to warn about them.
  static TrustDistribution power_law(double alpha, double lo = 0.1, double hi = 1.0,
                                     DriverRange driver = DriverRange::FullUnit);

  TrustKind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double alpha() const { return alpha_; }
  DriverRange driver() const { return driver_; }

  bool alpha_in_typical_range() const;

  /// Lowest trust value the configured driver can produce. Equals lo() except
  /// for a power law with the Truncated driver.
  double effective_lo() const;

  /// Maps a driver value y in [0, 1] to a trust value. y = 0 gives lo and
  /// y = 1 gives hi regardless of the configured driver range.
  double transform(double y) const;

  std::string describe() const;

  friend bool operator==(const TrustDistribution&, const TrustDistribution&) = default;

 private:
  TrustDistribution(TrustKind kind, double lo, double hi, double alpha, DriverRange driver)
      : kind_(kind), lo_(lo), hi_(hi), alpha_(alpha), driver_(driver) {}

  TrustKind kind_;
  double lo_;
  double hi_;
  double alpha_;
  DriverRange driver_;
};

/// Probability density at x. Throws DomainError outside [lo, hi].
double pdf(const TrustDistribution& dist, double x);

/// P(trust >= tc), the fraction of the population that takes part in the
/// diffusion. Throws DomainError unless 0 <= tc <= 1.
double survival_fraction(const TrustDistribution& dist, double tc);

/// Inverse of survival_fraction: the cutoff whose survival equals f.
/// f = 1 returns effective_lo(). Throws DomainError unless 0 < f <= 1.
double cutoff_for_fraction(const TrustDistribution& dist, double f);

/// Same contract as cutoff_for_fraction, solved by bisection on the
/// survival function (tolerance 1e-9, at most 200 halvings).
double cutoff_for_fraction_bisect(const TrustDistribution& dist, double f);

/// count deterministic draws for the given seed, each within [lo, hi].
std::vector<double> sample(const TrustDistribution& dist, std::uint64_t seed, long long count);

}  // namespace dunbar
