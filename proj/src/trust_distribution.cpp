#include "dunbar/trust_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "dunbar/errors.hpp"
#include "dunbar/numerics.hpp"

namespace dunbar {

namespace {

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Survival of the power law as generated by a driver spanning all of [0, 1].
double power_law_full_survival(const TrustDistribution& d, double tc) {
  if (tc <= d.lo()) return 1.0;
  if (tc >= d.hi()) return 0.0;
  const double e = 1.0 - d.alpha();
  const double lo_e = std::pow(d.lo(), e);
  const double hi_e = std::pow(d.hi(), e);
  return std::clamp((std::pow(tc, e) - hi_e) / (lo_e - hi_e), 0.0, 1.0);
}

double power_law_full_cutoff(const TrustDistribution& d, double f) {
  const double e = 1.0 - d.alpha();
  const double lo_e = std::pow(d.lo(), e);
  const double hi_e = std::pow(d.hi(), e);
  return std::clamp(std::pow(f * (lo_e - hi_e) + hi_e, 1.0 / e), d.lo(), d.hi());
}

double truncated_mass() { return 1.0 - TrustDistribution::kTruncatedDriverLow; }

}  // namespace

TrustDistribution TrustDistribution::uniform(double lo, double hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    throw DomainError("uniform trust needs 0 <= lo < hi <= 1, got [" + fmt_num(lo) + ", " +
                      fmt_num(hi) + "]");
  }
  return TrustDistribution(TrustKind::Uniform, lo, hi, 0.0, DriverRange::FullUnit);
}

TrustDistribution TrustDistribution::power_law(double alpha, double lo, double hi,
                                               DriverRange driver) {
  if (!(lo > 0.0 && lo < hi && hi <= 1.0)) {
    throw DomainError("power-law trust needs 0 < lo < hi <= 1, got [" + fmt_num(lo) + ", " +
                      fmt_num(hi) + "]");
  }
  if (!std::isfinite(alpha) || alpha == 1.0) {
    throw DomainError("power-law exponent must be finite and != 1, got " + fmt_num(alpha));
  }
  return TrustDistribution(TrustKind::BoundedPowerLaw, lo, hi, alpha, driver);
}

bool TrustDistribution::alpha_in_typical_range() const {
  return kind_ != TrustKind::BoundedPowerLaw || (alpha_ > 2.0 && alpha_ < 3.0);
}

double TrustDistribution::effective_lo() const {
  if (kind_ == TrustKind::BoundedPowerLaw && driver_ == DriverRange::Truncated) {
    return transform(kTruncatedDriverLow);
  }
  return lo_;
}

double TrustDistribution::transform(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("driver value must lie in [0, 1]");
  if (kind_ == TrustKind::Uniform) return std::clamp(lo_ + y * (hi_ - lo_), lo_, hi_);
  const double e = 1.0 - alpha_;
  const double lo_e = std::pow(lo_, e);
  const double hi_e = std::pow(hi_, e);
  return std::clamp(std::pow((hi_e - lo_e) * y + lo_e, 1.0 / e), lo_, hi_);
}

std::string TrustDistribution::describe() const {
  if (kind_ == TrustKind::Uniform) return "uniform[" + fmt_num(lo_) + "," + fmt_num(hi_) + "]";
  return "power-law(alpha=" + fmt_num(alpha_) + ",[" + fmt_num(lo_) + "," + fmt_num(hi_) + "]," +
         (driver_ == DriverRange::FullUnit ? "full-unit" : "truncated") + ")";
}

double pdf(const TrustDistribution& dist, double x) {
  if (!(x >= dist.lo() && x <= dist.hi())) {
    throw DomainError("pdf evaluated outside the trust support at x=" + fmt_num(x));
  }
  if (dist.kind() == TrustKind::Uniform) return 1.0 / (dist.hi() - dist.lo());

  const double e = 1.0 - dist.alpha();
  const double norm = e / (std::pow(dist.hi(), e) - std::pow(dist.lo(), e));
  double density = norm * std::pow(x, -dist.alpha());
  if (dist.driver() == DriverRange::Truncated) {
    if (x < dist.effective_lo()) return 0.0;
    density /= truncated_mass();
  }
  return density;
}

double survival_fraction(const TrustDistribution& dist, double tc) {
  if (!(tc >= 0.0 && tc <= 1.0)) {
    throw DomainError("trust cutoff must lie in [0, 1], got " + fmt_num(tc));
  }
  if (dist.kind() == TrustKind::Uniform) {
    if (tc <= dist.lo()) return 1.0;
    if (tc >= dist.hi()) return 0.0;
    return (dist.hi() - tc) / (dist.hi() - dist.lo());
  }
  const double full = power_law_full_survival(dist, tc);
  if (dist.driver() == DriverRange::FullUnit) return full;
  return std::min(1.0, full / truncated_mass());
}

double cutoff_for_fraction(const TrustDistribution& dist, double f) {
  if (!(f > 0.0 && f <= 1.0)) {
    throw DomainError("participating fraction must lie in (0, 1], got " + fmt_num(f));
  }
  if (f == 1.0) return dist.effective_lo();
  if (dist.kind() == TrustKind::Uniform) {
    return std::clamp(dist.hi() - f * (dist.hi() - dist.lo()), dist.lo(), dist.hi());
  }
  const double full = dist.driver() == DriverRange::FullUnit ? f : f * truncated_mass();
  return power_law_full_cutoff(dist, full);
}

double cutoff_for_fraction_bisect(const TrustDistribution& dist, double f) {
  if (!(f > 0.0 && f <= 1.0)) {
    throw DomainError("participating fraction must lie in (0, 1], got " + fmt_num(f));
  }
  const double lo = dist.effective_lo();
  if (f == 1.0) return lo;
  const auto res = numerics::bisect([&](double tc) { return survival_fraction(dist, tc) - f; },
                                    lo, dist.hi(), 1e-9, 200);
  return res.root;
}

std::vector<double> sample(const TrustDistribution& dist, std::uint64_t seed, long long count) {
  if (count <= 0) throw DomainError("sample count must be positive");
  std::mt19937_64 engine(seed);
  const double y_lo = (dist.kind() == TrustKind::BoundedPowerLaw &&
                       dist.driver() == DriverRange::Truncated)
                          ? TrustDistribution::kTruncatedDriverLow
                          : 0.0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    const double u = std::generate_canonical<double, 53>(engine);
    out.push_back(dist.transform(y_lo + (1.0 - y_lo) * u));
  }
  return out;
}

}  // namespace dunbar
