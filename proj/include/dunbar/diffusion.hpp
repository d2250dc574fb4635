#pragma once

#include <vector>

#include "dunbar/trust_distribution.hpp"

// Mean-field ignorant / susceptible / transmitter dynamics.
//
// Everything works on population fractions: i (ignorant, trust below the
// cutoff), s (susceptible, not yet informed) and r (transmitters). The
// ignorant share never changes and s flows into r at rate beta * s * r, so r
// follows a logistic curve saturating at 1 - i. Head counts are the
// N-scaled image of the same equations and are obtained through
// informed_count().

namespace dunbar {

struct ModelParams {
  int n = 150;
  double beta = 0.25;
  double tc = 0.0;
  double r0 = 1.0 / 150.0;
  TrustDistribution dist = TrustDistribution::uniform();

  /// Parameters with one initial transmitter (r0 = 1/n).
  static ModelParams with_single_seed(int n, double beta, double tc, TrustDistribution dist);

  /// Ignorant fraction implied by the cutoff.
  double ignorant_fraction() const;

  /// Throws DomainError on out-of-range fields and InfeasibleStateError when
  /// r0 exceeds the participating fraction.
  void validate() const;
};

struct PopulationFractions {
  double i = 0.0;
  double s = 0.0;
  double r = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PopulationFractions> states;
  std::vector<double> informed;  // n * r at each time

  std::size_t size() const { return times.size(); }
};

/// Transmitter fraction at time t for ignorant fraction i, starting from r0.
double closed_form_r(double t, double i, double r0, double beta);

/// closed_form_r with nobody ignorant.
double closed_form_r_no_ignorant(double t, double r0, double beta);

/// Fixed-step RK4 integration of the normalized system up to t_end. The
/// final step is shortened when t_end is not a multiple of dt.
Trajectory integrate(const ModelParams& params, double dt = 0.01, double t_end = 100.0);

/// Same integration driven directly by fractions. n only scales the
/// informed column.
Trajectory integrate_fractions(double i, double r0, double beta, int n, double dt, double t_end);

/// Time at which the closed-form transmitter fraction reaches target_r.
double time_to_level(const ModelParams& params, double target_r);

double informed_count(int n, double r);

}  // namespace dunbar
