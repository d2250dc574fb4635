#include "dunbar/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dunbar/errors.hpp"

namespace dunbar {

namespace {

// r0 may exceed 1 - i by rounding alone (1 - 0.9 < 0.1); such states have s = 0.
constexpr double kRoundingSlack = 1e-12;

void check_logistic_args(double t, double i, double r0, double beta) {
  if (!(t >= 0.0)) throw DomainError("time must be non-negative");
  if (!(i >= 0.0 && i < 1.0)) throw DomainError("ignorant fraction must lie in [0, 1)");
  if (!(r0 > 0.0)) throw DomainError("initial transmitter fraction must be positive");
  if (!(beta >= 0.0)) throw DomainError("transmission rate must be non-negative");
  if (r0 > 1.0 - i + kRoundingSlack) {
    throw InfeasibleStateError("initial transmitters exceed the participating fraction");
  }
}

}  // namespace

ModelParams ModelParams::with_single_seed(int n, double beta, double tc, TrustDistribution dist) {
  return ModelParams{n, beta, tc, 1.0 / static_cast<double>(n), dist};
}

double ModelParams::ignorant_fraction() const { return 1.0 - survival_fraction(dist, tc); }

void ModelParams::validate() const {
  if (n <= 1) throw DomainError("population size must exceed 1");
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  if (!(tc >= 0.0 && tc <= 1.0)) throw DomainError("trust cutoff must lie in [0, 1]");
  if (!(r0 > 0.0 && r0 < 1.0)) throw DomainError("r0 must lie in (0, 1)");
  if (r0 > survival_fraction(dist, tc) + kRoundingSlack) {
    throw InfeasibleStateError("r0 exceeds the fraction of the population at or above the cutoff");
  }
}

double closed_form_r(double t, double i, double r0, double beta) {
  check_logistic_args(t, i, r0, beta);
  // Same as e^{kt} K r0 / (K - r0 + r0 e^{kt}) divided through by e^{kt};
  // this form cannot overflow for large t.
  const double cap = 1.0 - i;
  const double decay = std::exp(-cap * beta * t);
  if (decay == 1.0) return r0;
  // The quotient can round one ulp above the cap once decay is negligible.
  return std::min(cap, cap * r0 / (r0 + (cap - r0) * decay));
}

double closed_form_r_no_ignorant(double t, double r0, double beta) {
  return closed_form_r(t, 0.0, r0, beta);
}

Trajectory integrate_fractions(double i, double r0, double beta, int n, double dt, double t_end) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (!(t_end >= dt)) throw DomainError("t_end must be at least one time step");
  check_logistic_args(0.0, i, r0, beta);

  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.informed.reserve(static_cast<std::size_t>(steps) + 1);

  double s = std::max(0.0, 1.0 - i - r0);
  double r = r0;
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back({i, s, r});
    traj.informed.push_back(informed_count(n, r));
  };
  record(0.0);

  // ds/dt = -beta s r, dr/dt = beta s r.
  auto flow = [beta](double s_, double r_) { return beta * s_ * r_; };
  for (long long k = 1; k <= steps; ++k) {
    const double t_prev = traj.times.back();
    const double t_next = k == steps ? t_end : static_cast<double>(k) * dt;
    const double h = t_next - t_prev;
    const double k1 = flow(s, r);
    const double k2 = flow(s - 0.5 * h * k1, r + 0.5 * h * k1);
    const double k3 = flow(s - 0.5 * h * k2, r + 0.5 * h * k2);
    const double k4 = flow(s - h * k3, r + h * k3);
    const double dr = h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    r += dr;
    s -= dr;
    record(t_next);
  }
  return traj;
}

Trajectory integrate(const ModelParams& params, double dt, double t_end) {
  params.validate();
  return integrate_fractions(params.ignorant_fraction(), params.r0, params.beta, params.n, dt,
                             t_end);
}

double time_to_level(const ModelParams& params, double target_r) {
  params.validate();
  const double i = params.ignorant_fraction();
  const double cap = 1.0 - i;
  const double r0 = params.r0;
  if (!(target_r >= r0)) throw DomainError("target fraction lies below r0");
  if (target_r >= cap) {
    throw UnreachableLevelError("target fraction " + std::to_string(target_r) +
                                " is at or above the saturation level");
  }
  if (params.beta == 0.0) throw UnreachableLevelError("beta = 0: transmitters never grow");
  if (target_r == r0) return 0.0;
  return std::log(target_r * (cap - r0) / (r0 * (cap - target_r))) / (cap * params.beta);
}

double informed_count(int n, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("fraction must lie in [0, 1]");
  return static_cast<double>(n) * r;
}

}  // namespace dunbar
