#pragma once

#include <optional>
#include <vector>

#include "dunbar/diffusion.hpp"
#include "dunbar/trust_distribution.hpp"

// Trust cutoffs at which the asymptotic informed head count n * f reaches a
// Dunbar layer, and the sweep tables built from them.
//
// A layer L is reached when n * survival_fraction(tc) >= L. The solved
// cutoff is the largest such tc. Only the t -> infinity limit of the
// logistic enters, so beta and r0 never influence the answer.

namespace dunbar {

struct DunbarLayers {
  std::vector<int> levels{5, 15, 50, 150};

  /// Throws DomainError unless levels are strictly increasing and >= 1.
  void validate() const;
};

struct CutoffResult {
  int n = 0;
  int layer = 0;
  TrustDistribution dist = TrustDistribution::uniform();
  std::optional<double> cutoff;  // empty when the layer cannot be reached

  bool feasible() const { return cutoff.has_value(); }
};

enum class SweepAxis { TrustCutoff, Alpha, PopulationSize };

struct SweepRow {
  double axis_value = 0.0;
  std::optional<double> value;  // informed count or cutoff; empty if infeasible
};

struct SweepTable {
  SweepAxis axis = SweepAxis::TrustCutoff;
  std::vector<SweepRow> rows;
};

CutoffResult cutoff_for_layer(const TrustDistribution& dist, int n, int layer);

/// Overload taking a full scenario; beta, tc and r0 are ignored.
CutoffResult cutoff_for_layer(const ModelParams& params, int layer);

std::vector<CutoffResult> cutoffs_for_layers(const TrustDistribution& dist, int n,
                                             const DunbarLayers& layers);

/// Asymptotic informed count at every cutoff 0, step, 2*step, ... <= 1.
SweepTable sweep_cutoffs(const TrustDistribution& dist, int n, double step = 0.01);

/// Cutoff needed for the same layer as the population grows. Rows with
/// n <= layer are flagged infeasible instead of throwing.
SweepTable cutoff_vs_population(const TrustDistribution& dist, int layer,
                                const std::vector<int>& populations);

/// Cutoff per power-law exponent, using the given support and driver.
/// Throws InfeasibleError when the layer exceeds n.
SweepTable alpha_cutoff_curve(int n, int layer, const std::vector<double>& alphas,
                              double lo = 0.1, double hi = 1.0,
                              DriverRange driver = DriverRange::FullUnit);

struct BetaIndependenceReport {
  bool cutoffs_identical = false;
  bool dynamics_agree = false;
  std::vector<double> cutoffs;          // one per beta
  std::vector<double> final_informed;   // integrated n * r at t_end, one per beta
  double t_end = 0.0;

  bool passed() const { return cutoffs_identical && dynamics_agree; }
};

/// Solves the layer cutoff once per beta and integrates the dynamics at the
/// solved cutoff up to 200 / min(beta). Final informed counts must agree
/// within 0.5 persons.
BetaIndependenceReport beta_independence_report(const TrustDistribution& dist, int n, int layer,
                                                const std::vector<double>& betas,
                                                double dt = 0.01);

bool beta_independence_check(const TrustDistribution& dist, int n, int layer,
                             const std::vector<double>& betas);

}  // namespace dunbar
