#include "dunbar/dunbar_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "dunbar/errors.hpp"

namespace dunbar {

namespace {

template <class T>
bool strictly_increasing(const std::vector<T>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](T a, T b) { return !(a < b); }) == v.end();
}

}  // namespace

void DunbarLayers::validate() const {
  if (levels.empty()) throw DomainError("at least one layer is required");
  if (levels.front() < 1) throw DomainError("layers must be at least 1");
  if (!strictly_increasing(levels)) throw DomainError("layers must be strictly increasing");
}

CutoffResult cutoff_for_layer(const TrustDistribution& dist, int n, int layer) {
  if (n <= 1) throw DomainError("population size must exceed 1");
  if (layer < 1) throw DomainError("layer must be at least 1");

  CutoffResult res{n, layer, dist, std::nullopt};
  // Largest attainable participating fraction is the survival at the bottom
  // of the support.
  const double max_informed = static_cast<double>(n) * survival_fraction(dist, 0.0);
  if (static_cast<double>(layer) > max_informed) return res;

  res.cutoff = cutoff_for_fraction(dist, static_cast<double>(layer) / static_cast<double>(n));
  return res;
}

CutoffResult cutoff_for_layer(const ModelParams& params, int layer) {
  return cutoff_for_layer(params.dist, params.n, layer);
}

std::vector<CutoffResult> cutoffs_for_layers(const TrustDistribution& dist, int n,
                                             const DunbarLayers& layers) {
  layers.validate();
  std::vector<CutoffResult> out;
  out.reserve(layers.levels.size());
  for (int layer : layers.levels) out.push_back(cutoff_for_layer(dist, n, layer));
  return out;
}

SweepTable sweep_cutoffs(const TrustDistribution& dist, int n, double step) {
  if (!(step > 0.0 && step < 1.0)) throw DomainError("sweep step must lie in (0, 1)");
  if (n <= 1) throw DomainError("population size must exceed 1");
  const auto count = static_cast<int>(std::floor(1.0 / step + 1e-9));
  SweepTable table{SweepAxis::TrustCutoff, {}};
  table.rows.reserve(static_cast<std::size_t>(count) + 1);
  for (int k = 0; k <= count; ++k) {
    const double tc = std::min(1.0, static_cast<double>(k) * step);
    table.rows.push_back({tc, static_cast<double>(n) * survival_fraction(dist, tc)});
  }
  return table;
}

SweepTable cutoff_vs_population(const TrustDistribution& dist, int layer,
                                const std::vector<int>& populations) {
  if (populations.empty()) throw DomainError("at least one population size is required");
  if (!strictly_increasing(populations)) {
    throw DomainError("population sizes must be strictly increasing");
  }
  SweepTable table{SweepAxis::PopulationSize, {}};
  for (int n : populations) {
    const auto res = cutoff_for_layer(dist, n, layer);
    // n == layer is solvable (cutoff at the bottom of the support) but the
    // ladder only makes sense for populations larger than the layer.
    std::optional<double> value = n > layer ? res.cutoff : std::nullopt;
    table.rows.push_back({static_cast<double>(n), value});
  }
  return table;
}

SweepTable alpha_cutoff_curve(int n, int layer, const std::vector<double>& alphas, double lo,
                              double hi, DriverRange driver) {
  if (alphas.empty()) throw DomainError("at least one exponent is required");
  if (!strictly_increasing(alphas)) throw DomainError("exponents must be strictly increasing");
  if (layer > n) {
    throw InfeasibleError("layer " + std::to_string(layer) + " exceeds population " +
                          std::to_string(n));
  }
  SweepTable table{SweepAxis::Alpha, {}};
  for (double alpha : alphas) {
    const auto res = cutoff_for_layer(TrustDistribution::power_law(alpha, lo, hi, driver), n, layer);
    if (!res.feasible()) throw InfeasibleError("layer unreachable for alpha " + std::to_string(alpha));
    table.rows.push_back({alpha, res.cutoff});
  }
  return table;
}

BetaIndependenceReport beta_independence_report(const TrustDistribution& dist, int n, int layer,
                                                const std::vector<double>& betas, double dt) {
  if (betas.empty()) throw DomainError("at least one beta is required");
  for (double b : betas) {
    if (!(b > 0.0)) throw DomainError("beta values must be positive");
  }

  BetaIndependenceReport report;
  report.t_end = 200.0 / *std::min_element(betas.begin(), betas.end());

  for (double beta : betas) {
    ModelParams params{n, beta, 0.0, 1.0 / static_cast<double>(n), dist};
    const auto res = cutoff_for_layer(params, layer);
    if (!res.feasible()) throw InfeasibleError("layer exceeds the reachable population");
    report.cutoffs.push_back(*res.cutoff);

    params.tc = *res.cutoff;
    params.r0 = std::min(params.r0, survival_fraction(dist, params.tc));
    const auto traj = integrate(params, dt, report.t_end);
    report.final_informed.push_back(traj.informed.back());
  }

  const auto first_bits = std::bit_cast<std::uint64_t>(report.cutoffs.front());
  report.cutoffs_identical =
      std::all_of(report.cutoffs.begin(), report.cutoffs.end(),
                  [&](double c) { return std::bit_cast<std::uint64_t>(c) == first_bits; });
  const auto [lo_it, hi_it] =
      std::minmax_element(report.final_informed.begin(), report.final_informed.end());
  report.dynamics_agree = *hi_it - *lo_it <= 0.5;
  return report;
}

bool beta_independence_check(const TrustDistribution& dist, int n, int layer,
                             const std::vector<double>& betas) {
  return beta_independence_report(dist, n, layer, betas).passed();
}

}  // namespace dunbar
