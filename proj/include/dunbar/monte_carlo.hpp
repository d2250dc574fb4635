#pragma once

#include <cstdint>
#include <vector>

#include "dunbar/diffusion.hpp"
#include "dunbar/trust_distribution.hpp"

// Agent-level stochastic counterpart of the mean-field dynamics.
//
// Each agent draws a static trust value. Agents below the cutoff are
// ignorant, the rest are susceptible except for the seed transmitters. With S
// susceptible and R transmitters in a well-mixed population of N, the next
// conversion happens after an exponential waiting time with rate
// beta * S * R / N and turns a uniformly chosen susceptible agent into a
// transmitter.

namespace dunbar {

enum class AgentStatus : std::uint8_t { Susceptible, Ignorant, Transmitter };

struct AgentPopulation {
  std::vector<double> trust;
  std::vector<AgentStatus> status;
  double tc = 0.0;

  int size() const { return static_cast<int>(trust.size()); }
  int count(AgentStatus which) const;
};

/// Draws n trust values and promotes `initial_transmitters` uniformly chosen
/// agents at or above tc. Throws NoSeedTransmitterError when too few agents
/// qualify.
AgentPopulation assign_trust(int n, const TrustDistribution& dist, double tc, std::uint64_t seed,
                             int initial_transmitters = 1);

struct RunRecord {
  int qualifying = 0;              // agents at or above tc, seeds included
  int initial_transmitters = 0;
  std::vector<double> conversion_times;  // one entry per S -> R event, increasing
  bool absorbed = false;           // S reached zero before t_end

  int final_transmitters() const {
    return initial_transmitters + static_cast<int>(conversion_times.size());
  }
  /// Transmitter count just after time t (right-continuous).
  int transmitters_at(double t) const;
  /// First time the transmitter count reaches `count`; +inf if never.
  double time_to_count(int count) const;
};

/// One event-driven run on an existing population; the population is
/// updated in place.
RunRecord simulate_run(AgentPopulation& population, double beta, double t_end, std::uint64_t seed);

struct EnsembleResult {
  std::vector<double> times;
  std::vector<double> mean_r;
  std::vector<double> std_r;
  int runs = 0;
  std::uint64_t seed = 0;
  std::vector<RunRecord> records;  // indexed by run
};

inline constexpr int kEnsembleGridPoints = 200;

/// Number of seed transmitters implied by r0 (rounded, at least one).
int initial_transmitter_count(const ModelParams& params);

/// `runs` independent runs. Run k is seeded with hash(seed) ^ k, so the
/// result does not depend on `threads` (0 picks the hardware count).
/// Statistics are taken on 200 evenly spaced points over [0, t_end].
EnsembleResult simulate_ensemble(const ModelParams& params, int runs, double t_end,
                                 std::uint64_t seed, unsigned threads = 1);

}  // namespace dunbar
