#include "dunbar/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "dunbar/errors.hpp"

namespace dunbar {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return std::mt19937_64(seq);
}

// splitmix64 finalizer. Scrambling the base seed keeps ensembles with nearby
// seeds from sharing runs (123 ^ k and 124 ^ k cover the same set for k < 64).
std::uint64_t scramble(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint32_t kPromoteStream = 1;
constexpr std::uint32_t kEventStream = 2;

}  // namespace

int AgentPopulation::count(AgentStatus which) const {
  return static_cast<int>(std::count(status.begin(), status.end(), which));
}

AgentPopulation assign_trust(int n, const TrustDistribution& dist, double tc, std::uint64_t seed,
                             int initial_transmitters) {
  if (n <= 1) throw DomainError("population size must exceed 1");
  if (!(tc >= 0.0 && tc <= 1.0)) throw DomainError("trust cutoff must lie in [0, 1]");
  if (initial_transmitters < 1) throw DomainError("need at least one initial transmitter");

  AgentPopulation pop;
  pop.tc = tc;
  pop.trust = sample(dist, seed, n);
  pop.status.resize(pop.trust.size());
  std::vector<int> qualifying;
  for (int a = 0; a < n; ++a) {
    if (pop.trust[a] < tc) {
      pop.status[a] = AgentStatus::Ignorant;
    } else {
      pop.status[a] = AgentStatus::Susceptible;
      qualifying.push_back(a);
    }
  }
  if (static_cast<int>(qualifying.size()) < initial_transmitters) {
    throw NoSeedTransmitterError("only " + std::to_string(qualifying.size()) +
                                 " agents have trust at or above the cutoff");
  }

  auto engine = make_engine(seed, kPromoteStream);
  // Partial Fisher-Yates: the first `initial_transmitters` entries become seeds.
  for (int k = 0; k < initial_transmitters; ++k) {
    std::uniform_int_distribution<int> pick(k, static_cast<int>(qualifying.size()) - 1);
    std::swap(qualifying[k], qualifying[pick(engine)]);
    pop.status[qualifying[k]] = AgentStatus::Transmitter;
  }
  return pop;
}

int RunRecord::transmitters_at(double t) const {
  const auto fired = std::upper_bound(conversion_times.begin(), conversion_times.end(), t) -
                     conversion_times.begin();
  return initial_transmitters + static_cast<int>(fired);
}

double RunRecord::time_to_count(int count) const {
  if (count <= initial_transmitters) return 0.0;
  const auto idx = static_cast<std::size_t>(count - initial_transmitters - 1);
  if (idx >= conversion_times.size()) return std::numeric_limits<double>::infinity();
  return conversion_times[idx];
}

RunRecord simulate_run(AgentPopulation& population, double beta, double t_end,
                       std::uint64_t seed) {
  if (!(beta >= 0.0)) throw DomainError("beta must be non-negative");
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");

  std::vector<int> susceptible;
  int transmitters = 0;
  for (int a = 0; a < population.size(); ++a) {
    if (population.status[a] == AgentStatus::Susceptible) susceptible.push_back(a);
    if (population.status[a] == AgentStatus::Transmitter) ++transmitters;
  }

  RunRecord rec;
  rec.initial_transmitters = transmitters;
  rec.qualifying = transmitters + static_cast<int>(susceptible.size());
  rec.conversion_times.reserve(susceptible.size());

  auto engine = make_engine(seed, kEventStream);
  const double n = static_cast<double>(population.size());
  double t = 0.0;
  while (!susceptible.empty()) {
    const double rate = beta * static_cast<double>(susceptible.size()) *
                        static_cast<double>(transmitters) / n;
    if (rate <= 0.0) break;
    t += std::exponential_distribution<double>(rate)(engine);
    if (t > t_end) break;
    std::uniform_int_distribution<std::size_t> pick(0, susceptible.size() - 1);
    const std::size_t slot = pick(engine);
    population.status[susceptible[slot]] = AgentStatus::Transmitter;
    susceptible[slot] = susceptible.back();
    susceptible.pop_back();
    ++transmitters;
    rec.conversion_times.push_back(t);
  }
  rec.absorbed = susceptible.empty();
  return rec;
}

int initial_transmitter_count(const ModelParams& params) {
  return std::max(1, static_cast<int>(std::lround(params.r0 * params.n)));
}

EnsembleResult simulate_ensemble(const ModelParams& params, int runs, double t_end,
                                 std::uint64_t seed, unsigned threads) {
  params.validate();
  if (runs < 1) throw DomainError("need at least one run");
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");

  const int seeds = initial_transmitter_count(params);
  EnsembleResult out;
  out.runs = runs;
  out.seed = seed;
  out.records.resize(static_cast<std::size_t>(runs));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(runs));

  auto run_one = [&](int k) {
    try {
      const std::uint64_t run_seed = scramble(seed) ^ static_cast<std::uint64_t>(k);
      auto pop = assign_trust(params.n, params.dist, params.tc, run_seed, seeds);
      out.records[k] = simulate_run(pop, params.beta, t_end, run_seed);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(runs));
  if (threads <= 1) {
    for (int k = 0; k < runs; ++k) run_one(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int k = next++; k < runs; k = next++) run_one(k);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Ordered reduction by run index.
  const double n = static_cast<double>(params.n);
  out.times.resize(kEnsembleGridPoints);
  out.mean_r.assign(kEnsembleGridPoints, 0.0);
  out.std_r.assign(kEnsembleGridPoints, 0.0);
  for (int j = 0; j < kEnsembleGridPoints; ++j) {
    const double t = t_end * static_cast<double>(j) / (kEnsembleGridPoints - 1);
    out.times[j] = t;
    // Integer head counts keep the moments exact.
    long long sum = 0;
    long long sum_sq = 0;
    for (const auto& rec : out.records) {
      const long long c = rec.transmitters_at(t);
      sum += c;
      sum_sq += c * c;
    }
    out.mean_r[j] = static_cast<double>(sum) / runs / n;
    if (runs > 1) {
      const long long spread = static_cast<long long>(runs) * sum_sq - sum * sum;
      const double var = static_cast<double>(spread) / (static_cast<double>(runs) * (runs - 1));
      out.std_r[j] = std::sqrt(var) / n;
    }
  }
  return out;
}

}  // namespace dunbar
