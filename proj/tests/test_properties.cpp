// Randomized invariants. Each property draws its cases from a fixed-seed
// generator so failures reproduce; the failing case is CAPTUREd.

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

#include "dunbar/diffusion.hpp"
#include "dunbar/dunbar_analysis.hpp"
#include "dunbar/trust_distribution.hpp"

using namespace dunbar;

namespace {

constexpr int kCases = 300;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  TrustDistribution distribution() {
    switch (integer(0, 2)) {
      case 0: {
        const double lo = uniform(0.0, 0.5);
        return TrustDistribution::uniform(lo, uniform(lo + 0.1, 1.0));
      }
      case 1:
        return TrustDistribution::power_law(uniform(2.0, 3.0), uniform(0.01, 0.3), 1.0);
      default:
        return TrustDistribution::power_law(uniform(1.5, 3.5), 0.1, 1.0, DriverRange::Truncated);
    }
  }
};

}  // namespace

TEST_CASE("survival is monotone with the right end values") {
  Gen g(1);
  for (int c = 0; c < kCases; ++c) {
    const auto d = g.distribution();
    CAPTURE(d.describe());
    CHECK(survival_fraction(d, d.lo()) == 1.0);
    CHECK(survival_fraction(d, d.hi()) == 0.0);
    double a = g.uniform(0.0, 1.0), b = g.uniform(0.0, 1.0);
    if (a > b) std::swap(a, b);
    CHECK(survival_fraction(d, a) >= survival_fraction(d, b));
  }
}

TEST_CASE("cutoff inverts survival") {
  Gen g(2);
  for (int c = 0; c < kCases; ++c) {
    const auto d = g.distribution();
    const double tc = g.uniform(d.effective_lo(), d.hi());
    CAPTURE(d.describe());
    CAPTURE(tc);
    CHECK(std::abs(cutoff_for_fraction(d, survival_fraction(d, tc)) - tc) <= 1e-8);
    const double f = g.uniform(1e-4, 1.0);
    CHECK(std::abs(survival_fraction(d, cutoff_for_fraction(d, f)) - f) <= 1e-9);
  }
}

TEST_CASE("power-law density is linear in log-log space") {
  Gen g(3);
  for (int c = 0; c < kCases; ++c) {
    const double alpha = g.uniform(2.0, 3.0);
    const auto d = TrustDistribution::power_law(alpha);
    const double x1 = g.uniform(0.1, 1.0), x2 = g.uniform(0.1, 1.0);
    CHECK(pdf(d, x1) / pdf(d, x2) == doctest::Approx(std::pow(x1 / x2, -alpha)).epsilon(1e-12));
  }
}

TEST_CASE("uniform survival is exactly 1 - tc") {
  Gen g(4);
  const auto d = TrustDistribution::uniform();
  for (int c = 0; c < kCases; ++c) {
    const double tc = g.uniform(0.0, 1.0);
    CHECK(survival_fraction(d, tc) == 1.0 - tc);
  }
}

TEST_CASE("RK4 conserves mass, keeps i fixed and r monotone") {
  Gen g(5);
  for (int c = 0; c < 40; ++c) {
    const double i = g.uniform(0.0, 0.95);
    const double r0 = g.uniform(1e-4, 1.0 - i);
    const double beta = g.uniform(0.0, 1.0);
    CAPTURE(i);
    CAPTURE(r0);
    CAPTURE(beta);
    const auto traj = integrate_fractions(i, r0, beta, 1000, 0.05, 60.0);
    bool conserved = true, monotone = true, fixed_i = true;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const auto& st = traj.states[k];
      conserved &= std::abs(st.i + st.s + st.r - 1.0) <= 1e-9;
      fixed_i &= st.i == i;
      if (k) monotone &= st.r >= traj.states[k - 1].r && st.s <= traj.states[k - 1].s;
    }
    CHECK(conserved);
    CHECK(fixed_i);
    CHECK(monotone);
  }
}

TEST_CASE("logistic reaches its asymptote") {
  Gen g(6);
  for (int c = 0; c < kCases; ++c) {
    const double i = g.uniform(0.0, 0.99);
    const double r0 = g.uniform(1e-5, 1.0 - i);
    const double beta = g.uniform(0.05, 1.0);
    const double horizon = 50.0 / ((1.0 - i) * beta);
    CHECK(closed_form_r(horizon, i, r0, beta) >= (1.0 - i) * (1.0 - 1e-6));
    CHECK(closed_form_r(horizon, i, r0, beta) <= 1.0 - i);
  }
}

TEST_CASE("time to level shrinks as beta grows") {
  Gen g(7);
  for (int c = 0; c < kCases; ++c) {
    const int n = g.integer(10, 5000);
    const double tc = g.uniform(0.0, 0.9);
    auto p = ModelParams::with_single_seed(n, g.uniform(0.01, 0.5), tc, TrustDistribution::uniform());
    const double cap = 1.0 - p.ignorant_fraction();
    if (p.r0 >= cap) continue;
    const double target = p.r0 + g.uniform(0.01, 0.99) * (cap - p.r0);
    auto faster = p;
    faster.beta = p.beta * g.uniform(1.01, 2.0);
    CHECK(time_to_level(faster, target) < time_to_level(p, target));
  }
}

TEST_CASE("layer cutoffs: round trip, uniform closed form, monotone in N and alpha") {
  Gen g(8);
  for (int c = 0; c < kCases; ++c) {
    const auto d = g.distribution();
    const int n = g.integer(2, 20000);
    const int layer = g.integer(1, n);
    const auto res = cutoff_for_layer(d, n, layer);
    REQUIRE(res.feasible());
    CAPTURE(d.describe());
    CAPTURE(n);
    CAPTURE(layer);
    if (layer < n) {
      CHECK(std::abs(n * survival_fraction(d, *res.cutoff) - layer) <= 1e-6);
    }
    const auto u = cutoff_for_layer(TrustDistribution::uniform(), n, layer);
    CHECK(*u.cutoff == 1.0 - static_cast<double>(layer) / n);
  }

  for (const auto& d : {TrustDistribution::uniform(), TrustDistribution::power_law(2.1)}) {
    for (int layer : {5, 15, 50, 150}) {
      double prev = -1.0;
      for (int n : {150, 500, 1500, 5000}) {
        if (n <= layer) continue;
        const double cut = *cutoff_for_layer(d, n, layer).cutoff;
        CHECK(cut > prev);
        prev = cut;
      }
    }
  }

  std::vector<double> alphas;
  for (int k = 1; k <= 19; ++k) alphas.push_back(2.0 + 0.05 * k);
  for (int layer : {5, 15, 50}) {
    const auto t = alpha_cutoff_curve(150, layer, alphas);
    for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(*t.rows[k].value < *t.rows[k - 1].value);
  }
}

TEST_CASE("layer cutoffs are bitwise invariant in beta and r0") {
  Gen g(9);
  for (int c = 0; c < kCases; ++c) {
    const auto d = g.distribution();
    const int n = g.integer(2, 5000);
    const int layer = g.integer(1, n);
    ModelParams a{n, g.uniform(0.0, 1.0), g.uniform(0.0, 1.0), g.uniform(1e-4, 0.5), d};
    ModelParams b{n, g.uniform(0.0, 1.0), g.uniform(0.0, 1.0), g.uniform(1e-4, 0.5), d};
    CHECK(std::bit_cast<std::uint64_t>(*cutoff_for_layer(a, layer).cutoff) ==
          std::bit_cast<std::uint64_t>(*cutoff_for_layer(b, layer).cutoff));
  }
}
