#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "coulomb/annealer.hpp"
#include "coulomb/energy.hpp"
#include "coulomb/spectral.hpp"
#include "test_util.hpp"

using namespace coulomb;

namespace {

AnnealParams quick_params(int m, std::uint64_t seed = 42) {
  AnnealParams p;
  p.m = m;
  p.seed = seed;
  p.sweeps = 600;
  p.restarts = 6;
  return p;
}

bool same_bits(const Configuration& a, const Configuration& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.positions[i].x() != b.positions[i].x() ||
        a.positions[i].y() != b.positions[i].y())
      return false;
  return true;
}

}  // namespace

TEST_CASE("parameter validation") {
  AnnealParams p;
  p.m = 0;
  CHECK_THROWS_AS(anneal(p), TooFewParticles);
  p = AnnealParams{};
  p.q = -1.0;
  CHECK_THROWS_AS(anneal(p), Error);
  p = AnnealParams{};
  p.alpha = 1.0;
  CHECK_THROWS_AS(anneal(p), Error);
  p = AnnealParams{};
  p.t0 = 0.0;
  CHECK_THROWS_AS(anneal(p), Error);
  p = AnnealParams{};
  p.sweeps = 0;
  CHECK_THROWS_AS(anneal(p), Error);
  p = AnnealParams{};
  p.step_scale = -0.1;
  CHECK_THROWS_AS(anneal(p), Error);
}

TEST_CASE("identical parameters give bit-identical results") {
  AnnealParams p = quick_params(6);
  AnnealResult a = anneal(p);
  AnnealResult b = anneal(p);
  CHECK(a.best_energy == b.best_energy);
  CHECK(a.grad_norm_after_polish == b.grad_norm_after_polish);
  CHECK(same_bits(a.best, b.best));
  REQUIRE(a.restarts.size() == b.restarts.size());
  for (std::size_t i = 0; i < a.restarts.size(); ++i) {
    CHECK(a.restarts[i].energy == b.restarts[i].energy);
    CHECK(a.restarts[i].grad_norm == b.restarts[i].grad_norm);
    CHECK(a.restarts[i].seed == (p.seed ^ a.restarts[i].index));
  }
  CHECK(a.signature.occupations == b.signature.occupations);

  // a different seed explores differently (restart energies differ)
  AnnealResult c = anneal(quick_params(6, 7));
  bool any_diff = false;
  for (std::size_t i = 0; i < c.restarts.size(); ++i)
    any_diff = any_diff || c.restarts[i].energy != a.restarts[i].energy;
  CHECK(any_diff);
}

TEST_CASE("two particles settle at squared distance 2") {
  AnnealResult r = anneal(quick_params(2));
  CHECK(r.best_energy ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-10));
  const Vec2 d = r.best.positions[0] - r.best.positions[1];
  CHECK(d.squaredNorm() == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(r.grad_norm_after_polish < kPolishTol);
  CHECK_FALSE(r.density_bulk.has_value());
}

TEST_CASE("small clusters anneal to single rings at the exact energy") {
  for (int m : {3, 4, 5}) {
    AnnealResult r = anneal(quick_params(m));
    const double want =
        ring_closed_form(m, std::sqrt(equilibrium_radius(m, 0.0)), 0.0);
    CHECK(r.best_energy == doctest::Approx(want).epsilon(1e-10));
    CHECK(r.signature.occupations == std::vector<int>{m});
  }
}

TEST_CASE("six particles prefer the centered pentagon") {
  AnnealParams p = quick_params(6);
  p.sweeps = 1200;
  p.restarts = 8;
  AnnealResult r = anneal(p);
  const double pent = 15.0 - 15.0 * std::log(3.0) - 5.0 * std::log(5.0);
  CHECK(r.best_energy == doctest::Approx(pent).epsilon(1e-9));
  CHECK(r.signature.occupations == std::vector<int>{5, 1});
}

TEST_CASE("ten particles form two rings") {
  AnnealParams p = quick_params(10);
  p.sweeps = 1500;
  p.restarts = 10;
  AnnealResult r = anneal(p);
  CHECK(r.signature.occupations == std::vector<int>{8, 2});
  CHECK(r.grad_norm_after_polish < kPolishTol);
  CHECK(r.density_bulk.has_value());
}

TEST_CASE("polish leaves a converged point untouched") {
  Configuration hex = equilibrium_ring(6, 0.0);
  Configuration out = polish(hex, ModelParams{});
  CHECK(same_bits(hex, out));
}

TEST_CASE("polish restores a perturbed hexagon") {
  Configuration hex = equilibrium_ring(6, 0.0);
  SplitMix64 rng{11};
  Configuration bent = hex;
  for (auto& z : bent.positions)
    z += Vec2{1e-3 * (rng.uniform() - 0.5), 1e-3 * (rng.uniform() - 0.5)};
  std::vector<double> trace;
  Configuration out = polish(bent, ModelParams{}, &trace);
  const double hex_v = 15.0 - 15.0 * std::log(2.5) - 6.0 * std::log(6.0);
  CHECK(energy(out, ModelParams{}).total ==
        doctest::Approx(hex_v).epsilon(1e-12));
  CHECK(gradient(out, ModelParams{}).norm() < kPolishTol);
  REQUIRE(trace.size() >= 2);
  for (std::size_t i = 0; i + 1 < trace.size(); ++i)
    CHECK(trace[i + 1] <= trace[i]);  // descent never backtracks uphill
}

TEST_CASE("polished random clusters are local minima") {
  SplitMix64 rng{5150};
  for (int rep = 0; rep < 3; ++rep) {
    Configuration c = random_configuration(6, rng, 1.8, 0.4);
    Configuration out = polish(c, ModelParams{});
    HessianMatrix h = hessian_analytic(out, ModelParams{});
    // interior minimum: at worst the rotation zero mode sits at the bottom
    CHECK(h.eigenvalues(0) > -kZeroModeTol);
    CHECK(energy(out, ModelParams{}).total <=
          energy(c, ModelParams{}).total);
  }
}

TEST_CASE("ring detection on synthetic clusters") {
  Configuration hex = equilibrium_ring(6, 0.0);
  RingSignature sig = detect_rings(hex);
  CHECK(sig.occupations == std::vector<int>{6});
  REQUIRE(sig.ring_radii.size() == 1);
  CHECK(sig.ring_radii[0] == doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
  CHECK(sig.assignment == std::vector<int>(6, 0));

  Configuration pent{ring_positions(5, std::sqrt(3.0))};
  pent.positions.emplace_back(0.0, 0.0);
  sig = detect_rings(pent);
  CHECK(sig.occupations == std::vector<int>{5, 1});
  REQUIRE(sig.ring_radii.size() == 2);
  CHECK(sig.ring_radii[1] == 0.0);
  CHECK(sig.assignment == std::vector<int>{0, 0, 0, 0, 0, 1});

  Configuration two{ring_positions(8, 2.2)};
  for (const auto& z : ring_positions(2, 0.7)) two.positions.push_back(z);
  sig = detect_rings(two);
  CHECK(sig.occupations == std::vector<int>{8, 2});
  CHECK(sig.ring_radii[0] == doctest::Approx(2.2).epsilon(1e-12));
  CHECK(sig.ring_radii[1] == doctest::Approx(0.7).epsilon(1e-12));

  Configuration lone{{Vec2{0.3, 0.1}}};
  CHECK(detect_rings(lone).occupations == std::vector<int>{1});
}

TEST_CASE("bulk density of a uniform disc sample approaches 1/pi") {
  // inverse-cdf radii spread evenly in angle give an exactly uniform disc
  const std::size_t n = 4000;
  const double big_r = 3.0;
  Configuration c;
  SplitMix64 rng{314};
  for (std::size_t i = 0; i < n; ++i) {
    const double r = big_r * std::sqrt((i + 0.5) / n);
    const double th = 2.0 * M_PI * rng.uniform();
    c.positions.push_back(Vec2{r * std::cos(th), r * std::sin(th)});
  }
  const double rho = bulk_density(c);
  const double uniform_rho = n / (M_PI * big_r * big_r);
  CHECK(rho == doctest::Approx(uniform_rho).epsilon(0.05));

  Configuration few{ring_positions(9, 1.0)};
  CHECK_THROWS_AS(bulk_density(few), TooFewParticles);
}

TEST_CASE("fixed-temperature sweeps sample the confinement Boltzmann law") {
  // pair term off: particles are independent, P(|z| < r) = 1 - exp(-r^2/T)
  const double temp = 0.7;
  const double sigma = 0.5 * std::sqrt(temp);
  const std::size_t walkers = 64;
  ModelParams mp;

  SplitMix64 rng{20260819};
  std::vector<Vec2> z(walkers, Vec2{0.0, 0.0});
  for (auto& w : z) w = Vec2{rng.gaussian() * 0.5, rng.gaussian() * 0.5};

  int accepted = 0, proposed = 0;
  for (int burn = 0; burn < 500; ++burn)
    metropolis_sweep(z, mp, temp, sigma, walkers, rng, false);

  const int bins = 16;
  std::vector<double> edge(bins - 1);
  for (int k = 1; k < bins; ++k)
    edge[k - 1] = std::sqrt(-temp * std::log(1.0 - double(k) / bins));
  std::vector<int> count(bins, 0);
  const int snapshots = 200;
  for (int s = 0; s < snapshots; ++s) {
    for (int thin = 0; thin < 10; ++thin) {
      accepted += metropolis_sweep(z, mp, temp, sigma, walkers, rng, false);
      proposed += walkers;
    }
    for (const auto& w : z) {
      const double r = w.norm();
      int b = 0;
      while (b < bins - 1 && r >= edge[b]) ++b;
      ++count[b];
    }
  }

  const double expect = double(walkers) * snapshots / bins;
  double chi2 = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double d = count[b] - expect;
    chi2 += d * d / expect;
  }
  // 1% critical value of chi-square with 15 degrees of freedom
  CHECK(chi2 < 30.578);
  CHECK(double(accepted) / proposed > 0.3);
  CHECK(double(accepted) / proposed < 0.9);
}

TEST_CASE("sweep rejects bad temperature or step") {
  std::vector<Vec2> z{Vec2{1.0, 0.0}, Vec2{-1.0, 0.0}};
  SplitMix64 rng{1};
  ModelParams mp;
  CHECK_THROWS_AS(metropolis_sweep(z, mp, 0.0, 0.1, 2, rng), Error);
  CHECK_THROWS_AS(metropolis_sweep(z, mp, 1.0, -0.1, 2, rng), Error);
}

TEST_CASE("thread budget respects the environment cap") {
  setenv("COULOMB_RINGS_THREADS", "2", 1);
  CHECK(thread_budget(8) == 2);
  CHECK(thread_budget(1) == 1);
  setenv("COULOMB_RINGS_THREADS", "1", 1);
  CHECK(thread_budget(16) == 1);
  unsetenv("COULOMB_RINGS_THREADS");
  CHECK(thread_budget(4) >= 1);
  CHECK(thread_budget(4) <= 4);
}

TEST_CASE("threaded and serial runs agree bit for bit") {
  AnnealParams p = quick_params(5);
  setenv("COULOMB_RINGS_THREADS", "1", 1);
  AnnealResult serial = anneal(p);
  setenv("COULOMB_RINGS_THREADS", "4", 1);
  AnnealResult threaded = anneal(p);
  unsetenv("COULOMB_RINGS_THREADS");
  CHECK(serial.best_energy == threaded.best_energy);
  CHECK(same_bits(serial.best, threaded.best));
  for (std::size_t i = 0; i < serial.restarts.size(); ++i)
    CHECK(serial.restarts[i].energy == threaded.restarts[i].energy);
}
