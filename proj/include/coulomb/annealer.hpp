#pragma once

#include <cstdint>
#include <optional>

#include "coulomb/rng.hpp"
#include "coulomb/types.hpp"

namespace coulomb {

// ring detection: radial gap (in units of the median nearest-neighbor
// spacing) that separates two rings, and the radius fraction of sqrt(M)
// below which particles count as the center group
inline constexpr double kGapFrac = 0.5;
inline constexpr double kCenterEps = 0.05;

inline constexpr double kPolishTol = 1e-8;
inline constexpr int kPolishMaxIters = 100000;

struct AnnealParams {
  int m = 2;
  double q = 0.0;
  double t0 = 1.0;
  double alpha = 0.95;  // geometric cooling per sweep
  int sweeps = 2000;
  int moves_per_sweep = 0;  // 0 means m
  double step_scale = 0.5;  // proposal stddev at t0, scaled by sqrt(t/t0)
  int restarts = 16;
  std::uint64_t seed = 42;
  double gap_frac = kGapFrac;
  double center_eps = kCenterEps;
};

struct RingSignature {
  std::vector<int> occupations;    // outermost first
  std::vector<double> ring_radii;  // mean radius per ring, decreasing
  std::vector<int> assignment;     // particle -> ring index
};

struct RestartOutcome {
  int index = 0;
  std::uint64_t seed = 0;  // params.seed XOR index
  double energy = 0.0;
  double grad_norm = 0.0;
  bool polish_converged = true;
};

struct AnnealResult {
  Configuration best;
  double best_energy = 0.0;
  RingSignature signature;
  std::optional<double> density_bulk;  // absent below 10 particles
  double grad_norm_after_polish = 0.0;
  std::vector<RestartOutcome> restarts;
};

// multi-start Metropolis annealing with per-restart RNG substreams, polish
// on each restart's best state, deterministic min-energy merge (ties break
// to the lowest restart index); identical params give bit-identical results
AnnealResult anneal(const AnnealParams& p);

// Armijo backtracking descent until the gradient 2-norm drops below 1e-8;
// energy is non-increasing across accepted steps, collected into trace when
// given; throws NonConvergence on iteration exhaustion
Configuration polish(const Configuration& c, const ModelParams& p,
                     std::vector<double>* trace = nullptr);

// groups particles into concentric rings: sort radii descending, start a new
// ring at radial gaps above gap_frac times the median nearest-neighbor
// spacing; particles below center_eps*sqrt(M) form the innermost group
RingSignature detect_rings(const Configuration& c, double gap_frac = kGapFrac,
                           double center_eps = kCenterEps);

// particle count inside 0.7 * max radius over that disc's area;
// needs at least 10 particles
double bulk_density(const Configuration& c);

// one fixed-temperature Metropolis pass of single-particle Gaussian moves;
// returns the number of accepted moves. include_pair=false drops the
// pairwise term, leaving independent particles in the confinement well
// (sampling diagnostics hook)
int metropolis_sweep(std::vector<Vec2>& z, const ModelParams& p, double temp,
                     double sigma, int moves, SplitMix64& rng,
                     bool include_pair = true);

// min(restarts, hardware threads), capped by COULOMB_RINGS_THREADS when set
int thread_budget(int restarts);

}  // namespace coulomb
