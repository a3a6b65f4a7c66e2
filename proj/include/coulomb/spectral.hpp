#pragma once

#include "coulomb/types.hpp"

namespace coulomb {

struct RingAnsatz {
  std::size_t n = 2;  // particles on the ring, >= 2
  double q = 0.0;     // enclosed charge, >= 0
  double r = 1.0;     // ring radius, > 0
};

// closed-form fluctuation spectra of the equilibrium ring, mode index
// s = 0..n-1; s and n-s are degenerate
struct RingSpectrum {
  std::vector<double> angular;  // s(n-s)
  std::vector<double> radial;   // 4q + 2(n-1) - s(n-s)
  double min_radial = 0.0;
  bool stable = false;  // min_radial > 0; a marginal zero counts as unstable
};

struct CalogeroMatrices {
  MatXc l;  // (1-delta_jk)(1 + i cot(pi (j-k)/n)), Hermitian
  MatX b;   // (1-delta_jk) / sin^2(pi (j-k)/n), symmetric
};

// squared equilibrium ring radius q + (n-1)/2; zero only for (n,q) = (1,0)
double equilibrium_radius(std::size_t n, double q);

// throws NotAtEquilibrium unless |r^2 - equilibrium_radius(n,q)| < 1e-12
RingSpectrum ring_spectrum(const RingAnsatz& a);

// largest ring population stable against radial fluctuations around a
// central charge q: largest integer strictly below 4(sqrt(q+1/2)+1)
int nmax_interior(double q);

// capacity of the outermost ring of an m-particle cluster: largest integer
// strictly below 4(sqrt(m+1/2)-1), clamped to 1 so a lone remainder sits
// at the center
int nmax_total(std::size_t m);

MatXc matrix_L(std::size_t n);
MatX matrix_B(std::size_t n);

// the exact ring configuration at the equilibrium radius for (n, q)
Configuration equilibrium_ring(std::size_t n, double q);

// eigenvalue counts by sign, with |v| <= zero_tol counting as zero
struct SignPattern {
  int negative = 0;
  int zero = 0;
  int positive = 0;

  bool operator==(const SignPattern&) const = default;
};

SignPattern classify_values(const std::vector<double>& vals,
                            double zero_tol = kZeroModeTol);
SignPattern classify_eigenvalues(const VecX& eigs,
                                 double zero_tol = kZeroModeTol);
// combined angular+radial pattern of the analytic spectra
SignPattern spectrum_sign_pattern(const RingSpectrum& sp,
                                  double zero_tol = 1e-12);

// direct evaluation of sum_{k=1}^{n-1} exp(2 pi i k s / n) / (1 - exp(2 pi i k / n)),
// which collapses to s - (n+1)/2 for s = 1..n; the phase sign is forced by
// 1 + i cot(pi k / n) = 2 / (1 - exp(2 pi i k / n)) and the L spectrum
Complex trig_sum_linear(std::size_t n, std::size_t s);

// direct evaluation of sum_{k=1}^{n-1} cos(2 k s pi / n) / sin^2(k pi / n),
// which collapses to (n^2-1)/3 - 2 s (n-s) for s = 0..n
double trig_sum_quadratic(std::size_t n, std::size_t s);

}  // namespace coulomb
