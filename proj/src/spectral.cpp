#include "coulomb/spectral.hpp"

#include <cmath>
#include <numbers>

#include "coulomb/energy.hpp"

namespace coulomb {

namespace {

// largest integer strictly less than x; integer x maps to x - 1
int strict_floor(double x) {
  double f = std::floor(x);
  if (f == x) f -= 1.0;
  return static_cast<int>(f);
}

}  // namespace

double equilibrium_radius(std::size_t n, double q) {
  if (n == 0) throw TooFewParticles(0, 1);
  if (q < 0.0) throw Error("interior charge must be non-negative");
  return q + (static_cast<double>(n) - 1.0) / 2.0;
}

RingSpectrum ring_spectrum(const RingAnsatz& a) {
  if (a.n < 2) throw TooFewParticles(a.n, 2);
  if (a.r <= 0.0) throw NonPositiveRadius(a.r);
  double r2 = equilibrium_radius(a.n, a.q);
  if (std::abs(a.r * a.r - r2) >= 1e-12)
    throw NotAtEquilibrium("ring radius^2 " + std::to_string(a.r * a.r) +
                           " differs from equilibrium value " +
                           std::to_string(r2));

  const double n = static_cast<double>(a.n);
  RingSpectrum sp;
  sp.angular.resize(a.n);
  sp.radial.resize(a.n);
  for (std::size_t s = 0; s < a.n; ++s) {
    double sn = static_cast<double>(s) * (n - static_cast<double>(s));
    sp.angular[s] = sn;
    sp.radial[s] = 4.0 * a.q + 2.0 * (n - 1.0) - sn;
  }
  sp.min_radial = sp.radial[a.n / 2];
  sp.stable = sp.min_radial > 0.0;
  return sp;
}

Configuration equilibrium_ring(std::size_t n, double q) {
  return Configuration{ring_positions(n, std::sqrt(equilibrium_radius(n, q)))};
}

SignPattern classify_values(const std::vector<double>& vals,
                            double zero_tol) {
  SignPattern sp;
  for (double v : vals) {
    if (std::abs(v) <= zero_tol)
      ++sp.zero;
    else if (v < 0.0)
      ++sp.negative;
    else
      ++sp.positive;
  }
  return sp;
}

SignPattern classify_eigenvalues(const VecX& eigs, double zero_tol) {
  std::vector<double> v(eigs.data(), eigs.data() + eigs.size());
  return classify_values(v, zero_tol);
}

SignPattern spectrum_sign_pattern(const RingSpectrum& sp, double zero_tol) {
  std::vector<double> all = sp.angular;
  all.insert(all.end(), sp.radial.begin(), sp.radial.end());
  return classify_values(all, zero_tol);
}

int nmax_interior(double q) {
  if (q < 0.0) throw Error("interior charge must be non-negative");
  return strict_floor(4.0 * (std::sqrt(q + 0.5) + 1.0));
}

int nmax_total(std::size_t m) {
  if (m == 0) throw TooFewParticles(0, 1);
  int n = strict_floor(4.0 * (std::sqrt(static_cast<double>(m) + 0.5) - 1.0));
  return n < 1 ? 1 : n;
}

MatXc matrix_L(std::size_t n) {
  if (n < 2) throw TooFewParticles(n, 2);
  MatXc l = MatXc::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      double a = std::numbers::pi *
                 (static_cast<double>(j) - static_cast<double>(k)) /
                 static_cast<double>(n);
      l(j, k) = Complex(1.0, std::cos(a) / std::sin(a));
    }
  }
  return l;
}

MatX matrix_B(std::size_t n) {
  if (n < 2) throw TooFewParticles(n, 2);
  MatX b = MatX::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      double s = std::sin(std::numbers::pi *
                          (static_cast<double>(j) - static_cast<double>(k)) /
                          static_cast<double>(n));
      b(j, k) = 1.0 / (s * s);
    }
  }
  return b;
}

Complex trig_sum_linear(std::size_t n, std::size_t s) {
  if (n < 2) throw TooFewParticles(n, 2);
  if (s < 1 || s > n) throw SOutOfRange(s, 1, n);
  Complex sum = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    double a = 2.0 * std::numbers::pi * static_cast<double>(k) /
               static_cast<double>(n);
    Complex num = std::exp(Complex(0.0, a * static_cast<double>(s)));
    Complex den = 1.0 - std::exp(Complex(0.0, a));
    sum += num / den;
  }
  return sum;
}

double trig_sum_quadratic(std::size_t n, std::size_t s) {
  if (n < 2) throw TooFewParticles(n, 2);
  if (s > n) throw SOutOfRange(s, 0, n);
  double sum = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    double a = std::numbers::pi * static_cast<double>(k) /
               static_cast<double>(n);
    double sn = std::sin(a);
    sum += std::cos(2.0 * a * static_cast<double>(s)) / (sn * sn);
  }
  return sum;
}

}  // namespace coulomb
