#pragma once

#include "coulomb/types.hpp"

namespace coulomb {

// z_k = r * exp(2*pi*i*k/n), k = 0..n-1
std::vector<Vec2> ring_positions(std::size_t n, double r);

// V = sum |z_i|^2 - sum_{i<j} ln|z_i-z_j|^2 - q * sum_i ln|z_i|^2.
// Per-term sums are sorted before accumulation, so every component of the
// report is bit-identical under relabeling of particles.
EnergyReport energy(const Configuration& c, const ModelParams& p);

// length 2N, order x0, y0, x1, y1, ...
VecX gradient(const Configuration& c, const ModelParams& p);

HessianMatrix hessian_analytic(const Configuration& c, const ModelParams& p);

// the raw 2N x 2N matrix of hessian_analytic, skipping the eigensolve
MatX hessian_matrix(const Configuration& c, const ModelParams& p);

// symmetrized central differences of energy(); step must be in [1e-7, 1e-3]
HessianMatrix hessian_fd(const Configuration& c, const ModelParams& p,
                         double step = 1e-4);

// energy of the exact n-ring of radius r around a central charge q:
// n r^2 - n(n-1) ln r - n ln n - 2 q n ln r
double ring_closed_form(std::size_t n, double r, double q);

}  // namespace coulomb
