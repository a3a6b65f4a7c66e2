#include "coulomb/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coulomb {

namespace {

double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

void check_params(const ModelParams& p) {
  if (p.q < 0.0) throw Error("interior charge must be non-negative");
}

}  // namespace

std::vector<Vec2> ring_positions(std::size_t n, double r) {
  if (n == 0) throw TooFewParticles(0, 1);
  if (r < 0.0) throw NonPositiveRadius(r);
  std::vector<Vec2> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    double a = 2.0 * std::numbers::pi * static_cast<double>(k) /
               static_cast<double>(n);
    z[k] = Vec2(r * std::cos(a), r * std::sin(a));
  }
  return z;
}

EnergyReport energy(const Configuration& c, const ModelParams& p) {
  check_params(p);
  const auto& z = c.positions;
  const std::size_t n = z.size();
  if (n == 0) throw TooFewParticles(0, 1);

  std::vector<double> conf(n);
  for (std::size_t i = 0; i < n; ++i) conf[i] = z[i].squaredNorm();

  std::vector<double> logs;
  logs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double r2 = (z[i] - z[j]).squaredNorm();
      if (r2 == 0.0) throw CoincidentParticles(i, j);
      logs.push_back(std::log(r2));
    }
  }

  EnergyReport rep;
  rep.confinement = sorted_sum(conf);
  rep.pair = -sorted_sum(logs);

  if (p.q > 0.0) {
    std::vector<double> ints(n);
    for (std::size_t i = 0; i < n; ++i) {
      double r2 = z[i].squaredNorm();
      if (r2 == 0.0) throw OriginSingularity(i);
      ints[i] = std::log(r2);
    }
    rep.interior = -p.q * sorted_sum(ints);
  }

  rep.total = rep.confinement + rep.pair + rep.interior;
  return rep;
}

VecX gradient(const Configuration& c, const ModelParams& p) {
  check_params(p);
  const auto& z = c.positions;
  const std::size_t n = z.size();
  if (n == 0) throw TooFewParticles(0, 1);

  VecX g = VecX::Zero(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 gi = 2.0 * z[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Vec2 d = z[i] - z[j];
      double r2 = d.squaredNorm();
      if (r2 == 0.0) throw CoincidentParticles(std::min(i, j), std::max(i, j));
      gi -= (2.0 / r2) * d;
    }
    if (p.q > 0.0) {
      double r2 = z[i].squaredNorm();
      if (r2 == 0.0) throw OriginSingularity(i);
      gi -= (2.0 * p.q / r2) * z[i];
    }
    g[2 * i] = gi.x();
    g[2 * i + 1] = gi.y();
  }
  return g;
}

namespace {

// d2/dx2, d2/dxdy, d2/dy2 of -ln|d|^2 as a function of d
Eigen::Matrix2d log_block(const Vec2& d) {
  double r2 = d.squaredNorm();
  double r4 = r2 * r2;
  Eigen::Matrix2d b;
  b(0, 0) = 2.0 * (d.x() * d.x() - d.y() * d.y()) / r4;
  b(1, 1) = -b(0, 0);
  b(0, 1) = b(1, 0) = 4.0 * d.x() * d.y() / r4;
  return b;
}

HessianMatrix with_eigen(MatX h) {
  HessianMatrix out;
  out.m = std::move(h);
  Eigen::SelfAdjointEigenSolver<MatX> es(out.m);
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  return out;
}

}  // namespace

MatX hessian_matrix(const Configuration& c, const ModelParams& p) {
  check_params(p);
  const auto& z = c.positions;
  const std::size_t n = z.size();
  if (n == 0) throw TooFewParticles(0, 1);

  MatX h = MatX::Zero(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    h(2 * i, 2 * i) += 2.0;
    h(2 * i + 1, 2 * i + 1) += 2.0;

    for (std::size_t j = i + 1; j < n; ++j) {
      Vec2 d = z[i] - z[j];
      if (d.squaredNorm() == 0.0) throw CoincidentParticles(i, j);
      Eigen::Matrix2d b = log_block(d);
      h.block<2, 2>(2 * i, 2 * i) += b;
      h.block<2, 2>(2 * j, 2 * j) += b;
      h.block<2, 2>(2 * i, 2 * j) -= b;
      h.block<2, 2>(2 * j, 2 * i) -= b;
    }

    if (p.q > 0.0) {
      if (z[i].squaredNorm() == 0.0) throw OriginSingularity(i);
      h.block<2, 2>(2 * i, 2 * i) += p.q * log_block(z[i]);
    }
  }
  return h;
}

HessianMatrix hessian_analytic(const Configuration& c, const ModelParams& p) {
  return with_eigen(hessian_matrix(c, p));
}

HessianMatrix hessian_fd(const Configuration& c, const ModelParams& p,
                         double step) {
  if (!(step >= 1e-7 && step <= 1e-3))
    throw Error("finite-difference step outside [1e-7, 1e-3]");
  const std::size_t n = c.size();
  const std::size_t dim = 2 * n;

  Configuration w = c;
  auto coord = [&w](std::size_t k) -> double& {
    return k % 2 == 0 ? w.positions[k / 2].x() : w.positions[k / 2].y();
  };
  auto eval = [&]() { return energy(w, p).total; };

  const double e0 = eval();
  MatX h = MatX::Zero(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    double xa = coord(a);
    coord(a) = xa + step;
    double ep = eval();
    coord(a) = xa - step;
    double em = eval();
    coord(a) = xa;
    h(a, a) = (ep - 2.0 * e0 + em) / (step * step);

    for (std::size_t b = a + 1; b < dim; ++b) {
      double xb = coord(b);
      coord(a) = xa + step;
      coord(b) = xb + step;
      double epp = eval();
      coord(b) = xb - step;
      double epm = eval();
      coord(a) = xa - step;
      double emm = eval();
      coord(b) = xb + step;
      double emp = eval();
      coord(a) = xa;
      coord(b) = xb;
      h(a, b) = h(b, a) = (epp - epm - emp + emm) / (4.0 * step * step);
    }
  }
  return with_eigen(std::move(h));
}

double ring_closed_form(std::size_t n, double r, double q) {
  if (n == 0) throw TooFewParticles(0, 1);
  if (r <= 0.0) throw NonPositiveRadius(r);
  if (q < 0.0) throw Error("interior charge must be non-negative");
  double nn = static_cast<double>(n);
  double logr = std::log(r);
  return nn * r * r - nn * (nn - 1.0) * logr - nn * std::log(nn) -
         2.0 * q * nn * logr;
}

}  // namespace coulomb
