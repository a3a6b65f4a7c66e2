#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coulomb {

using Vec2 = Eigen::Vector2d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using MatXc = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// gradient 2-norm below which a configuration counts as stationary
inline constexpr double kGradTol = 1e-10;
// allowed entrywise mismatch between analytic and finite-difference Hessians
inline constexpr double kHessFdTol = 1e-5;
// eigenvalues with magnitude below this count as zero modes
inline constexpr double kZeroModeTol = 1e-8;

enum class InteriorModel { PointAtOrigin };

struct ModelParams {
  double q = 0.0;  // enclosed central charge, 0 disables the interior term
  InteriorModel interior_model = InteriorModel::PointAtOrigin;
};

// N point charges in the plane, Cartesian pairs
struct Configuration {
  std::vector<Vec2> positions;

  std::size_t size() const { return positions.size(); }
};

struct EnergyReport {
  double total = 0.0;
  double confinement = 0.0;  // sum |z_i|^2
  double pair = 0.0;         // -sum_{i<j} ln|z_i - z_j|^2
  double interior = 0.0;     // -q sum_i ln|z_i|^2
};

// coordinate order x0, y0, x1, y1, ...
struct HessianMatrix {
  MatX m;
  VecX eigenvalues;  // ascending
  MatX eigenvectors;  // columns, same order as eigenvalues
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class CoincidentParticles : public Error {
 public:
  CoincidentParticles(std::size_t i, std::size_t j)
      : Error("particles " + std::to_string(i) + " and " + std::to_string(j) +
              " coincide") {}
};

class OriginSingularity : public Error {
 public:
  explicit OriginSingularity(std::size_t i)
      : Error("particle " + std::to_string(i) +
              " sits at the origin while a central charge is present") {}
};

class NonPositiveRadius : public Error {
 public:
  explicit NonPositiveRadius(double r)
      : Error("ring radius must be positive, got " + std::to_string(r)) {}
};

class NotAtEquilibrium : public Error {
 public:
  explicit NotAtEquilibrium(const std::string& what) : Error(what) {}
};

class SOutOfRange : public Error {
 public:
  SOutOfRange(std::size_t s, std::size_t lo, std::size_t hi)
      : Error("mode index " + std::to_string(s) + " outside " +
              std::to_string(lo) + ".." + std::to_string(hi)) {}
};

class TooFewParticles : public Error {
 public:
  TooFewParticles(std::size_t n, std::size_t need)
      : Error("need at least " + std::to_string(need) + " particles, got " +
              std::to_string(n)) {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what) : Error(what) {}
};

class BadInputFile : public Error {
 public:
  explicit BadInputFile(const std::string& what) : Error(what) {}
};

class UnknownM : public Error {
 public:
  explicit UnknownM(int m)
      : Error("no reference table row for M = " + std::to_string(m)) {}
};

}  // namespace coulomb
