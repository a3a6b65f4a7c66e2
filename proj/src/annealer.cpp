#include "coulomb/annealer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "coulomb/energy.hpp"

namespace coulomb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// straight-order evaluation, cheap bookkeeping for the chain; the canonical
// sorted-sum energy() is only needed for reported values
double plain_energy(const std::vector<Vec2>& z, const ModelParams& p,
                    bool include_pair) {
  double e = 0.0;
  for (const auto& zi : z) e += zi.squaredNorm();
  if (include_pair) {
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = i + 1; j < z.size(); ++j) {
        double r2 = (z[i] - z[j]).squaredNorm();
        if (r2 == 0.0) return kInf;
        e -= std::log(r2);
      }
  }
  if (p.q > 0.0) {
    for (const auto& zi : z) {
      double r2 = zi.squaredNorm();
      if (r2 == 0.0) return kInf;
      e -= p.q * std::log(r2);
    }
  }
  return e;
}

// energy change from moving particle i to zn; +inf on singular proposals
double move_delta(const std::vector<Vec2>& z, std::size_t i, const Vec2& zn,
                  const ModelParams& p, bool include_pair) {
  double d = zn.squaredNorm() - z[i].squaredNorm();
  if (p.q > 0.0) {
    double rn = zn.squaredNorm();
    if (rn == 0.0) return kInf;
    d -= p.q * (std::log(rn) - std::log(z[i].squaredNorm()));
  }
  if (include_pair) {
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == i) continue;
      double rn = (zn - z[j]).squaredNorm();
      if (rn == 0.0) return kInf;
      d -= std::log(rn) - std::log((z[i] - z[j]).squaredNorm());
    }
  }
  return d;
}

struct PolishOutcome {
  Configuration config;
  double grad_norm = kInf;
  bool converged = false;
};

PolishOutcome polish_detail(const Configuration& c, const ModelParams& p,
                            std::vector<double>* trace) {
  Configuration x = c;
  const std::size_t n = x.size();
  if (n == 0) throw TooFewParticles(0, 1);
  double e = energy(x, p).total;
  if (trace) {
    trace->clear();
    trace->push_back(e);
  }

  auto shifted = [&](const VecX& d, double t) {
    Configuration y = x;
    for (std::size_t i = 0; i < n; ++i) {
      y.positions[i].x() += t * d[2 * i];
      y.positions[i].y() += t * d[2 * i + 1];
    }
    return y;
  };
  auto probe = [&](const Configuration& y, double& out) {
    try {
      out = energy(y, p).total;
      return std::isfinite(out);
    } catch (const Error&) {
      return false;
    }
  };

  constexpr double kArmijo = 1e-4;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double t_warm = 0.1;
  // accepts the first t along d passing a measurable Armijo decrease, or,
  // once the predicted decrease drops below the resolution of a double at
  // this energy scale, any t that halves the gradient norm without lifting
  // the energy above that resolution; e keeps the low-water mark so the
  // recorded trace never increases
  auto line_search = [&](const VecX& d, double slope, double t0, double gn,
                         double* t_used) {
    const double noise = 16.0 * kEps * (1.0 + std::abs(e));
    double t = t0;
    for (int bt = 0; bt < 40; ++bt, t *= 0.5) {
      Configuration y = shifted(d, t);
      bool moved = false;
      for (std::size_t i = 0; i < n && !moved; ++i)
        moved = y.positions[i].x() != x.positions[i].x() ||
                y.positions[i].y() != x.positions[i].y();
      if (!moved) return false;  // step underflowed the coordinates
      double ey;
      if (!probe(y, ey)) continue;
      double level = e + kArmijo * t * slope;
      if (level < e && ey <= level) {
        x = std::move(y);
        e = ey;
        if (t_used) *t_used = t;
        return true;
      }
      if (ey <= e + noise && gradient(y, p).norm() <= 0.5 * gn) {
        x = std::move(y);
        e = std::min(e, ey);
        if (t_used) *t_used = t;
        return true;
      }
    }
    return false;
  };

  PolishOutcome out;
  double mu = 1e-9;  // Levenberg damping, carried across iterations
  double best_gn = kInf;
  double best_e = e;
  int last_gain = 0;
  for (int iter = 0; iter < kPolishMaxIters; ++iter) {
    VecX g = gradient(x, p);
    double gn = g.norm();
    if (gn < kPolishTol) {
      out.config = std::move(x);
      out.grad_norm = gn;
      out.converged = true;
      return out;
    }
    if (gn < 0.7 * best_gn ||
        e < best_e - 16.0 * kEps * (1.0 + std::abs(best_e)))
      last_gain = iter;
    best_gn = std::min(best_gn, gn);
    best_e = std::min(best_e, e);
    if (iter - last_gain > 30) break;  // wedged against evaluation noise

    // damped Newton clears the soft inter-ring modes that plain steepest
    // descent crawls along; growing mu bends the direction back toward -g
    // until a step is accepted
    bool stepped = false;
    MatX h = hessian_matrix(x, p);
    double mu_try = std::max(mu / 4.0, 1e-9);
    for (int bump = 0; bump < 10 && !stepped; ++bump, mu_try *= 16.0) {
      MatX hd = h;
      hd.diagonal().array() += mu_try;
      Eigen::LDLT<MatX> ldlt(hd);
      if (ldlt.info() != Eigen::Success) continue;
      VecX d = ldlt.solve(-g);
      double slope = g.dot(d);
      if (!d.allFinite() || slope >= 0.0) continue;
      if (line_search(d, slope, 1.0, gn, nullptr)) {
        stepped = true;
        mu = mu_try;
      }
    }
    if (!stepped)
      stepped = line_search(-g, -gn * gn, std::min(2.0 * t_warm, 10.0), gn,
                            &t_warm);
    if (!stepped) {
      // a stationary point with negative curvature pulls Newton in but has
      // no descent direction the searches above can certify; step along the
      // lowest Hessian mode, where the energy drops quadratically in t
      Eigen::SelfAdjointEigenSolver<MatX> es(h);
      if (es.info() == Eigen::Success &&
          es.eigenvalues()(0) < -kZeroModeTol) {
        VecX v = es.eigenvectors().col(0);
        if (g.dot(v) > 0.0) v = -v;
        for (double t = 1.0; t >= 0.005 && !stepped; t *= 0.5) {
          Configuration y = shifted(v, t);
          double ey;
          if (probe(y, ey) && ey < e) {
            x = std::move(y);
            e = ey;
            stepped = true;
          }
        }
      }
    }
    if (!stepped) break;  // no usable descent direction
    if (trace) trace->push_back(e);
  }

  out.config = std::move(x);
  out.grad_norm = gradient(out.config, p).norm();
  out.converged = out.grad_norm < kPolishTol;
  return out;
}

}  // namespace

Configuration polish(const Configuration& c, const ModelParams& p,
                     std::vector<double>* trace) {
  PolishOutcome out = polish_detail(c, p, trace);
  if (!out.converged)
    throw NonConvergence("polish stalled at gradient norm " +
                         std::to_string(out.grad_norm));
  return std::move(out.config);
}

int metropolis_sweep(std::vector<Vec2>& z, const ModelParams& p, double temp,
                     double sigma, int moves, SplitMix64& rng,
                     bool include_pair) {
  const std::size_t n = z.size();
  if (n == 0) throw TooFewParticles(0, 1);
  if (temp <= 0.0 || sigma <= 0.0) throw Error("temperature and step must be positive");
  int accepted = 0;
  for (int mv = 0; mv < moves; ++mv) {
    std::size_t i = static_cast<std::size_t>(rng.next() % n);
    Vec2 zn = z[i] + Vec2(sigma * rng.gaussian(), sigma * rng.gaussian());
    double d = move_delta(z, i, zn, p, include_pair);
    bool acc = d <= 0.0;
    if (!acc && std::isfinite(d)) acc = rng.uniform() < std::exp(-d / temp);
    if (acc) {
      z[i] = zn;
      ++accepted;
    }
  }
  return accepted;
}

namespace {

struct Slot {
  Configuration config;
  RestartOutcome info;
};

Slot run_restart(const AnnealParams& prm, const ModelParams& mp, int moves,
                 int r) {
  SplitMix64 rng(prm.seed ^ static_cast<std::uint64_t>(r));
  const std::size_t m = static_cast<std::size_t>(prm.m);
  const double disc = std::sqrt(static_cast<double>(prm.m));

  std::vector<Vec2> z(m);
  do {
    for (auto& zi : z) {
      double rr = disc * std::sqrt(rng.uniform());
      double th = 2.0 * std::numbers::pi * rng.uniform();
      zi = Vec2(rr * std::cos(th), rr * std::sin(th));
    }
  } while (!std::isfinite(plain_energy(z, mp, true)));

  double t = prm.t0;
  double best_e = plain_energy(z, mp, true);
  std::vector<Vec2> best = z;
  for (int s = 0; s < prm.sweeps; ++s) {
    double sigma = prm.step_scale * std::sqrt(t / prm.t0);
    metropolis_sweep(z, mp, t, sigma, moves, rng, true);
    double cur = plain_energy(z, mp, true);
    if (cur < best_e) {
      best_e = cur;
      best = z;
    }
    t *= prm.alpha;
  }

  Slot slot;
  PolishOutcome po = polish_detail(Configuration{std::move(best)}, mp, nullptr);
  slot.config = std::move(po.config);
  slot.info.index = r;
  slot.info.seed = prm.seed ^ static_cast<std::uint64_t>(r);
  slot.info.energy = energy(slot.config, mp).total;
  slot.info.grad_norm = po.grad_norm;
  slot.info.polish_converged = po.converged;
  return slot;
}

}  // namespace

int thread_budget(int restarts) {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("COULOMB_RINGS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) cap = static_cast<int>(v);
  }
  return std::max(1, std::min(cap, restarts));
}

AnnealResult anneal(const AnnealParams& prm) {
  if (prm.m < 1) throw TooFewParticles(0, 1);
  if (prm.q < 0.0) throw Error("interior charge must be non-negative");
  if (!(prm.t0 > 0.0)) throw Error("t0 must be positive");
  if (!(prm.alpha > 0.0 && prm.alpha < 1.0))
    throw Error("alpha must lie in (0, 1)");
  if (prm.sweeps < 1 || prm.restarts < 1 || prm.moves_per_sweep < 0)
    throw Error("counts must be positive");
  if (!(prm.step_scale > 0.0)) throw Error("step_scale must be positive");

  ModelParams mp;
  mp.q = prm.q;
  const int moves = prm.moves_per_sweep > 0 ? prm.moves_per_sweep : prm.m;

  std::vector<Slot> slots(static_cast<std::size_t>(prm.restarts));
  const int threads = thread_budget(prm.restarts);
  if (threads <= 1) {
    for (int r = 0; r < prm.restarts; ++r)
      slots[static_cast<std::size_t>(r)] = run_restart(prm, mp, moves, r);
  } else {
    std::vector<std::exception_ptr> errors(slots.size());
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int r = next.fetch_add(1); r < prm.restarts;
           r = next.fetch_add(1)) {
        auto idx = static_cast<std::size_t>(r);
        try {
          slots[idx] = run_restart(prm, mp, moves, r);
        } catch (...) {
          errors[idx] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  std::size_t bi = 0;
  for (std::size_t r = 1; r < slots.size(); ++r)
    if (slots[r].info.energy < slots[bi].info.energy) bi = r;

  AnnealResult res;
  res.best = slots[bi].config;
  res.best_energy = slots[bi].info.energy;
  res.grad_norm_after_polish = slots[bi].info.grad_norm;
  res.signature = detect_rings(res.best, prm.gap_frac, prm.center_eps);
  if (prm.m >= 10) res.density_bulk = bulk_density(res.best);
  res.restarts.reserve(slots.size());
  for (auto& s : slots) res.restarts.push_back(s.info);
  return res;
}

RingSignature detect_rings(const Configuration& c, double gap_frac,
                           double center_eps) {
  const auto& z = c.positions;
  const std::size_t n = z.size();
  if (n == 0) throw TooFewParticles(0, 1);

  std::vector<double> rad(n);
  for (std::size_t i = 0; i < n; ++i) rad[i] = z[i].norm();

  RingSignature sig;
  sig.assignment.assign(n, 0);
  if (n == 1) {
    sig.occupations = {1};
    sig.ring_radii = {rad[0]};
    return sig;
  }

  std::vector<double> nn(n, kInf);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = (z[i] - z[j]).norm();
      nn[i] = std::min(nn[i], d);
      nn[j] = std::min(nn[j], d);
    }
  std::vector<double> spacing = nn;
  std::sort(spacing.begin(), spacing.end());
  const double med = spacing[(n - 1) / 2];

  const double center_r = center_eps * std::sqrt(static_cast<double>(n));
  std::vector<std::size_t> order;
  std::vector<std::size_t> center;
  for (std::size_t i = 0; i < n; ++i)
    (rad[i] < center_r ? center : order).push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rad[a] != rad[b]) return rad[a] > rad[b];
    return a < b;
  });

  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t idx : order) {
    if (groups.empty() ||
        rad[groups.back().back()] - rad[idx] > gap_frac * med)
      groups.emplace_back();
    groups.back().push_back(idx);
  }
  if (!center.empty()) groups.emplace_back(std::move(center));

  for (std::size_t g = 0; g < groups.size(); ++g) {
    double mean = 0.0;
    for (std::size_t idx : groups[g]) {
      sig.assignment[idx] = static_cast<int>(g);
      mean += rad[idx];
    }
    sig.occupations.push_back(static_cast<int>(groups[g].size()));
    sig.ring_radii.push_back(mean / static_cast<double>(groups[g].size()));
  }
  return sig;
}

double bulk_density(const Configuration& c) {
  const std::size_t n = c.size();
  if (n < 10) throw TooFewParticles(n, 10);
  double rmax = 0.0;
  for (const auto& zi : c.positions) rmax = std::max(rmax, zi.norm());
  const double r = 0.7 * rmax;
  std::size_t count = 0;
  for (const auto& zi : c.positions)
    if (zi.norm() <= r) ++count;
  return static_cast<double>(count) /
         (std::numbers::pi * r * r);
}

}  // namespace coulomb
