// acceptance gate: one line per criterion, exit 0 only if all ten hold
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "coulomb/annealer.hpp"
#include "coulomb/energy.hpp"
#include "coulomb/golden.hpp"
#include "coulomb/shell_model.hpp"
#include "coulomb/spectral.hpp"

using namespace coulomb;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string cli_path;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// criterion 1: ring ansatz is a stationary point across the (n, q) grid
Outcome ring_extremum() {
  Outcome out;
  for (double q : {0.0, 1.0, 5.0, 20.5}) {
    ModelParams p;
    p.q = q;
    for (std::size_t n = 2; n <= 100; ++n) {
      const double gn = gradient(equilibrium_ring(n, q), p).norm();
      if (!(gn < 1e-10)) {
        out.fail("gradient norm " + std::to_string(gn) + " at n=" +
                 std::to_string(n) + " q=" + std::to_string(q));
        return out;
      }
    }
  }
  return out;
}

// criterion 2: both trigonometric sum identities to 1e-9 for n <= 64
Outcome sum_rules() {
  Outcome out;
  for (std::size_t n = 2; n <= 64; ++n) {
    for (std::size_t s = 1; s <= n; ++s) {
      const Complex got = trig_sum_linear(n, s);
      const double want = double(s) - (double(n) + 1.0) / 2.0;
      if (std::abs(got.real() - want) > 1e-9 || std::abs(got.imag()) > 1e-9) {
        out.fail("linear sum off at n=" + std::to_string(n) +
                 " s=" + std::to_string(s));
        return out;
      }
    }
    for (std::size_t s = 0; s <= n; ++s) {
      const double want =
          (double(n) * n - 1.0) / 3.0 - 2.0 * double(s) * double(n - s);
      if (std::abs(trig_sum_quadratic(n, s) - want) > 1e-9) {
        out.fail("quadratic sum off at n=" + std::to_string(n) +
                 " s=" + std::to_string(s));
        return out;
      }
    }
  }
  return out;
}

// criterion 3: dense eigensolves match the closed spectra, the entrywise
// matrix identity holds, and trace(B) vanishes, for n <= 64
Outcome matrix_spectra() {
  Outcome out;
  for (std::size_t n = 2; n <= 64; ++n) {
    const double nn = double(n);
    const MatXc l = matrix_L(n);
    const MatX b = matrix_B(n);

    if (std::abs(b.trace()) > 1e-8) {
      out.fail("trace(B) nonzero at n=" + std::to_string(n));
      return out;
    }

    std::vector<double> want_l, want_b;
    for (std::size_t s = 1; s <= n; ++s) {
      want_l.push_back(2.0 * double(s) - nn - 1.0);
      want_b.push_back((nn * nn - 1.0) / 3.0 - 2.0 * double(s) * (nn - s));
    }
    std::sort(want_l.begin(), want_l.end());
    std::sort(want_b.begin(), want_b.end());

    Eigen::SelfAdjointEigenSolver<MatXc> esl(l);
    Eigen::SelfAdjointEigenSolver<MatX> esb(b);
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      if (std::abs(esl.eigenvalues()(k) - want_l[i]) > 1e-8) {
        out.fail("L eigenvalue off at n=" + std::to_string(n));
        return out;
      }
      if (std::abs(esb.eigenvalues()(k) - want_b[i]) > 1e-8) {
        out.fail("B eigenvalue off at n=" + std::to_string(n));
        return out;
      }
    }

    const MatXc rhs =
        0.5 * (l * l + 2.0 * l -
               (nn * nn - 1.0) / 3.0 *
                   MatXc::Identity(static_cast<Eigen::Index>(n),
                                   static_cast<Eigen::Index>(n)));
    if ((rhs - b.cast<Complex>()).cwiseAbs().maxCoeff() > 1e-8) {
      out.fail("matrix identity violated at n=" + std::to_string(n));
      return out;
    }
  }
  return out;
}

// criterion 4: hessian classification flips from stable at the capacity to
// unstable two past it, with exactly one rotational zero mode when stable
Outcome stability_threshold() {
  Outcome out;
  for (double q : {0.0, 1.0, 2.0, 5.0, 10.0}) {
    const int nmax = nmax_interior(q);
    ModelParams p;
    p.q = q;

    HessianMatrix at = hessian_analytic(equilibrium_ring(nmax, q), p);
    int zeros = 0, negs = 0;
    for (Eigen::Index k = 0; k < at.eigenvalues.size(); ++k) {
      if (std::abs(at.eigenvalues(k)) < 1e-8)
        ++zeros;
      else if (at.eigenvalues(k) < 0.0)
        ++negs;
    }
    if (negs != 0 || zeros != 1) {
      out.fail("ring of " + std::to_string(nmax) + " at q=" +
               std::to_string(q) + " not cleanly stable (" +
               std::to_string(negs) + " negative, " + std::to_string(zeros) +
               " zero)");
      return out;
    }

    HessianMatrix past =
        hessian_analytic(equilibrium_ring(nmax + 2, q), p);
    bool unstable = false;
    for (Eigen::Index k = 0; k < past.eigenvalues.size(); ++k)
      unstable = unstable || past.eigenvalues(k) < -1e-8;
    if (!unstable) {
      out.fail("ring of " + std::to_string(nmax + 2) + " at q=" +
               std::to_string(q) + " failed to go unstable");
      return out;
    }
  }
  return out;
}

// criterion 5: the softest mode of the eight-ring moves alternate particles
// radially in and out
Outcome alternating_mode() {
  Outcome out;
  const Configuration c = equilibrium_ring(8, 0.0);
  const HessianMatrix h = hessian_analytic(c, ModelParams{});
  if (!(h.eigenvalues(0) < 0.0 &&
        h.eigenvalues(1) - h.eigenvalues(0) > 1e-6)) {
    out.fail("most negative eigenvalue is not isolated");
    return out;
  }
  const VecX v = h.eigenvectors.col(0);
  double prev = 0.0;
  for (int k = 0; k < 8; ++k) {
    const Vec2 z = c.positions[std::size_t(k)];
    const double rad =
        (v(2 * k) * z.x() + v(2 * k + 1) * z.y()) / z.norm();
    if (std::abs(rad) < 1e-6) {
      out.fail("radial component " + std::to_string(k) + " vanishes");
      return out;
    }
    if (k > 0 && !(rad * prev < 0.0)) {
      out.fail("radial sign fails to alternate at particle " +
               std::to_string(k));
      return out;
    }
    prev = rad;
  }
  return out;
}

// criterion 6: every model row of both embedded tables, exactly
Outcome shell_tables() {
  Outcome out;
  const auto& main_rows = golden_main();
  const auto& sweep_rows = golden_sweep();
  if (main_rows.size() != 12 || sweep_rows.size() != 21) {
    out.fail("expected 12 + 21 reference rows, found " +
             std::to_string(main_rows.size()) + " + " +
             std::to_string(sweep_rows.size()));
    return out;
  }
  for (const auto* rows : {&main_rows, &sweep_rows}) {
    for (const GoldenRow& row : *rows) {
      if (shell_fill(row.m).occupations != row.model) {
        out.fail("prediction differs from the table at M=" +
                 std::to_string(row.m));
        return out;
      }
    }
  }
  return out;
}

// criterion 7: hexagon and centered-pentagon closed forms match energy(),
// and default annealing lands on the lower [5,1] state
Outcome hexagon_pentagon() {
  Outcome out;
  const double hex_v = 15.0 - 15.0 * std::log(2.5) - 6.0 * std::log(6.0);
  const double pent_v = 15.0 - 15.0 * std::log(3.0) - 5.0 * std::log(5.0);

  Configuration hex{ring_positions(6, std::sqrt(2.5))};
  Configuration pent{ring_positions(5, std::sqrt(3.0))};
  pent.positions.emplace_back(0.0, 0.0);
  const double hex_e = energy(hex, ModelParams{}).total;
  const double pent_e = energy(pent, ModelParams{}).total;
  if (std::abs(hex_e - hex_v) > 1e-10)
    out.fail("hexagon closed form off by " +
             std::to_string(std::abs(hex_e - hex_v)));
  if (std::abs(pent_e - pent_v) > 1e-10)
    out.fail("pentagon closed form off by " +
             std::to_string(std::abs(pent_e - pent_v)));
  if (!(pent_v < hex_v)) out.fail("pentagon is not the lower state");
  if (!out.pass) return out;

  AnnealParams p;
  p.m = 6;
  AnnealResult r = anneal(p);
  if (r.signature.occupations != std::vector<int>{5, 1})
    out.fail("annealer found " +
             format_occupations(r.signature.occupations) + " instead of 5/1");
  if (std::abs(r.best_energy - pent_v) > 1e-6)
    out.fail("annealed energy off by " +
             std::to_string(std::abs(r.best_energy - pent_v)));
  return out;
}

// criterion 8: tiny clusters are exact single rings at the predicted radius
Outcome small_m_exact() {
  Outcome out;
  for (int m : {2, 3, 4, 5}) {
    AnnealParams p;
    p.m = m;
    AnnealResult r = anneal(p);
    if (r.signature.occupations != std::vector<int>{m}) {
      out.fail("M=" + std::to_string(m) + " detected " +
               format_occupations(r.signature.occupations));
      continue;
    }
    const double radius = std::sqrt(equilibrium_radius(std::size_t(m), 0.0));
    const double want = ring_closed_form(std::size_t(m), radius, 0.0);
    if (std::abs(r.best_energy - want) > 1e-8)
      out.fail("M=" + std::to_string(m) + " energy off by " +
               std::to_string(std::abs(r.best_energy - want)));
    if (std::abs(r.signature.ring_radii[0] - radius) > 1e-3)
      out.fail("M=" + std::to_string(m) + " ring radius " +
               std::to_string(r.signature.ring_radii[0]) + " != " +
               std::to_string(radius));
  }
  return out;
}

bool signature_close(const std::vector<int>& got, const std::vector<int>& ref,
                     std::string& why) {
  if (std::abs(int(got.size()) - int(ref.size())) > 1) {
    why = "ring count " + std::to_string(got.size()) + " vs " +
          std::to_string(ref.size());
    return false;
  }
  const std::size_t shared = std::min(got.size(), ref.size());
  for (std::size_t i = 0; i < shared; ++i)
    if (std::abs(got[i] - ref[i]) > 2) {
      why = "ring " + std::to_string(i) + ": " + std::to_string(got[i]) +
            " vs " + std::to_string(ref[i]);
      return false;
    }
  for (std::size_t i = shared; i < got.size(); ++i)
    if (got[i] > 2) {
      why = "unmatched ring of " + std::to_string(got[i]);
      return false;
    }
  for (std::size_t i = shared; i < ref.size(); ++i)
    if (ref[i] > 2) {
      why = "missing ring of " + std::to_string(ref[i]);
      return false;
    }
  return true;
}

// criterion 9: reproduce the reference simulations to their advertised
// accuracy, and the coarse M=100 observables
Outcome desk_scale() {
  Outcome out;
  for (int m : {10, 15, 25}) {
    AnnealParams p;
    p.m = m;
    AnnealResult r = anneal(p);
    std::string why;
    if (!signature_close(r.signature.occupations, golden_row(m).sim, why))
      out.fail("M=" + std::to_string(m) + ": " + why + " (got " +
               format_occupations(r.signature.occupations) + ")");
  }

  AnnealParams p;
  p.m = 100;
  p.sweeps = 4000;
  AnnealResult r = anneal(p);
  const auto& occ = r.signature.occupations;
  if (occ.empty() || std::abs(occ.front() - 31) > 3)
    out.fail("outer ring " +
             (occ.empty() ? std::string("missing")
                          : std::to_string(occ.front())) +
             " vs 31 +- 3 (got " + format_occupations(occ) + ")");
  if (!r.density_bulk) {
    out.fail("bulk density missing");
  } else {
    const double target = 1.0 / M_PI;
    if (std::abs(*r.density_bulk - target) > 0.15 * target)
      out.fail("bulk density " + std::to_string(*r.density_bulk) +
               " vs 1/pi +- 15%");
  }
  double rmax = 0.0;
  for (const auto& z : r.best.positions) rmax = std::max(rmax, z.norm());
  if (std::abs(rmax - 10.0) > 1.0)
    out.fail("outermost radius " + std::to_string(rmax) + " vs 10 +- 10%");
  return out;
}

// criterion 10: the CLI is bit-deterministic across repeated runs
Outcome cli_determinism() {
  Outcome out;
  if (cli_path.empty()) {
    out.fail("CLI path not supplied as argv[1]");
    return out;
  }
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string a = "/tmp/coulomb_acceptance_a.json";
  const std::string b = "/tmp/coulomb_acceptance_b.json";
  for (const std::string& path : {a, b}) {
    const std::string cmd = "\"" + cli_path +
                            "\" anneal --m 6 --seed 42 --json --quiet > " +
                            path + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) {
      out.fail("CLI run failed");
      return out;
    }
  }
  const std::string da = slurp(a), db = slurp(b);
  std::remove(a.c_str());
  std::remove(b.c_str());
  if (da.empty()) {
    out.fail("CLI produced no output");
    return out;
  }
  if (da != db) out.fail("repeated runs differ");
  return out;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
  double limit_s;  // 0 means no runtime requirement
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];

  const std::vector<Criterion> criteria{
      {"ring extremum grid", ring_extremum, 5.0},
      {"trigonometric sum rules", sum_rules, 5.0},
      {"structured matrix spectra", matrix_spectra, 30.0},
      {"stability threshold flip", stability_threshold, 60.0},
      {"alternating instability mode", alternating_mode, 0.0},
      {"shell model reference tables", shell_tables, 1.0},
      {"hexagon vs centered pentagon", hexagon_pentagon, 30.0},
      {"small clusters exact", small_m_exact, 0.0},
      {"reference experiment reproduction", desk_scale, 600.0},
      {"bit-identical reruns", cli_determinism, 0.0},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double el = seconds_since(t0);
    if (criteria[i].limit_s > 0.0 && el > criteria[i].limit_s)
      out.fail("took " + std::to_string(el) + " s, limit " +
               std::to_string(criteria[i].limit_s));
    all = all && out.pass;
    std::printf("[%s] criterion %zu: %s (%.2f s)%s%s\n",
                out.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, el,
                out.detail.empty() ? "" : " - ", out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all ? "acceptance: all criteria hold"
                          : "acceptance: FAILURES above");
  return all ? 0 : 1;
}
