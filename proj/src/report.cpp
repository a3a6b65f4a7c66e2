#include "coulomb/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "coulomb/config_io.hpp"
#include "coulomb/energy.hpp"
#include "coulomb/golden.hpp"
#include "coulomb/spectral.hpp"

namespace coulomb {

namespace {

std::string int_list_json(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

std::string double_list_json(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt_double(v[i]);
  }
  return s + "]";
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<ComparisonRow> compare_rows(const std::vector<int>& ms,
                                        bool run_anneal,
                                        const AnnealParams& base) {
  std::vector<ComparisonRow> rows;
  rows.reserve(ms.size());
  for (int m : ms) {
    ComparisonRow row;
    row.m = m;
    row.predicted = shell_fill(m).occupations;
    if (auto g = golden_row_opt(m)) {
      row.ref_model = g->model;
      row.ref_sim = g->sim;
    }
    if (run_anneal) {
      AnnealParams p = base;
      p.m = m;
      row.observed = anneal(p).signature.occupations;
    }
    if (row.ref_sim) {
      const auto& actual = row.observed ? *row.observed : row.predicted;
      const auto& ref = *row.ref_sim;
      int worst = 0;
      std::size_t shared = std::min(actual.size(), ref.size());
      for (std::size_t i = 0; i < shared; ++i)
        worst = std::max(worst, std::abs(actual[i] - ref[i]));
      for (std::size_t i = shared; i < actual.size(); ++i)
        worst = std::max(worst, actual[i]);
      for (std::size_t i = shared; i < ref.size(); ++i)
        worst = std::max(worst, ref[i]);
      row.max_delta = worst;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string cell(const std::optional<std::vector<int>>& v) {
  return v ? format_occupations(*v) : std::string("-");
}

}  // namespace

std::string format_compare_text(const std::vector<ComparisonRow>& rows) {
  std::vector<std::array<std::string, 6>> cells;
  cells.push_back({"M", "predicted", "ref_model", "ref_sim", "observed",
                   "max_delta"});
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.m), format_occupations(r.predicted),
                     cell(r.ref_model), cell(r.ref_sim), cell(r.observed),
                     r.max_delta ? std::to_string(*r.max_delta)
                                 : std::string("-")});
  }
  std::array<std::size_t, 6> width{};
  for (const auto& row : cells)
    for (std::size_t i = 0; i < 6; ++i)
      width[i] = std::max(width[i], row[i].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < 6; ++i) {
      os << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      os << (i + 1 < 6 ? "  " : "");
    }
    os << "\n";
  }
  return os.str();
}

std::string format_compare_csv(const std::vector<ComparisonRow>& rows) {
  std::string s = "M,predicted,ref_model,ref_sim,observed,max_delta\n";
  for (const auto& r : rows) {
    s += std::to_string(r.m);
    s += ',';
    s += format_occupations(r.predicted);
    s += ',';
    s += r.ref_model ? format_occupations(*r.ref_model) : "";
    s += ',';
    s += r.ref_sim ? format_occupations(*r.ref_sim) : "";
    s += ',';
    s += r.observed ? format_occupations(*r.observed) : "";
    s += ',';
    s += r.max_delta ? std::to_string(*r.max_delta) : "";
    s += '\n';
  }
  return s;
}

std::string format_compare_json(const std::vector<ComparisonRow>& rows) {
  std::string s = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    s += "  {\"m\": " + std::to_string(r.m);
    s += ", \"predicted\": " + int_list_json(r.predicted);
    s += ", \"ref_model\": " +
         (r.ref_model ? int_list_json(*r.ref_model) : std::string("null"));
    s += ", \"ref_sim\": " +
         (r.ref_sim ? int_list_json(*r.ref_sim) : std::string("null"));
    s += ", \"observed\": " +
         (r.observed ? int_list_json(*r.observed) : std::string("null"));
    s += ", \"max_delta\": " +
         (r.max_delta ? std::to_string(*r.max_delta) : std::string("null"));
    s += i + 1 < rows.size() ? "},\n" : "}\n";
  }
  return s + "]\n";
}

std::string energy_text(const EnergyReport& rep) {
  std::ostringstream os;
  os << "total       " << fmt_double(rep.total) << "\n"
     << "confinement " << fmt_double(rep.confinement) << "\n"
     << "pair        " << fmt_double(rep.pair) << "\n"
     << "interior    " << fmt_double(rep.interior) << "\n";
  return os.str();
}

std::string energy_json(const EnergyReport& rep) {
  return "{\"total\": " + fmt_double(rep.total) +
         ", \"confinement\": " + fmt_double(rep.confinement) +
         ", \"pair\": " + fmt_double(rep.pair) +
         ", \"interior\": " + fmt_double(rep.interior) + "}\n";
}

std::string spectrum_json(std::size_t n, double q) {
  double r2 = equilibrium_radius(n, q);
  RingSpectrum sp = ring_spectrum(RingAnsatz{n, q, std::sqrt(r2)});
  std::string s = "{";
  s += "\"n\": " + std::to_string(n);
  s += ", \"q\": " + fmt_double(q);
  s += ", \"r2\": " + fmt_double(r2);
  s += ", \"angular\": " + double_list_json(sp.angular);
  s += ", \"radial\": " + double_list_json(sp.radial);
  s += std::string(", \"stable\": ") + (sp.stable ? "true" : "false");
  s += ", \"nmax\": " + std::to_string(nmax_interior(q));
  s += "}\n";
  return s;
}

std::string spectrum_text(std::size_t n, double q) {
  double r2 = equilibrium_radius(n, q);
  RingSpectrum sp = ring_spectrum(RingAnsatz{n, q, std::sqrt(r2)});
  std::ostringstream os;
  os << "ring of " << n << " particles around charge " << fmt_double(q)
     << "\n";
  os << "equilibrium radius^2 = " << fmt_double(r2) << "\n";
  os << "angular modes:";
  for (double v : sp.angular) os << ' ' << fmt_double(v);
  os << "\nradial modes: ";
  for (double v : sp.radial) os << ' ' << fmt_double(v);
  os << "\nmin radial = " << fmt_double(sp.min_radial) << " -> "
     << (sp.stable ? "stable" : "not stable") << "\n";
  os << "largest stable ring at this charge: " << nmax_interior(q) << "\n";
  return os.str();
}

std::string shells_text(const ShellPrediction& sp) {
  return std::to_string(sp.m) + ": " + format_occupations(sp.occupations) +
         "\n";
}

std::string shells_json(const ShellPrediction& sp) {
  return "{\"m\": " + std::to_string(sp.m) +
         ", \"occupations\": " + int_list_json(sp.occupations) + "}\n";
}

std::string anneal_json(const AnnealParams& p, const AnnealResult& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"params\": {\"m\": " << p.m << ", \"q\": " << fmt_double(p.q)
     << ", \"t0\": " << fmt_double(p.t0)
     << ", \"alpha\": " << fmt_double(p.alpha) << ", \"sweeps\": " << p.sweeps
     << ", \"moves_per_sweep\": " << (p.moves_per_sweep > 0 ? p.moves_per_sweep
                                                            : p.m)
     << ", \"step_scale\": " << fmt_double(p.step_scale)
     << ", \"restarts\": " << p.restarts << ", \"seed\": " << p.seed
     << ", \"gap_frac\": " << fmt_double(p.gap_frac)
     << ", \"center_eps\": " << fmt_double(p.center_eps) << "},\n";
  os << "  \"best_energy\": " << fmt_double(r.best_energy) << ",\n";
  os << "  \"grad_norm_after_polish\": "
     << fmt_double(r.grad_norm_after_polish) << ",\n";
  os << "  \"signature\": {\"occupations\": "
     << int_list_json(r.signature.occupations)
     << ", \"ring_radii\": " << double_list_json(r.signature.ring_radii)
     << "},\n";
  os << "  \"density_bulk\": "
     << (r.density_bulk ? fmt_double(*r.density_bulk) : "null") << ",\n";
  os << "  \"restarts\": [\n";
  for (std::size_t i = 0; i < r.restarts.size(); ++i) {
    const auto& ro = r.restarts[i];
    os << "    {\"index\": " << ro.index << ", \"seed\": " << ro.seed
       << ", \"energy\": " << fmt_double(ro.energy)
       << ", \"grad_norm\": " << fmt_double(ro.grad_norm)
       << ", \"polish_converged\": "
       << (ro.polish_converged ? "true" : "false") << "}"
       << (i + 1 < r.restarts.size() ? "," : "") << "\n";
  }
  os << "  ],\n";
  ModelParams mp;
  mp.q = p.q;
  std::string cfg = write_configuration(r.best, mp);
  // indent the embedded configuration block two spaces
  os << "  \"best\": ";
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    os << cfg[i];
    if (cfg[i] == '\n' && i + 1 < cfg.size()) os << "  ";
  }
  os << "}\n";
  return os.str();
}

std::string anneal_text(const AnnealParams& p, const AnnealResult& r) {
  std::ostringstream os;
  os << "annealed " << p.m << " particles (q = " << fmt_double(p.q) << ", "
     << p.restarts << " restarts, seed " << p.seed << ")\n";
  os << "best energy " << fmt_double(r.best_energy) << ", gradient norm "
     << fmt_double(r.grad_norm_after_polish) << "\n";
  os << "ring signature " << format_occupations(r.signature.occupations)
     << "\n";
  if (r.density_bulk)
    os << "bulk density " << fmt_double(*r.density_bulk) << " (1/pi = "
       << fmt_double(1.0 / std::numbers::pi) << ")\n";
  return os.str();
}

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Configuration& c, const RingSignature& sig) {
  const double boundary = std::sqrt(static_cast<double>(c.size()));
  double rmax = boundary;
  for (const auto& z : c.positions) rmax = std::max(rmax, z.norm());
  const double world = 1.1 * rmax;
  const double half = 320.0;
  const double scale = 300.0 / world;
  auto X = [&](double x) { return half + x * scale; };
  auto Y = [&](double y) { return half - y * scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
        "height=\"640\" viewBox=\"0 0 640 640\">\n";
  os << "  <rect width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";
  os << "  <circle cx=\"320\" cy=\"320\" r=\"" << px(boundary * scale)
     << "\" fill=\"none\" stroke=\"#b91c1c\" stroke-dasharray=\"8 5\" "
        "stroke-width=\"1.5\"/>\n";
  for (double r : sig.ring_radii) {
    if (r <= 0.0) continue;
    os << "  <circle cx=\"320\" cy=\"320\" r=\"" << px(r * scale)
       << "\" fill=\"none\" stroke=\"#6b7280\" stroke-dasharray=\"4 4\" "
          "stroke-width=\"1\"/>\n";
  }
  for (const auto& z : c.positions) {
    os << "  <circle cx=\"" << px(X(z.x())) << "\" cy=\"" << px(Y(z.y()))
       << "\" r=\"5\" fill=\"#1d4ed8\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

namespace {

Tolerance tol_from_env(const char* name, double fallback) {
  Tolerance t{fallback, "default"};
  if (const char* env = std::getenv(name)) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v > 0.0) {
      t.value = v;
      t.source = "env";
    }
  }
  return t;
}

}  // namespace

VerifyTolerances verify_tolerances() {
  VerifyTolerances t;
  t.sum_rules = tol_from_env("COULOMB_RINGS_TOL_SUM_RULES", 1e-9);
  t.spectra = tol_from_env("COULOMB_RINGS_TOL_SPECTRA", 1e-8);
  t.energy_rel = tol_from_env("COULOMB_RINGS_TOL_ENERGY_REL", 1e-10);
  t.grad = tol_from_env("COULOMB_RINGS_TOL_GRAD", 1e-10);
  return t;
}

namespace {

CheckResult check_sum_rules(double tol) {
  for (std::size_t n = 2; n <= 64; ++n) {
    for (std::size_t s = 1; s <= n; ++s) {
      Complex got = trig_sum_linear(n, s);
      double want = static_cast<double>(s) -
                    (static_cast<double>(n) + 1.0) / 2.0;
      if (std::abs(got.real() - want) > tol || std::abs(got.imag()) > tol)
        return {"sum-rules", false,
                "linear rule off at n=" + std::to_string(n) +
                    " s=" + std::to_string(s)};
    }
    for (std::size_t s = 0; s <= n; ++s) {
      double got = trig_sum_quadratic(n, s);
      double nn = static_cast<double>(n);
      double ss = static_cast<double>(s);
      double want = (nn * nn - 1.0) / 3.0 - 2.0 * ss * (nn - ss);
      if (std::abs(got - want) > tol)
        return {"sum-rules", false,
                "quadratic rule off at n=" + std::to_string(n) +
                    " s=" + std::to_string(s)};
    }
  }
  return {"sum-rules", true, "both identities, n <= 64, all s"};
}

CheckResult check_matrix_spectra(double tol) {
  for (std::size_t n = 2; n <= 64; ++n) {
    const double nn = static_cast<double>(n);
    MatXc l = matrix_L(n);
    MatX b = matrix_B(n);

    if (std::abs(b.trace()) > tol)
      return {"matrix-spectra", false, "trace(B) != 0 at n=" +
                                           std::to_string(n)};

    Eigen::SelfAdjointEigenSolver<MatXc> esl(l);
    std::vector<double> want_l;
    for (std::size_t s = 1; s <= n; ++s)
      want_l.push_back(2.0 * static_cast<double>(s) - nn - 1.0);
    std::sort(want_l.begin(), want_l.end());
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(esl.eigenvalues()[static_cast<Eigen::Index>(i)] -
                   want_l[i]) > tol)
        return {"matrix-spectra", false,
                "L eigenvalue off at n=" + std::to_string(n)};

    Eigen::SelfAdjointEigenSolver<MatX> esb(b);
    std::vector<double> want_b;
    for (std::size_t s = 1; s <= n; ++s) {
      double ss = static_cast<double>(s);
      want_b.push_back((nn * nn - 1.0) / 3.0 - 2.0 * ss * (nn - ss));
    }
    std::sort(want_b.begin(), want_b.end());
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(esb.eigenvalues()[static_cast<Eigen::Index>(i)] -
                   want_b[i]) > tol)
        return {"matrix-spectra", false,
                "B eigenvalue off at n=" + std::to_string(n)};

    MatXc rhs = 0.5 * (l * l + 2.0 * l -
                       (nn * nn - 1.0) / 3.0 *
                           MatXc::Identity(static_cast<Eigen::Index>(n),
                                           static_cast<Eigen::Index>(n)));
    double worst = (rhs - b.cast<Complex>()).cwiseAbs().maxCoeff();
    if (worst > tol)
      return {"matrix-spectra", false,
              "B identity off by " + fmt_double(worst) +
                  " at n=" + std::to_string(n)};
  }
  return {"matrix-spectra", true,
          "L and B spectra, trace, and the B identity, n <= 64"};
}

CheckResult check_golden_hash() {
  std::uint64_t main_h = fnv1a64(golden_main_csv());
  std::uint64_t sweep_h = fnv1a64(golden_sweep_csv());
  if (main_h != golden_main_hash_expected())
    return {"golden-hash", false, "main table drifted"};
  if (sweep_h != golden_sweep_hash_expected())
    return {"golden-hash", false, "40..60 table drifted"};
  return {"golden-hash", true, "both reference tables pinned"};
}

CheckResult check_shell_tables() {
  std::string bad;
  for (int m : golden_ms()) {
    const GoldenRow& row = golden_row(m);
    if (shell_fill(m).occupations != row.model) {
      if (!bad.empty()) bad += ' ';
      bad += std::to_string(m);
    }
  }
  if (!bad.empty())
    return {"shell-tables", false, "prediction mismatch at M = " + bad};
  return {"shell-tables", true,
          std::to_string(golden_ms().size()) + " rows reproduced exactly"};
}

CheckResult check_ring_extremum(double tol) {
  for (double q : {0.0, 1.0, 5.0, 20.5}) {
    for (std::size_t n = 2; n <= 100; ++n) {
      ModelParams mp;
      mp.q = q;
      double gn = gradient(equilibrium_ring(n, q), mp).norm();
      if (gn >= tol)
        return {"ring-extremum", false,
                "gradient norm " + fmt_double(gn) + " at n=" +
                    std::to_string(n) + " q=" + fmt_double(q)};
    }
  }
  return {"ring-extremum", true, "n <= 100, q in {0, 1, 5, 20.5}"};
}

CheckResult check_hexagon_pentagon(double tol) {
  ModelParams mp;
  const double hex_closed = 15.0 - 15.0 * std::log(2.5) - 6.0 * std::log(6.0);
  const double pent_closed = 15.0 - 15.0 * std::log(3.0) - 5.0 * std::log(5.0);

  Configuration hex{ring_positions(6, std::sqrt(2.5))};
  double hex_e = energy(hex, mp).total;
  Configuration pent{ring_positions(5, std::sqrt(3.0))};
  pent.positions.emplace_back(0.0, 0.0);
  double pent_e = energy(pent, mp).total;

  if (std::abs(hex_e - hex_closed) > tol * std::abs(hex_closed))
    return {"hexagon-pentagon", false, "hexagon closed form mismatch"};
  if (std::abs(pent_e - pent_closed) > tol * std::abs(pent_closed))
    return {"hexagon-pentagon", false, "pentagon closed form mismatch"};
  if (!(pent_e < hex_e))
    return {"hexagon-pentagon", false, "energy ordering wrong"};
  return {"hexagon-pentagon", true,
          "closed forms match, pentagon+center sits lower"};
}

}  // namespace

VerifyReport run_verify() { return run_verify(verify_tolerances()); }

VerifyReport run_verify(const VerifyTolerances& tol) {
  VerifyReport rep;
  rep.tol = tol;
  rep.checks.push_back(check_sum_rules(rep.tol.sum_rules.value));
  rep.checks.push_back(check_matrix_spectra(rep.tol.spectra.value));
  rep.checks.push_back(check_golden_hash());
  rep.checks.push_back(check_shell_tables());
  rep.checks.push_back(check_ring_extremum(rep.tol.grad.value));
  rep.checks.push_back(check_hexagon_pentagon(rep.tol.energy_rel.value));
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

namespace {

std::string tol_line(const char* name, const Tolerance& t) {
  std::string s = std::string(name) + " = " + fmt_double(t.value);
  if (t.source != "default") s += " (" + t.source + ")";
  return s + "\n";
}

}  // namespace

std::string verify_text(const VerifyReport& rep) {
  std::ostringstream os;
  os << "tolerances:\n";
  os << "  " << tol_line("sum_rules ", rep.tol.sum_rules);
  os << "  " << tol_line("spectra   ", rep.tol.spectra);
  os << "  " << tol_line("energy_rel", rep.tol.energy_rel);
  os << "  " << tol_line("grad      ", rep.tol.grad);
  for (const auto& c : rep.checks)
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
       << "\n";
  os << (rep.pass ? "all checks passed" : "CHECKS FAILED") << "\n";
  return os.str();
}

std::string verify_json(const VerifyReport& rep) {
  std::ostringstream os;
  os << "{\n  \"tolerances\": {";
  os << "\"sum_rules\": " << fmt_double(rep.tol.sum_rules.value);
  os << ", \"spectra\": " << fmt_double(rep.tol.spectra.value);
  os << ", \"energy_rel\": " << fmt_double(rep.tol.energy_rel.value);
  os << ", \"grad\": " << fmt_double(rep.tol.grad.value);
  os << ", \"overridden\": [";
  bool first = true;
  auto add = [&](const char* n, const Tolerance& t) {
    if (t.source != "default") {
      if (!first) os << ", ";
      os << "{\"name\": \"" << n << "\", \"source\": \"" << t.source
         << "\"}";
      first = false;
    }
  };
  add("sum_rules", rep.tol.sum_rules);
  add("spectra", rep.tol.spectra);
  add("energy_rel", rep.tol.energy_rel);
  add("grad", rep.tol.grad);
  os << "]},\n  \"checks\": [\n";
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    const auto& c = rep.checks[i];
    os << "    {\"name\": \"" << json_escape(c.name) << "\", \"pass\": "
       << (c.pass ? "true" : "false") << ", \"detail\": \""
       << json_escape(c.detail) << "\"}"
       << (i + 1 < rep.checks.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"pass\": " << (rep.pass ? "true" : "false") << "\n}\n";
  return os.str();
}

}  // namespace coulomb
