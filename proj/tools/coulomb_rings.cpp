#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coulomb/annealer.hpp"
#include "coulomb/config_io.hpp"
#include "coulomb/energy.hpp"
#include "coulomb/golden.hpp"
#include "coulomb/report.hpp"
#include "coulomb/shell_model.hpp"
#include "coulomb/spectral.hpp"

namespace {

using namespace coulomb;

// defaults loadable from the optional --config JSON; flags still win
struct FileDefaults {
  AnnealParams anneal;
  VerifyTolerances tol;
};

FileDefaults load_defaults(const std::string& path) {
  FileDefaults d;
  d.tol = verify_tolerances();
  if (path.empty()) return d;

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw BadInputFile(std::string("config file is not valid JSON: ") +
                       e.what());
  }
  if (!j.is_object()) throw BadInputFile("config file must hold a JSON object");

  auto num = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number())
      throw BadInputFile(std::string("config key '") + key +
                         "' must be a number");
    out = j[key].get<double>();
  };
  auto integer = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer())
      throw BadInputFile(std::string("config key '") + key +
                         "' must be an integer");
    out = j[key].get<int>();
  };
  auto tol = [&](const char* key, Tolerance& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number())
      throw BadInputFile(std::string("config key '") + key +
                         "' must be a number");
    out = Tolerance{j[key].get<double>(), "config"};
  };

  static const std::vector<std::string> known = {
      "t0",           "alpha",          "sweeps",
      "moves_per_sweep", "step_scale",  "restarts",
      "gap_frac",     "center_eps",     "tol_sum_rules",
      "tol_spectra",  "tol_energy_rel", "tol_grad"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw BadInputFile("unknown config key '" + key + "'");
  }

  num("t0", d.anneal.t0);
  num("alpha", d.anneal.alpha);
  integer("sweeps", d.anneal.sweeps);
  integer("moves_per_sweep", d.anneal.moves_per_sweep);
  num("step_scale", d.anneal.step_scale);
  integer("restarts", d.anneal.restarts);
  num("gap_frac", d.anneal.gap_frac);
  num("center_eps", d.anneal.center_eps);
  tol("tol_sum_rules", d.tol.sum_rules);
  tol("tol_spectra", d.tol.spectra);
  tol("tol_energy_rel", d.tol.energy_rel);
  tol("tol_grad", d.tol.grad);
  return d;
}

std::vector<int> expand_ms(const std::vector<int>& ms, int from, int to) {
  std::vector<int> out = ms;
  if (from >= 1 && to >= from)
    for (int m = from; m <= to; ++m) out.push_back(m);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilibrium ring structure of confined planar charges"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 42;
  bool as_json = false;
  bool quiet = false;
  std::string config_path;
  app.add_option("--seed", seed, "base RNG seed")->capture_default_str();
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_flag("--quiet", quiet, "suppress text summaries");
  app.add_option("--config", config_path,
                 "JSON file overriding schedule and tolerance defaults");

  auto* c_energy = app.add_subcommand(
      "energy", "evaluate the decomposed energy of a configuration file");
  std::string energy_in;
  c_energy->add_option("--in", energy_in, "configuration JSON path")
      ->required();

  auto* c_spectrum = app.add_subcommand(
      "spectrum", "fluctuation spectra of the equilibrium ring");
  std::size_t spec_n = 0;
  double spec_q = 0.0;
  c_spectrum->add_option("--n", spec_n, "particles on the ring")->required();
  c_spectrum->add_option("--q", spec_q, "enclosed charge")
      ->capture_default_str();

  auto* c_nmax =
      app.add_subcommand("nmax", "largest stable ring populations");
  double nmax_q = 0.0;
  std::size_t nmax_m = 0;
  auto* nmax_q_opt =
      c_nmax->add_option("--q", nmax_q, "enclosed charge for a single ring");
  auto* nmax_m_opt = c_nmax->add_option(
      "--m", nmax_m, "total particles for the outermost ring capacity");

  auto* c_shells =
      app.add_subcommand("shells", "shell-model ring occupations");
  int shells_m = 0;
  int shells_from = 0, shells_to = 0;
  auto* shells_m_opt = c_shells->add_option("--m", shells_m, "particle count");
  c_shells->add_option("--from", shells_from, "range start");
  c_shells->add_option("--to", shells_to, "range end");

  auto* c_anneal = app.add_subcommand(
      "anneal", "find a low-energy configuration by simulated annealing");
  AnnealParams flag_p;
  std::string anneal_out, anneal_svg;
  c_anneal->add_option("--m", flag_p.m, "particle count")->required();
  auto* a_q = c_anneal->add_option("--q", flag_p.q, "enclosed charge");
  auto* a_restarts =
      c_anneal->add_option("--restarts", flag_p.restarts, "restart count");
  auto* a_t0 = c_anneal->add_option("--t0", flag_p.t0, "initial temperature");
  auto* a_alpha =
      c_anneal->add_option("--alpha", flag_p.alpha, "cooling factor");
  auto* a_sweeps = c_anneal->add_option("--sweeps", flag_p.sweeps, "sweeps");
  auto* a_moves = c_anneal->add_option("--moves-per-sweep",
                                       flag_p.moves_per_sweep,
                                       "moves per sweep (default m)");
  auto* a_step =
      c_anneal->add_option("--step-scale", flag_p.step_scale,
                           "proposal stddev at t0");
  auto* a_gap = c_anneal->add_option("--gap-frac", flag_p.gap_frac,
                                     "ring detection gap threshold");
  auto* a_center = c_anneal->add_option("--center-eps", flag_p.center_eps,
                                        "center group radius fraction");
  c_anneal->add_option("--out", anneal_out, "write result JSON here");
  c_anneal->add_option("--svg", anneal_svg, "write an SVG scatter here");

  auto* c_compare = app.add_subcommand(
      "compare", "shell model vs reference tables (and optional fresh runs)");
  std::vector<int> compare_ms;
  int compare_from = 0, compare_to = 0;
  bool compare_run = false;
  std::string compare_csv;
  c_compare->add_option("--m", compare_ms, "particle counts");
  c_compare->add_option("--from", compare_from, "range start");
  c_compare->add_option("--to", compare_to, "range end");
  c_compare->add_flag("--run-anneal", compare_run,
                      "fill the observed column from fresh annealing runs");
  c_compare->add_option("--csv", compare_csv, "write the table as CSV here");

  auto* c_render = app.add_subcommand(
      "render", "SVG scatter of a configuration with detected rings");
  std::string render_in, render_out;
  c_render->add_option("--in", render_in, "configuration JSON path")
      ->required();
  c_render->add_option("--out", render_out, "SVG output path")->required();

  auto* c_verify =
      app.add_subcommand("verify", "run the built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    FileDefaults defaults = load_defaults(config_path);

    if (*c_energy) {
      LoadedConfig lc = read_configuration_file(energy_in);
      EnergyReport rep = energy(lc.config, lc.params);
      if (as_json)
        std::cout << energy_json(rep);
      else if (!quiet)
        std::cout << energy_text(rep);
      return 0;
    }

    if (*c_spectrum) {
      if (as_json)
        std::cout << spectrum_json(spec_n, spec_q);
      else if (!quiet)
        std::cout << spectrum_text(spec_n, spec_q);
      return 0;
    }

    if (*c_nmax) {
      if (!nmax_q_opt->count() && !nmax_m_opt->count())
        throw BadInputFile("nmax needs --q and/or --m");
      std::string json = "{";
      std::string text;
      bool first = true;
      if (nmax_q_opt->count()) {
        int v = nmax_interior(nmax_q);
        json += "\"q\": " + fmt_double(nmax_q) +
                ", \"nmax_interior\": " + std::to_string(v);
        text += "largest stable ring around charge " + fmt_double(nmax_q) +
                ": " + std::to_string(v) + "\n";
        first = false;
      }
      if (nmax_m_opt->count()) {
        int v = nmax_total(nmax_m);
        if (!first) json += ", ";
        json += "\"m\": " + std::to_string(nmax_m) +
                ", \"nmax_total\": " + std::to_string(v);
        text += "outermost ring capacity of " + std::to_string(nmax_m) +
                " particles: " + std::to_string(v) + "\n";
      }
      json += "}\n";
      if (as_json)
        std::cout << json;
      else if (!quiet)
        std::cout << text;
      return 0;
    }

    if (*c_shells) {
      std::vector<int> ms;
      if (shells_m_opt->count()) ms.push_back(shells_m);
      ms = expand_ms(ms, shells_from, shells_to);
      if (ms.empty()) throw BadInputFile("shells needs --m or --from/--to");
      if (as_json) {
        std::cout << "[";
        for (std::size_t i = 0; i < ms.size(); ++i) {
          std::string one = shells_json(shell_fill(ms[i]));
          one.pop_back();  // newline
          std::cout << (i ? ", " : "") << one;
        }
        std::cout << "]\n";
      } else if (!quiet) {
        for (int m : ms) std::cout << shells_text(shell_fill(m));
      }
      return 0;
    }

    if (*c_anneal) {
      AnnealParams p = defaults.anneal;
      p.m = flag_p.m;
      p.seed = seed;
      if (a_q->count()) p.q = flag_p.q;
      if (a_restarts->count()) p.restarts = flag_p.restarts;
      if (a_t0->count()) p.t0 = flag_p.t0;
      if (a_alpha->count()) p.alpha = flag_p.alpha;
      if (a_sweeps->count()) p.sweeps = flag_p.sweeps;
      if (a_moves->count()) p.moves_per_sweep = flag_p.moves_per_sweep;
      if (a_step->count()) p.step_scale = flag_p.step_scale;
      if (a_gap->count()) p.gap_frac = flag_p.gap_frac;
      if (a_center->count()) p.center_eps = flag_p.center_eps;

      AnnealResult res = anneal(p);
      std::string doc = anneal_json(p, res);
      if (!anneal_out.empty()) write_text_file(anneal_out, doc);
      if (!anneal_svg.empty())
        write_text_file(anneal_svg, render_svg(res.best, res.signature));
      if (as_json)
        std::cout << doc;
      else if (!quiet)
        std::cout << anneal_text(p, res);
      return 0;
    }

    if (*c_compare) {
      std::vector<int> ms = expand_ms(compare_ms, compare_from, compare_to);
      if (ms.empty()) ms = golden_ms();
      AnnealParams base = defaults.anneal;
      base.seed = seed;
      auto rows = compare_rows(ms, compare_run, base);
      if (!compare_csv.empty())
        write_text_file(compare_csv, format_compare_csv(rows));
      if (as_json)
        std::cout << format_compare_json(rows);
      else if (!quiet)
        std::cout << format_compare_text(rows);
      return 0;
    }

    if (*c_render) {
      LoadedConfig lc = read_configuration_file(render_in);
      RingSignature sig = detect_rings(lc.config, defaults.anneal.gap_frac,
                                       defaults.anneal.center_eps);
      write_text_file(render_out, render_svg(lc.config, sig));
      if (!quiet && !as_json)
        std::cout << "wrote " << render_out << " ("
                  << format_occupations(sig.occupations) << ")\n";
      return 0;
    }

    if (*c_verify) {
      VerifyReport rep = run_verify(defaults.tol);
      if (as_json)
        std::cout << verify_json(rep);
      else if (!quiet)
        std::cout << verify_text(rep);
      return rep.pass ? 0 : 1;
    }
  } catch (const BadInputFile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
