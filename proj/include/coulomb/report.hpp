#pragma once

#include <optional>
#include <string>

#include "coulomb/annealer.hpp"
#include "coulomb/shell_model.hpp"
#include "coulomb/types.hpp"

namespace coulomb {

// ref_* columns come from the embedded reference tables, never computed
struct ComparisonRow {
  int m = 0;
  std::vector<int> predicted;                // shell_fill
  std::optional<std::vector<int>> ref_model;
  std::optional<std::vector<int>> ref_sim;
  std::optional<std::vector<int>> observed;  // fresh annealing run
  std::optional<int> max_delta;  // per-ring gap vs ref_sim, outermost-aligned
};

std::vector<ComparisonRow> compare_rows(const std::vector<int>& ms,
                                        bool run_anneal,
                                        const AnnealParams& base);

std::string format_compare_text(const std::vector<ComparisonRow>& rows);
std::string format_compare_csv(const std::vector<ComparisonRow>& rows);
std::string format_compare_json(const std::vector<ComparisonRow>& rows);

std::string energy_text(const EnergyReport& rep);
std::string energy_json(const EnergyReport& rep);

std::string spectrum_text(std::size_t n, double q);
std::string spectrum_json(std::size_t n, double q);

std::string shells_text(const ShellPrediction& sp);
std::string shells_json(const ShellPrediction& sp);

// full provenance: params plus result, stable field order, no timestamps
std::string anneal_json(const AnnealParams& p, const AnnealResult& r);
std::string anneal_text(const AnnealParams& p, const AnnealResult& r);

// deterministic scatter plot: particles, dashed detected-ring circles, and
// the sqrt(M) reference disc
std::string render_svg(const Configuration& c, const RingSignature& sig);

struct Tolerance {
  double value = 0.0;
  std::string source = "default";  // "default", "env", or "config"
};

struct VerifyTolerances {
  Tolerance sum_rules{1e-9, "default"};
  Tolerance spectra{1e-8, "default"};
  Tolerance energy_rel{1e-10, "default"};
  Tolerance grad{1e-10, "default"};
};

// defaults, overridable via COULOMB_RINGS_TOL_{SUM_RULES,SPECTRA,ENERGY_REL,GRAD}
VerifyTolerances verify_tolerances();

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  VerifyTolerances tol;
  std::vector<CheckResult> checks;
  bool pass = true;
};

VerifyReport run_verify(const VerifyTolerances& tol);
VerifyReport run_verify();  // with verify_tolerances()
std::string verify_text(const VerifyReport& rep);
std::string verify_json(const VerifyReport& rep);

}  // namespace coulomb
