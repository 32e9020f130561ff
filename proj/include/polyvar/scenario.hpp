#pragma once

// Scenario runner: configures problems, executes the named verification
// scenarios over a ladder of grid levels, and emits CSV/JSON reports with a
// pass / fail / inconclusive verdict.  A verdict is never derived from a
// non-converged solve; those runs are marked inconclusive with diagnostics.

#include <cstdint>
#include <string>
#include <vector>

#include "polyvar/solver.hpp"

namespace polyvar {

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct ScenarioConfig {
  std::string scenario = "thm2_i";
  int N = 5;
  int r = 2;
  PhiKind phi_kind = PhiKind::constant_sign_bump;
  bool phi_kind_given = false;   ///< scenario default applies otherwise
  double phi_norm = 0.5;
  bool phi_norm_given = false;   ///< scenario default norms apply otherwise
  std::vector<int> levels = {100, 200, 400};
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string out;               ///< output path; empty = stdout
  std::string format = "csv";    ///< csv | json

  void validate() const;  ///< throws on unknown scenario, N <= 2r, bad norms
};

/// One emitted row; columns match the CSV schema exactly.
struct ReportRow {
  std::string scenario;
  int N = 0;
  int r = 0;
  std::string phi_kind;
  double phi_norm = 0.0;
  int level = 0;
  int nodes = 0;
  double value_dirichlet = 0.0;
  double value_navier = 0.0;
  double gap = 0.0;
  double lambda = 0.0;
  double constraint_res = 0.0;
  double el_res = 0.0;
  bool converged = false;
  std::string verdict;  ///< row-level status
};

struct Report {
  ScenarioConfig config;
  std::vector<ReportRow> rows;
  Verdict verdict = Verdict::inconclusive;
  double wall_seconds = 0.0;
  std::vector<std::string> notes;  ///< assertion margins, diagnostics
};

Report run_scenario(const ScenarioConfig& config);

/// One report per value along the chosen axis {epsilon | norm_phi | grid}.
std::vector<Report> sweep(const ScenarioConfig& base, const std::string& axis,
                          const std::vector<double>& values);

// -- serialization -----------------------------------------------------------

/// Header + one newline-terminated row per entry; floats at 17 significant
/// digits so that parse_csv(emit_csv(rows)) round-trips exactly.
std::string emit_csv(const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_csv(const std::string& text);

std::string emit_json(const Report& report);
std::string emit_json(const std::vector<Report>& reports);

/// Flat key=value config file ('#' comments, blank lines ignored).  Unknown
/// keys are rejected.  CLI flags override file values.
ScenarioConfig load_config_file(const std::string& path);

PhiKind phi_kind_from_string(const std::string& s);
std::string to_string(PhiKind k);

}  // namespace polyvar
