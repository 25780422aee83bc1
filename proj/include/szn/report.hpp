#pragma once

#include "szn/decompose.hpp"
#include "szn/dilation.hpp"
#include "szn/io.hpp"
#include "szn/tomography.hpp"

namespace szn {

inline constexpr const char* kVersion = "szn 0.1.0";

/// Everything a pipeline run depends on; serialised verbatim into every
/// report for provenance.
struct RunConfig {
  DephasingParams dephasing{1.4, 1.5, 2.0};
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  bool renormalize_kraus = false;
  int convention_id = 0;
  std::string out_dir = "out";
};

Json config_to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j);

/// Row labels |00>, |01>, |0+>, ... in tomography-basis order.
const std::vector<std::string>& state_labels();

struct GateCountRow {
  int kraus_index = 0;
  int cnots = 0;
  int rotations = 0;
};

/// Published experimental values, shipped for side-by-side display only.
struct PaperReference {
  std::string source = "paper-experiment";
  std::vector<std::vector<double>> per_state_overlaps;  // 16 x 4, may be empty
  std::vector<double> per_state_fidelities;             // 16, may be empty
};

struct ExperimentReport {
  std::string experiment;
  RunConfig config;
  double completeness_defect = 0.0;        // of the source Kraus set, pre-renormalisation
  std::vector<double> operator_norms;      // same
  std::vector<GateCountRow> gate_counts;
  std::vector<std::vector<double>> per_state_overlaps;  // 16 x n_kraus
  std::vector<double> per_state_fidelities;             // 16
  double process_fidelity_value = 0.0;
  ChiMatrix chi_target;
  ChiMatrix chi_simulated;
  PaperReference paper;
};

/// Dephasing channel artefacts produced by `gen-channel`.
struct GeneratedChannel {
  Superoperator propagator;  // exp(Z t)
  ChiMatrix chi;
  KrausSet kraus;
};

GeneratedChannel generate_dephasing_channel(const DephasingParams& p);

/// Full pipeline: generator -> chi -> Kraus -> dilate -> compile -> simulate
/// through the compiled circuits -> QPT -> compare against the target chi.
ExperimentReport run_phase_damping(const RunConfig& config);

/// Same pipeline, sourcing the channel from a Kraus file (published data).
ExperimentReport run_mfgp(const RunConfig& config, const KrausSet& verbatim);

Json report_to_json(const ExperimentReport& r);

/// Writes report.json plus the two per-state CSV tables into `dir`.
void emit_report(const ExperimentReport& r, const std::filesystem::path& dir);

struct AppendixEntry {
  std::string name;
  int cnots = 0;
  int rotations = 0;
  std::vector<double> distances;   // one per rotation convention id 0..3
  double self_check_distance = 0;  // our own decomposition of the same target
};

struct AppendixReport {
  std::vector<AppendixEntry> entries;
  double theta1_consistency = 0;  // |0.3737 * pi/2 - 0.5870|
};

/// Checks every bundled published gate list against the dilation of its
/// Kraus operator under all four rotation conventions. Diagnostic: distances
/// are reported, never asserted.
AppendixReport verify_appendix();

Json appendix_report_to_json(const AppendixReport& r);

/// Paper tables from the bundled CSVs ("phase-damping" or "mfgp").
PaperReference load_paper_reference(const std::string& experiment);

}  // namespace szn
