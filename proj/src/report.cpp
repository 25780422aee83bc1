#include "szn/report.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace szn {

Json config_to_json(const RunConfig& c) {
  Json j;
  j["gamma1"] = c.dephasing.gamma1;
  j["gamma2"] = c.dephasing.gamma2;
  j["t"] = c.dephasing.t;
  j["seed"] = c.seed;
  j["noise_sigma"] = c.noise_sigma;
  j["renormalize_kraus"] = c.renormalize_kraus;
  j["convention"] = c.convention_id;
  j["out_dir"] = c.out_dir;
  return j;
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  if (j.contains("gamma1")) c.dephasing.gamma1 = j["gamma1"].get<double>();
  if (j.contains("gamma2")) c.dephasing.gamma2 = j["gamma2"].get<double>();
  if (j.contains("t")) c.dephasing.t = j["t"].get<double>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("noise_sigma")) c.noise_sigma = j["noise_sigma"].get<double>();
  if (j.contains("renormalize_kraus"))
    c.renormalize_kraus = j["renormalize_kraus"].get<bool>();
  if (j.contains("convention")) c.convention_id = j["convention"].get<int>();
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (c.convention_id < 0 || c.convention_id > 3)
    throw InvalidState("convention id must be 0..3");
  return c;
}

const std::vector<std::string>& state_labels() {
  static const std::vector<std::string> labels = [] {
    const char* l[] = {"0", "1", "+", "-"};
    std::vector<std::string> out;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        out.push_back(std::string("|") + l[a] + l[b] + ">");
    return out;
  }();
  return labels;
}

GeneratedChannel generate_dephasing_channel(const DephasingParams& p) {
  p.validate();
  const Superoperator gen = dephasing_generator(p);
  CMatrix props = CMatrix::Zero(16, 16);
  for (int k = 0; k < 16; ++k)
    props(k, k) = std::exp(gen.matrix(k, k) * p.t);
  GeneratedChannel out;
  out.propagator = Superoperator{props};
  out.chi = superop_to_chi(out.propagator);
  out.kraus = chi_to_kraus(out.chi);
  return out;
}

namespace {

// Deterministic per-(state, operator) noise stream.
std::uint64_t block_seed(std::uint64_t base, int state, int kraus) {
  return base * 100003ull + std::uint64_t(state) * 16ull + std::uint64_t(kraus);
}

ExperimentReport run_pipeline(const std::string& name, const RunConfig& config,
                              const KrausSet& channel_set, const ChiMatrix& chi_target,
                              const std::function<CMatrix(const CMatrix&)>& theory,
                              double completeness_tol) {
  ExperimentReport rep;
  rep.experiment = name;
  rep.config = config;
  rep.chi_target = chi_target;

  if (!channel_set.complete(completeness_tol))
    throw IncompleteSet(name + ": completeness defect " +
                        std::to_string(channel_set.completeness_defect));

  // Dilate and compile each Kraus operator once.
  const size_t n_kraus = channel_set.operators.size();
  std::vector<CMatrix> compiled(n_kraus);
  for (size_t i = 0; i < n_kraus; ++i) {
    DilationUnitary dil = dilate(channel_set.operators[i]);
    dil.kraus_index = static_cast<int>(i);
    const Circuit circuit = decompose_unitary(dil.matrix);
    compiled[i] = circuit_unitary(circuit);
    rep.gate_counts.push_back({static_cast<int>(i), circuit.cnot_count(),
                               circuit.rotation_count()});
  }

  TomographyRecord record;
  record.noise_sigma = config.noise_sigma > 0 ? std::optional<double>(config.noise_sigma)
                                              : std::nullopt;
  record.seed = config.noise_sigma > 0 ? std::optional<std::uint64_t>(config.seed)
                                       : std::nullopt;
  for (int k = 0; k < 16; ++k) {
    const CVector& ket = input_basis().kets[size_t(k)];
    const CMatrix& rho = input_basis().projectors[size_t(k)];
    const CMatrix theory_out = theory(rho);

    CMatrix sim_out = CMatrix::Zero(4, 4);
    std::vector<double> overlaps;
    for (size_t i = 0; i < n_kraus; ++i) {
      const CVector evolved = compiled[i] * embed_state(ket);
      CMatrix block = evolved.head(4) * evolved.head(4).adjoint();
      if (config.noise_sigma > 0)
        block = add_measurement_noise(block, config.noise_sigma,
                                      block_seed(config.seed, k, int(i)));
      const CMatrix theory_block = channel_set.operators[i] * rho *
                                   channel_set.operators[i].adjoint();
      overlaps.push_back(normalized_overlap(hermitize(block), hermitize(theory_block)));
      sim_out += block;
    }
    sim_out = hermitize(sim_out);
    rep.per_state_overlaps.push_back(std::move(overlaps));
    rep.per_state_fidelities.push_back(normalized_overlap(sim_out, hermitize(theory_out)));

    record.inputs.emplace_back(rho);
    record.outputs.push_back(sim_out);
  }

  rep.chi_simulated = cptp_project_qpt(record);
  rep.process_fidelity_value = process_fidelity(rep.chi_target, rep.chi_simulated);
  return rep;
}

}  // namespace

ExperimentReport run_phase_damping(const RunConfig& config) {
  const GeneratedChannel channel = generate_dephasing_channel(config.dephasing);
  const Superoperator gen = dephasing_generator(config.dephasing);
  const double t = config.dephasing.t;
  ExperimentReport rep = run_pipeline(
      "phase-damping", config, channel.kraus, channel.chi,
      [&](const CMatrix& rho) {
        return evolve_superop(gen, t, DensityMatrix(rho)).matrix;
      },
      default_tol().completeness);
  rep.completeness_defect = channel.kraus.completeness_defect;
  for (const CMatrix& a : channel.kraus.operators)
    rep.operator_norms.push_back(operator_norm(a));
  rep.paper = load_paper_reference("phase-damping");
  return rep;
}

ExperimentReport run_mfgp(const RunConfig& config, const KrausSet& verbatim) {
  if (verbatim.completeness_defect > default_tol().completeness_loose)
    throw IncompleteSet("mfgp: completeness defect " +
                        std::to_string(verbatim.completeness_defect) +
                        " exceeds the experimental tolerance 0.05");
  KrausSet used = verbatim;
  if (config.renormalize_kraus) {
    used = renormalize(verbatim);
  } else if (verbatim.completeness_defect > default_tol().completeness) {
    std::cerr << "warning: Kraus set completeness defect "
              << verbatim.completeness_defect
              << "; pass --renormalize to project onto a complete set\n";
  }
  const ChiMatrix chi_target = kraus_to_chi(used);
  ExperimentReport rep = run_pipeline(
      "mfgp", config, used, chi_target,
      [&](const CMatrix& rho) {
        CMatrix out = CMatrix::Zero(4, 4);
        for (const CMatrix& a : used.operators) out += a * rho * a.adjoint();
        return out;
      },
      default_tol().completeness_loose);
  rep.completeness_defect = verbatim.completeness_defect;
  for (const CMatrix& a : verbatim.operators)
    rep.operator_norms.push_back(operator_norm(a));
  rep.paper = load_paper_reference("mfgp");
  return rep;
}

namespace {

Json matrix_component(const CMatrix& m, bool real) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(real ? m(i, j).real() : m(i, j).imag());
    rows.push_back(row);
  }
  return rows;
}

Json chi_plot_arrays(const ChiMatrix& chi) {
  Json j;
  j["real"] = matrix_component(chi.matrix, true);
  j["imag"] = matrix_component(chi.matrix, false);
  return j;
}

Json tolerances_to_json() {
  const Tolerances& t = default_tol();
  Json j;
  j["hermiticity"] = t.hermiticity;
  j["completeness"] = t.completeness;
  j["completeness_loose"] = t.completeness_loose;
  j["unitarity"] = t.unitarity;
  j["chi_clamp"] = t.chi_clamp;
  j["kraus_keep"] = t.kraus_keep;
  return j;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

PaperReference load_paper_reference(const std::string& experiment) {
  PaperReference ref;
  const std::string overlaps_file = experiment == "mfgp"
                                        ? "table2_mfgp_overlaps.csv"
                                        : "table1_phase_damping_overlaps.csv";
  const std::string fidelity_file = experiment == "mfgp"
                                        ? "table4_mfgp_fidelities.csv"
                                        : "table3_phase_damping_fidelities.csv";
  const auto overlaps = parse_csv(read_text_file(data_dir() / overlaps_file));
  for (size_t r = 1; r < overlaps.size(); ++r) {
    std::vector<double> row;
    for (size_t c = 1; c < overlaps[r].size(); ++c) row.push_back(std::stod(overlaps[r][c]));
    ref.per_state_overlaps.push_back(std::move(row));
  }
  const auto fid = parse_csv(read_text_file(data_dir() / fidelity_file));
  for (size_t r = 1; r < fid.size(); ++r)
    ref.per_state_fidelities.push_back(std::stod(fid[r][1]));
  return ref;
}

Json report_to_json(const ExperimentReport& r) {
  Json j;
  j["experiment"] = r.experiment;
  j["version"] = kVersion;
  j["config"] = config_to_json(r.config);
  j["tolerances"] = tolerances_to_json();
  j["completeness_defect"] = r.completeness_defect;
  j["operator_norms"] = r.operator_norms;
  Json counts = Json::array();
  for (const GateCountRow& g : r.gate_counts)
    counts.push_back({{"kraus_index", g.kraus_index},
                      {"cnots", g.cnots},
                      {"rotations", g.rotations}});
  j["gate_counts"] = counts;
  Json states = Json::array();
  for (size_t k = 0; k < r.per_state_fidelities.size(); ++k) {
    Json s;
    s["state"] = state_labels()[k];
    s["overlaps"] = r.per_state_overlaps[k];
    s["fidelity"] = r.per_state_fidelities[k];
    states.push_back(s);
  }
  j["per_state"] = states;
  j["process_fidelity"] = r.process_fidelity_value;
  j["chi_target"] = chi_plot_arrays(r.chi_target);
  j["chi_simulated"] = chi_plot_arrays(r.chi_simulated);
  Json paper;
  paper["source"] = r.paper.source;
  paper["per_state_overlaps"] = r.paper.per_state_overlaps;
  paper["per_state_fidelities"] = r.paper.per_state_fidelities;
  j["paper_reference"] = paper;
  return j;
}

void emit_report(const ExperimentReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_json_file(dir / "report.json", report_to_json(r));

  char buf[64];
  std::string overlaps = "state";
  const size_t n_kraus = r.per_state_overlaps.empty() ? 0 : r.per_state_overlaps[0].size();
  for (size_t i = 0; i < n_kraus; ++i) overlaps += ",A" + std::to_string(i + 1);
  for (size_t i = 0; i < 4 && !r.paper.per_state_overlaps.empty(); ++i)
    overlaps += ",paper_A" + std::to_string(i + 1);
  overlaps += "\n";
  for (size_t k = 0; k < r.per_state_overlaps.size(); ++k) {
    overlaps += state_labels()[k];
    for (double v : r.per_state_overlaps[k]) {
      std::snprintf(buf, sizeof buf, ",%.10f", v);
      overlaps += buf;
    }
    if (!r.paper.per_state_overlaps.empty())
      for (double v : r.paper.per_state_overlaps[k]) {
        std::snprintf(buf, sizeof buf, ",%.4f", v);
        overlaps += buf;
      }
    overlaps += "\n";
  }
  write_text_file(dir / "per_state_overlaps.csv", overlaps);

  std::string fid = r.paper.per_state_fidelities.empty() ? "state,fidelity\n"
                                                         : "state,fidelity,paper_fidelity\n";
  for (size_t k = 0; k < r.per_state_fidelities.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.10f", r.per_state_fidelities[k]);
    fid += state_labels()[k] + "," + buf;
    if (!r.paper.per_state_fidelities.empty()) {
      std::snprintf(buf, sizeof buf, ",%.4f", r.paper.per_state_fidelities[k]);
      fid += buf;
    }
    fid += "\n";
  }
  write_text_file(dir / "per_state_fidelities.csv", fid);
}

AppendixReport verify_appendix() {
  AppendixReport rep;
  rep.theta1_consistency = std::abs(0.3737 * M_PI / 2.0 - 0.5870);

  const auto add_entries = [&](const std::string& prefix, const KrausSet& set,
                               const std::string& file_prefix) {
    for (size_t i = 0; i < set.operators.size(); ++i) {
      const DilationUnitary dil = dilate(set.operators[i]);
      const std::string file = file_prefix + std::to_string(i + 1) + ".txt";
      const Circuit published = parse_gate_list(read_text_file(data_dir() / file));
      AppendixEntry entry;
      entry.name = prefix + "_U_A" + std::to_string(i + 1);
      entry.cnots = published.cnot_count();
      entry.rotations = published.rotation_count();
      const VerifyReport verify =
          verify_gate_list(published, dil.matrix, all_conventions());
      for (const ConventionDistance& d : verify.distances)
        entry.distances.push_back(d.distance);
      const Circuit own = decompose_unitary(dil.matrix);
      entry.self_check_distance = phase_distance(circuit_unitary(own), dil.matrix);
      rep.entries.push_back(std::move(entry));
    }
  };

  const KrausSet published_pd =
      kraus_from_json(read_json_file(data_dir() / "kraus_phase_damping_published.json"));
  add_entries("phase_damping", published_pd, "gates_phase_damping_u");

  const KrausSet published_mfgp =
      kraus_from_json(read_json_file(data_dir() / "kraus_mfgp_published.json"));
  add_entries("mfgp", renormalize(published_mfgp), "gates_mfgp_u");
  return rep;
}

Json appendix_report_to_json(const AppendixReport& r) {
  Json j;
  j["version"] = kVersion;
  j["theta1_consistency"] = r.theta1_consistency;
  Json entries = Json::array();
  for (const AppendixEntry& e : r.entries) {
    Json entry;
    entry["name"] = e.name;
    entry["cnots"] = e.cnots;
    entry["rotations"] = e.rotations;
    Json dist = Json::array();
    for (size_t id = 0; id < e.distances.size(); ++id)
      dist.push_back({{"convention", RotationConvention::by_id(int(id)).name()},
                      {"distance", e.distances[id]}});
    entry["distances"] = dist;
    entry["self_check_distance"] = e.self_check_distance;
    entries.push_back(entry);
  }
  j["gate_lists"] = entries;
  return j;
}

}  // namespace szn
