#include "szn/report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace szn;

struct CliState {
  RunConfig config;
  std::string config_file;
  std::string kraus_file;
  std::string chi_file;
  std::string unitaries_file;
  std::string record_file;
  std::string qpt_method = "cptp";
};

void add_common_options(CLI::App* cmd, CliState& st) {
  cmd->add_option("--config", st.config_file, "RunConfig JSON file");
  cmd->add_option("--seed", st.config.seed, "RNG seed");
  cmd->add_option("--out", st.config.out_dir, "output directory");
  cmd->add_option("--noise-sigma", st.config.noise_sigma,
                  "measurement noise std (0 = exact)");
  cmd->add_flag("--renormalize", st.config.renormalize_kraus,
                "project experimental Kraus data onto a complete set");
  cmd->add_option("--convention", st.config.convention_id,
                  "rotation convention id 0..3")
      ->check(CLI::Range(0, 3));
  cmd->add_option("--gamma1", st.config.dephasing.gamma1, "qubit-1 dephasing rate");
  cmd->add_option("--gamma2", st.config.dephasing.gamma2, "qubit-2 dephasing rate");
  cmd->add_option("--time", st.config.dephasing.t, "evolution time");
}

// Values from --config are the base; explicit flags win.
void apply_config_file(CLI::App* cmd, CliState& st) {
  if (st.config_file.empty()) return;
  RunConfig file_config = config_from_json(read_json_file(st.config_file));
  if (!cmd->count("--seed")) st.config.seed = file_config.seed;
  if (!cmd->count("--out")) st.config.out_dir = file_config.out_dir;
  if (!cmd->count("--noise-sigma")) st.config.noise_sigma = file_config.noise_sigma;
  if (!cmd->count("--renormalize"))
    st.config.renormalize_kraus = file_config.renormalize_kraus;
  if (!cmd->count("--convention")) st.config.convention_id = file_config.convention_id;
  if (!cmd->count("--gamma1")) st.config.dephasing.gamma1 = file_config.dephasing.gamma1;
  if (!cmd->count("--gamma2")) st.config.dephasing.gamma2 = file_config.dephasing.gamma2;
  if (!cmd->count("--time")) st.config.dephasing.t = file_config.dephasing.t;
}

std::filesystem::path out_dir(const CliState& st) {
  std::filesystem::create_directories(st.config.out_dir);
  return st.config.out_dir;
}

int cmd_gen_channel(CLI::App* cmd, CliState& st) {
  apply_config_file(cmd, st);
  const GeneratedChannel channel = generate_dephasing_channel(st.config.dephasing);
  write_json_file(out_dir(st) / "superop.json", superop_to_json(channel.propagator));
  write_json_file(out_dir(st) / "chi.json", chi_to_json(channel.chi));
  write_json_file(out_dir(st) / "kraus.json", kraus_to_json(channel.kraus));
  std::cout << "wrote superop.json, chi.json, kraus.json to " << st.config.out_dir
            << " (" << channel.kraus.operators.size() << " Kraus operators)\n";
  return 0;
}

int cmd_kraus(CLI::App* cmd, CliState& st) {
  apply_config_file(cmd, st);
  const ChiMatrix chi = chi_from_json(read_json_file(st.chi_file));
  const KrausSet kraus = chi_to_kraus(chi);
  write_json_file(out_dir(st) / "kraus.json", kraus_to_json(kraus));
  std::cout << "extracted " << kraus.operators.size() << " Kraus operators, defect "
            << kraus.completeness_defect << "\n";
  return 0;
}

KrausSet load_kraus(CliState& st, bool default_mfgp = false) {
  std::filesystem::path path = st.kraus_file;
  if (path.empty()) {
    if (!default_mfgp) throw IoError("no --kraus file given");
    path = data_dir() / "kraus_mfgp_published.json";
  }
  KrausSet set = kraus_from_json(read_json_file(path));
  if (st.config.renormalize_kraus) set = renormalize(set);
  return set;
}

int cmd_dilate(CLI::App* cmd, CliState& st) {
  apply_config_file(cmd, st);
  const KrausSet set = load_kraus(st);
  std::vector<CMatrix> us;
  for (const CMatrix& a : set.operators) us.push_back(dilate(a).matrix);
  write_json_file(out_dir(st) / "unitaries.json", unitaries_to_json(us));
  std::cout << "wrote " << us.size() << " dilation unitaries\n";
  return 0;
}

int cmd_decompose(CLI::App* cmd, CliState& st) {
  apply_config_file(cmd, st);
  const std::vector<CMatrix> us =
      unitaries_from_json(read_json_file(st.unitaries_file));
  for (size_t i = 0; i < us.size(); ++i) {
    const Circuit circuit = decompose_unitary(us[i]);
    const std::string name = "u" + std::to_string(i + 1) + ".gates.txt";
    write_text_file(out_dir(st) / name, serialize_gate_list(circuit));
    std::cout << name << ": " << circuit.cnot_count() << " CNOTs, "
              << circuit.rotation_count() << " rotations, distance "
              << phase_distance(circuit_unitary(circuit), us[i]) << "\n";
  }
  return 0;
}

int cmd_simulate(CLI::App* cmd, CliState& st) {
  apply_config_file(cmd, st);
  const KrausSet set = load_kraus(st, true);
  const double completeness =
      set.complete() ? default_tol().completeness : default_tol().completeness_loose;
  TomographyRecord rec = record_from_channel(
      [&](const CMatrix& rho) {
        return simulate_channel_via_dilation(set, DensityMatrix(rho), completeness).matrix;
      },
      st.config.noise_sigma > 0 ? std::optional<double>(st.config.noise_sigma)
                                : std::nullopt,
      st.config.noise_sigma > 0 ? std::optional<std::uint64_t>(st.config.seed)
                                : std::nullopt);
  write_json_file(out_dir(st) / "record.json", record_to_json(rec));
  std::cout << "wrote record.json (16 input/output pairs)\n";
  return 0;
}

int cmd_qpt(CLI::App* cmd, CliState& st) {
  apply_config_file(cmd, st);
  const TomographyRecord rec = record_from_json(read_json_file(st.record_file));
  const ChiMatrix chi = st.qpt_method == "linear" ? linear_inversion_qpt(rec)
                                                  : cptp_project_qpt(rec);
  write_json_file(out_dir(st) / "chi.json", chi_to_json(chi));
  std::cout << "wrote chi.json (method: " << st.qpt_method << ")\n";
  return 0;
}

void print_report_summary(const ExperimentReport& rep) {
  std::cout << rep.experiment << ": process fidelity " << rep.process_fidelity_value
            << "\n";
  for (const GateCountRow& g : rep.gate_counts)
    std::cout << "  U_A" << g.kraus_index + 1 << ": " << g.cnots << " CNOTs, "
              << g.rotations << " rotations\n";
  double lo = 1.0;
  for (double f : rep.per_state_fidelities) lo = std::min(lo, f);
  std::cout << "  min per-state fidelity " << lo << "\n";
}

int cmd_reproduce_pd(CLI::App* cmd, CliState& st) {
  apply_config_file(cmd, st);
  const ExperimentReport rep = run_phase_damping(st.config);
  emit_report(rep, out_dir(st));
  print_report_summary(rep);
  return 0;
}

int cmd_reproduce_mfgp(CLI::App* cmd, CliState& st) {
  apply_config_file(cmd, st);
  std::filesystem::path path = st.kraus_file.empty()
                                   ? data_dir() / "kraus_mfgp_published.json"
                                   : std::filesystem::path(st.kraus_file);
  const KrausSet verbatim = kraus_from_json(read_json_file(path));
  const ExperimentReport rep = run_mfgp(st.config, verbatim);
  emit_report(rep, out_dir(st));
  print_report_summary(rep);
  return 0;
}

int cmd_verify_appendix(CLI::App* cmd, CliState& st) {
  apply_config_file(cmd, st);
  const AppendixReport rep = verify_appendix();
  write_json_file(out_dir(st) / "appendix_report.json", appendix_report_to_json(rep));
  std::cout << "gate list          CNOTs  rot   best distance (convention)    self-check\n";
  for (const AppendixEntry& e : rep.entries) {
    size_t best = 0;
    for (size_t i = 1; i < e.distances.size(); ++i)
      if (e.distances[i] < e.distances[best]) best = i;
    std::printf("%-18s %5d %4d   %.3e (%s)   %.3e\n", e.name.c_str(), e.cnots,
                e.rotations, e.distances[best],
                RotationConvention::by_id(int(best)).name().c_str(),
                e.self_check_distance);
  }
  std::printf("theta1 consistency |0.3737*pi/2 - 0.5870| = %.2e\n",
              rep.theta1_consistency);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulate open-quantum-system dynamics via Sz.-Nagy unitary dilations"};
  app.require_subcommand(1);
  CliState st;

  CLI::App* gen = app.add_subcommand("gen-channel", "write the dephasing channel files");
  CLI::App* kraus = app.add_subcommand("kraus", "extract Kraus operators from a chi file");
  kraus->add_option("--chi", st.chi_file, "chi JSON file")->required();
  CLI::App* dil = app.add_subcommand("dilate", "dilate a Kraus file into 8x8 unitaries");
  dil->add_option("--kraus", st.kraus_file, "Kraus JSON file")->required();
  CLI::App* dec = app.add_subcommand("decompose", "compile unitaries into gate lists");
  dec->add_option("--unitaries", st.unitaries_file, "unitaries JSON file")->required();
  CLI::App* sim = app.add_subcommand("simulate",
                                     "simulate a Kraus channel on the 16-state basis");
  sim->add_option("--kraus", st.kraus_file, "Kraus JSON file (default: bundled MFGP set)");
  CLI::App* qpt = app.add_subcommand("qpt", "estimate chi from a tomography record");
  qpt->add_option("--record", st.record_file, "TomographyRecord JSON file")->required();
  qpt->add_option("--method", st.qpt_method, "linear | cptp")
      ->check(CLI::IsMember({"linear", "cptp"}));

  CLI::App* rep = app.add_subcommand("reproduce", "run a full desk-scale experiment");
  rep->require_subcommand(1);
  CLI::App* rep_pd = rep->add_subcommand("phase-damping", "dephasing channel pipeline");
  CLI::App* rep_mfgp = rep->add_subcommand("mfgp", "gradient-pulse Kraus file pipeline");
  rep_mfgp->add_option("--kraus", st.kraus_file,
                       "Kraus JSON file (default: bundled published set)");

  CLI::App* verify = app.add_subcommand("verify-appendix",
                                        "check published gate lists against dilations");

  for (CLI::App* cmd : {gen, kraus, dil, dec, sim, qpt, rep_pd, rep_mfgp, verify})
    add_common_options(cmd, st);

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen_channel(gen, st);
    if (kraus->parsed()) return cmd_kraus(kraus, st);
    if (dil->parsed()) return cmd_dilate(dil, st);
    if (dec->parsed()) return cmd_decompose(dec, st);
    if (sim->parsed()) return cmd_simulate(sim, st);
    if (qpt->parsed()) return cmd_qpt(qpt, st);
    if (rep_pd->parsed()) return cmd_reproduce_pd(rep_pd, st);
    if (rep_mfgp->parsed()) return cmd_reproduce_mfgp(rep_mfgp, st);
    if (verify->parsed()) return cmd_verify_appendix(verify, st);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const szn::NoConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const szn::SingularSystem& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const szn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
