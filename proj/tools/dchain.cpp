// Command-line front end for the dressed-chain simulator.
//
// Exit codes: 0 success, 1 invalid input (experiment file, parameters,
// missing files), 2 numeric failure during integration.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dchain/config.hpp"
#include "dchain/device_map.hpp"
#include "dchain/harness.hpp"
#include "dchain/plots.hpp"
#include "dchain/spectrum.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dchain::ConfigError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_simulate(const std::string& config_path, std::string out_dir, int threads) {
  const std::string text = slurp(config_path);
  std::istringstream in(text);
  const dchain::ExperimentConfig cfg = dchain::load_config(in, config_path);
  if (out_dir.empty()) out_dir = (std::filesystem::path("runs") / cfg.label).string();

  std::cout << "running '" << cfg.label << "' -> " << out_dir << "\n";
  const dchain::RunResult res = dchain::run_experiment(cfg, out_dir, threads, text);
  print_warnings(res.warnings);

  const auto& s = res.summary;
  std::cout << "  steps: " << s.n_steps << " (dt = " << s.dt << ", t_final = " << s.t_final
            << "), samples: " << s.n_samples << "\n";
  std::cout << "  wall: " << s.wall_seconds << " s, residual <= " << s.max_residual
            << ", norm drift <= " << s.max_norm_drift << "\n";
  for (const auto& [name, sha] : res.artifacts)
    std::cout << "  " << name << "  sha1 " << sha << "\n";
  std::cout << "  run hash " << res.run_hash << "\n";
  return 0;
}

int cmd_validate(const std::string& config_path) {
  const dchain::ExperimentConfig cfg = dchain::load_config_file(config_path);
  // Exercises the preparation path too, so prep-level complaints surface now
  // rather than at simulation time.
  const dchain::StateVector state = dchain::build_initial_state(cfg);
  print_warnings(dchain::config_warnings(cfg));
  std::cout << "ok: '" << cfg.label << "' (" << cfg.chain.n_sites << " sites, n_max = "
            << cfg.chain.n_max << ", state dim = " << state.a.size() + state.b.size()
            << ")\n";
  for (const auto& claim : cfg.claims) std::cout << "  claim: " << claim << "\n";
  return 0;
}

int cmd_spectrum(const std::string& csv_path, const std::string& column,
                 const std::string& out, int top) {
  const dchain::CsvTable table = dchain::read_csv(csv_path);
  std::vector<double> t = table.column("time");
  std::vector<double> x = table.column(column);
  // The sampler emits a short final chunk when the stride does not divide the
  // step count; drop trailing samples until the grid is uniform.
  size_t dropped = 0;
  while (t.size() > 2 && std::abs((t[t.size() - 1] - t[t.size() - 2]) - (t[1] - t[0])) >
                             1e-6 * (t[1] - t[0])) {
    t.pop_back();
    x.pop_back();
    ++dropped;
  }
  const dchain::Spectrum spec = dchain::amplitude_spectrum(t, x);

  std::cout << "column '" << column << "': " << t.size() << " samples, dt = " << spec.dt
            << ", bin = " << spec.domega << "\n";
  if (dropped > 0)
    std::cout << "(dropped " << dropped << " trailing sample(s) to keep the grid uniform)\n";
  const auto peaks = dchain::find_peaks(spec);
  if (peaks.empty()) {
    std::cout << "no peaks above 10x the median bin amplitude\n";
  } else {
    std::cout << "peaks (strongest first):\n";
    const int limit = std::min<int>(top, static_cast<int>(peaks.size()));
    for (int i = 0; i < limit; ++i)
      std::cout << "  omega = " << peaks[i].omega_refined << " (bin " << peaks[i].bin
                << " at " << peaks[i].omega << "), amplitude = " << peaks[i].amplitude << "\n";
  }
  if (!out.empty()) {
    dchain::HashedFile f(out);
    f.write("omega,amplitude\n");
    for (size_t k = 0; k < spec.omega.size(); ++k)
      f.write(dchain::sci(spec.omega[k]) + "," + dchain::sci(spec.amplitude[k]) + "\n");
    f.close();
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_plot(const std::string& dir) {
  for (const auto& path : dchain::write_plot_scripts(dir)) std::cout << "wrote " << path << "\n";
  std::cout << "render with: python3 " << dir << "/plot_scalars.py\n";
  return 0;
}

int cmd_device(const std::string& kind, const std::string& params_path) {
  const std::string text = slurp(params_path);
  std::istringstream in(text);
  dchain::detail::KvReader r = dchain::detail::read_kv(in, params_path);

  dchain::ChainScales scales;
  dchain::DeviceReport report;
  if (kind == "josephson") {
    dchain::JosephsonParams jp;
    jp.e_j_ghz = r.num("e_j_ghz", jp.e_j_ghz);
    jp.e_c_ghz = r.num("e_c_ghz", jp.e_c_ghz);
    jp.l1_nh = r.num("l1_nh", jp.l1_nh);
    jp.l2_nh = r.num("l2_nh", jp.l2_nh);
    jp.l_r_nh = r.num("l_r_nh", jp.l_r_nh);
    jp.z_r_ohm = r.num("z_r_ohm", jp.z_r_ohm);
    jp.phi_eg = r.num("phi_eg", jp.phi_eg);
    for (const auto& e : r.entries)
      if (!e.used) r.fail(e.line, "unknown key '" + e.key + "'");
    if (!r.errs.empty()) {
      std::string msg = params_path + ": invalid parameter file:";
      for (const auto& e : r.errs) msg += "\n  - " + e;
      throw dchain::ConfigError(msg);
    }
    std::tie(scales, report) = dchain::josephson_to_chain(jp);
  } else {
    dchain::HeterostructureParams hp;
    hp.f0_thz = r.num("f0_thz", hp.f0_thz);
    hp.dipole_e_nm = r.num("dipole_e_nm", hp.dipole_e_nm);
    hp.drive_kv_cm = r.num("drive_kv_cm", hp.drive_kv_cm);
    hp.e_dc_kv_cm = r.num("e_dc_kv_cm", hp.e_dc_kv_cm);
    hp.period_nm = r.num("period_nm", hp.period_nm);
    hp.mean_photons = r.num("mean_photons", hp.mean_photons);
    hp.coherence_time_fs = r.num("coherence_time_fs", hp.coherence_time_fs);
    hp.t_a_mev = r.num("t_a_mev", hp.t_a_mev);
    hp.t_b_mev = r.num("t_b_mev", hp.t_b_mev);
    for (const auto& e : r.entries)
      if (!e.used) r.fail(e.line, "unknown key '" + e.key + "'");
    if (!r.errs.empty()) {
      std::string msg = params_path + ": invalid parameter file:";
      for (const auto& e : r.errs) msg += "\n  - " + e;
      throw dchain::ConfigError(msg);
    }
    std::tie(scales, report) = dchain::heterostructure_to_chain(hp);
  }

  std::cout << report.text();
  std::cout << "experiment-file fragment (energies in units of the transition):\n";
  std::cout << "  chain.t_a = " << dchain::sci(scales.t_a) << "\n";
  std::cout << "  chain.t_b = " << dchain::sci(scales.t_b) << "\n";
  std::cout << "  chain.g = " << dchain::sci(scales.g) << "\n";
  std::cout << "  chain.omega_b = " << dchain::sci(scales.omega_b) << "\n";
  std::cout << "  # energy unit: omega_0/2pi = " << scales.omega0_ghz << " GHz\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dressed two-band chain simulator"};
  app.require_subcommand(1);

  std::string sim_config, sim_out;
  int sim_threads = 1;
  CLI::App* sim = app.add_subcommand("simulate", "integrate an experiment file");
  sim->add_option("config", sim_config, "experiment file")->required();
  sim->add_option("--out", sim_out, "output directory (default: runs/<label>)");
  sim->add_option("--threads", sim_threads, "worker threads across sectors (default 1)");

  std::string val_config;
  CLI::App* val = app.add_subcommand("validate", "check an experiment file, reporting every problem");
  val->add_option("config", val_config, "experiment file")->required();

  std::string spec_csv, spec_column = "mean_n", spec_out;
  int spec_top = 8;
  CLI::App* spec = app.add_subcommand("spectrum", "amplitude spectrum of a frames.csv column");
  spec->add_option("frames", spec_csv, "frames.csv from a run directory")->required();
  spec->add_option("--column", spec_column, "column name (default mean_n)");
  spec->add_option("--out", spec_out, "also write the full spectrum as CSV");
  spec->add_option("--top", spec_top, "number of peaks to print");

  std::string plot_dir;
  CLI::App* plot = app.add_subcommand("plot", "drop matplotlib scripts into a run directory");
  plot->add_option("dir", plot_dir, "run directory")->required();

  std::string dev_kind, dev_file;
  CLI::App* dev = app.add_subcommand("device", "map laboratory parameters onto the model");
  dev->add_option("kind", dev_kind, "josephson | heterostructure")
      ->required()
      ->check(CLI::IsMember({"josephson", "heterostructure"}));
  dev->add_option("params", dev_file, "key = value parameter file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim_config, sim_out, sim_threads);
    if (val->parsed()) return cmd_validate(val_config);
    if (spec->parsed()) return cmd_spectrum(spec_csv, spec_column, spec_out, spec_top);
    if (plot->parsed()) return cmd_plot(plot_dir);
    if (dev->parsed()) return cmd_device(dev_kind, dev_file);
  } catch (const dchain::numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
