// Command line driver: parameter sweeps and field dumps.
//
//   mmv2v run --config cfg.txt --sweep lt --values 60,80,100
//             --modes analytic,simulated --out results/fig3 --seed 7 --workers 4
//   mmv2v field --config cfg.txt --seed 7 --out field.csv
//   mmv2v constants --config cfg.txt

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mmv2v/mmv2v.hpp"

namespace {

mmv2v::LoadedConfig load(const std::string& path) {
  if (path.empty()) return mmv2v::parse_config("");
  return mmv2v::load_config(path);
}

int run_sweep_command(const std::string& config_path, const std::string& sweep, const std::string& values,
                      const std::string& modes, const std::string& out_prefix, std::optional<std::uint64_t> seed,
                      std::optional<long> replications, unsigned workers) {
  auto loaded = load(config_path);
  mmv2v::SweepSpec spec;
  spec.variable = mmv2v::parse_sweep_variable(sweep);
  spec.values = mmv2v::parse_values(values);
  spec.modes = mmv2v::parse_modes(modes);
  spec.base = loaded.config;
  spec.quad = loaded.quad;
  if (seed) spec.base.seed = *seed;
  if (replications) spec.base.replications = *replications;

  const auto result = mmv2v::run_sweep(spec, workers, loaded.explicit_keys);
  mmv2v::emit(result, mmv2v::OutputFormat::kCsv, out_prefix + ".csv");
  mmv2v::emit(result, mmv2v::OutputFormat::kSvg, out_prefix + ".svg");
  std::cout << mmv2v::to_csv(result);
  return 0;
}

int field_command(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& out) {
  auto cfg = load(config_path).config;
  if (seed) cfg.seed = *seed;
  const auto field = mmv2v::make_field(cfg, mmv2v::derive_seed(mmv2v::derive_seed(cfg.seed, 0), 0));
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw mmv2v::IoError("cannot open '" + out + "' for writing");
  f << mmv2v::field_to_csv(field);
  if (!f.flush()) throw mmv2v::IoError("failed writing '" + out + "'");
  std::cout << field.size() << " vehicles written to " << out << "\n";
  return 0;
}

int constants_command(const std::string& config_path) {
  const auto cfg = load(config_path).config;
  const auto& b = cfg.budget;
  std::printf("link margin M        %.6f dB\n", mmv2v::link_margin_db(b));
  std::printf("alignment delay tau  %.6g s\n", mmv2v::alignment_delay(b.antenna, b.t_p));
  std::printf("data fraction        %.6g\n", mmv2v::data_fraction(b));
  std::printf("hop count k          %.6f\n", mmv2v::hop_count(cfg.r_valid, cfg.lt));
  std::printf("mean headway         %.6g m\n", cfg.headway.mean());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay and reliability of random-relay mmWave multi-hop V2V links on a Manhattan grid"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Sweep one parameter and write <out>.csv and <out>.svg");
  std::string sweep, values, modes = "analytic", out;
  std::optional<long> replications;
  unsigned workers = 1;
  run->add_option("--config", config_path, "key = value config file (defaults apply when omitted)");
  run->add_option("--sweep", sweep, "lt, alpha, d_safe or epsilon")->required();
  run->add_option("--values", values, "comma separated, strictly increasing")->required();
  run->add_option("--modes", modes, "analytic, simulated or analytic,simulated");
  run->add_option("--out", out, "output prefix")->required();
  run->add_option("--seed", seed, "base seed (overrides the config)");
  run->add_option("--replications", replications, "Monte Carlo replications per sweep point");
  run->add_option("--workers", workers, "sweep points evaluated in parallel")->check(CLI::PositiveNumber);

  auto* field = app.add_subcommand("field", "Write one replication's vehicle field as road_id,x,y CSV");
  std::string field_out;
  field->add_option("--config", config_path);
  field->add_option("--seed", seed);
  field->add_option("--out", field_out)->required();

  auto* constants = app.add_subcommand("constants", "Print derived link constants for a config");
  constants->add_option("--config", config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(mmv2v::ExitCode::kConfig);
  }

  try {
    if (*run) return run_sweep_command(config_path, sweep, values, modes, out, seed, replications, workers);
    if (*field) return field_command(config_path, seed, field_out);
    if (*constants) return constants_command(config_path);
  } catch (const mmv2v::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  }
  return 0;
}
