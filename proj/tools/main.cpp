// qdipole: command line front end. A config file supplies the base settings,
// every config key can be overridden as --key value.
#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "commands.hpp"
#include "qdipole/config.hpp"
#include "qdipole/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Non-Markovian dynamics of two-level atoms in a common field"};
  app.set_version_flag("--version", QDIPOLE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("-c,--config", config_path, "key = value config file")->check(CLI::ExistingFile);

  std::map<std::string, std::vector<std::string>> overrides;
  for (const auto& key : qd::config_keys()) {
    std::string names = "--" + key;
    if (key.find('_') != std::string::npos) {
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      names += ",--" + dashed;
    }
    if (key == "temperature") names += ",--temp";
    auto* opt = app.add_option(names, overrides[key], "config key " + key)->group("Config overrides");
    if (key == "atom")
      opt->take_all();
    else
      opt->take_last();
  }

  qdtool::CommandFlags flags;
  std::string n_arg;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : qdtool::command_names()) subs[name] = app.add_subcommand(name);
  subs["coefficients"]->description("A_nm(+-Omega_m) table; --fulltime adds A(w; t) on the t grid");
  subs["coefficients"]->add_flag("--fulltime", flags.fulltime, "add finite-time rows");
  subs["rates"]->description("Liouvillian eigen-frequencies, optionally swept");
  subs["rates"]->add_flag("--perturbative", flags.perturbative, "canonical perturbation theory");
  subs["dynamics"]->description("rho(t), pair concurrence and conservation checks");
  subs["dark-states"]->description("dark-state counts, bases and numeric null space");
  subs["dark-states"]->add_option("--n", n_arg, "number of atoms");
  subs["asymptotic"]->description("second-order asymptotic state");
  subs["asymptotic"]->add_flag("--nullspace", flags.nullspace, "null eigen-operator of L instead");
  subs["ent-map"]->description("uC of the asymptotic state over separation x detuning");
  subs["superradiance"]->description("max decay rate vs number of atoms");
  subs["superradiance"]->add_option("--n", n_arg, "atom counts, e.g. 2..6");

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    qd::RunConfig cfg = config_path.empty() ? qd::RunConfig{} : qd::parse_config_file(config_path);
    if (!overrides["atom"].empty()) cfg.atoms.clear();
    for (const auto& key : qd::config_keys())
      for (const auto& v : overrides[key]) qd::apply_setting(cfg, key, v, "--" + key);
    if (!n_arg.empty()) {
      if (cmd == "superradiance") {
        qd::apply_setting(cfg, "n_list", n_arg, "--n");
      } else {
        qd::apply_setting(cfg, "n_atoms", n_arg, "--n");
        if (cfg.geometry == "pair" && cfg.n_atoms != 2) cfg.geometry = "ring";
      }
    }

    std::ofstream file;
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) throw qd::ValidationError("cannot open output file '" + cfg.output + "'");
    }
    std::ostream& out = cfg.output.empty() ? std::cout : file;
    qdtool::run_command(cmd, cfg, flags, out, std::cout);
    out.flush();
    if (!out) throw qd::Error("write failed");
  } catch (const qd::Error& e) {
    std::cerr << "qdipole " << cmd << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qdipole " << cmd << ": unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
