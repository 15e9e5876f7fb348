#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qdipole/coefficients.hpp"
#include "qdipole/kernels.hpp"

namespace qd {

// All frequencies, temperatures and lengths are in units of omega_ref
// (lengths in 1/omega_ref). The model is scale covariant, so the numbers are
// used as given and every output is in the same units.
struct SweepSpec {
  std::string variable;  // r, detuning, temperature, gamma0, cutoff; empty = no sweep
  double min = 0, max = 0;
  std::size_t points = 1;
  bool log = true;

  bool active() const { return !variable.empty(); }
  std::vector<double> values() const;
};

struct RunConfig {
  double omega_ref = 1.0;
  FieldSpec field;
  CoefficientOptions coeff;

  // atoms: explicit `atom =` lines, or a generated geometry
  std::string geometry = "pair";  // explicit | pair | ring | simplex
  std::vector<Atom> atoms;
  std::size_t n_atoms = 2;
  double separation = 1.0;
  double omega = 1.0;
  double detuning = 0.0;

  SweepSpec sweep;
  SweepSpec sweep2;  // second axis (ent-map detuning)
  std::string output;  // empty -> stdout

  std::string state = "bell_minus";
  double t_max = 100.0;
  std::size_t t_points = 201;
  std::size_t pair_n = 0, pair_m = 1;
  double kappa = 10.0;
  double null_tol = 0.0;  // 0 -> kNullTolGamma * gamma
  std::vector<std::size_t> n_list{2, 3, 4, 5, 6};
  bool experimental_cinterpolate = false;

  AtomArray atom_array() const;
  // copy with one sweep variable set
  RunConfig with(const std::string& variable, double value) const;
  // every resolved key, in a fixed order, for provenance headers
  std::vector<std::pair<std::string, std::string>> resolved() const;
  // throws ValidationError
  void validate() const;
};

const std::vector<std::string>& config_keys();

// `key = value` lines, '#' comments, repeated `atom = omega,x,y,z[,dx,dy,dz]`.
// Unknown keys and malformed lines throw ValidationError naming key and line.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig parse_config_file(const std::string& path);
// one setting, as from a config line or a --key flag (line 0 = command line)
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value,
                   const std::string& where = "command line");

}  // namespace qd
