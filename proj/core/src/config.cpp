#include "qdipole/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "qdipole/csv.hpp"
#include "qdipole/error.hpp"

namespace qd {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(trim(item));
  return out;
}

struct BadValue {
  std::string why;
};

double to_double(const std::string& s) {
  double v = 0;
  const auto t = trim(s);
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size()) throw BadValue{"expected a number, got '" + s + "'"};
  return v;
}

std::size_t to_size(const std::string& s) {
  const double v = to_double(s);
  if (v < 0 || v != std::floor(v)) throw BadValue{"expected a non-negative integer, got '" + s + "'"};
  return std::size_t(v);
}

bool to_bool(const std::string& s) {
  std::string t = trim(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw BadValue{"expected a boolean, got '" + s + "'"};
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

Atom parse_atom(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4 && parts.size() != 7)
    throw BadValue{"atom needs omega,x,y,z or omega,x,y,z,dx,dy,dz"};
  Atom a;
  a.omega = to_double(parts[0]);
  a.position = {to_double(parts[1]), to_double(parts[2]), to_double(parts[3])};
  if (parts.size() == 7) {
    Eigen::Vector3d d(to_double(parts[4]), to_double(parts[5]), to_double(parts[6]));
    if (d.norm() == 0) throw BadValue{"dipole direction is zero"};
    a.dipole = d.normalized();
  }
  return a;
}

std::vector<std::size_t> parse_n_list(const std::string& s) {
  std::vector<std::size_t> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const std::size_t a = to_size(s.substr(0, dots)), b = to_size(s.substr(dots + 2));
    if (a > b) throw BadValue{"empty range '" + s + "'"};
    for (std::size_t n = a; n <= b; ++n) out.push_back(n);
  } else {
    for (const auto& p : split(s, ',')) out.push_back(to_size(p));
  }
  if (out.empty()) throw BadValue{"empty list"};
  return out;
}

bool parse_scale(const std::string& s) {
  if (trim(s) == "log") return true;
  if (trim(s) == "lin") return false;
  throw BadValue{"expected log or lin, got '" + s + "'"};
}

std::optional<Branch> parse_branch(const std::string& s) {
  const auto t = trim(s);
  if (t == "auto") return std::nullopt;
  if (t == "zeroT") return Branch::ZeroT;
  if (t == "lerch") return Branch::FiniteTLerch;
  if (t == "lowT") return Branch::LowTExpansion;
  throw BadValue{"expected auto, zeroT, lerch or lowT, got '" + s + "'"};
}

std::string sweep_variable(const std::string& s) {
  const auto t = trim(s);
  if (t == "none") return {};
  if (t != "r" && t != "detuning" && t != "temperature" && t != "gamma0" && t != "cutoff")
    throw BadValue{"expected r, detuning, temperature, gamma0, cutoff or none, got '" + t + "'"};
  return t;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"omega_ref", [](RunConfig& c, const std::string& v) { c.omega_ref = to_double(v); }},
      {"field",
       [](RunConfig& c, const std::string& v) {
         const auto t = trim(v);
         if (t == "scalar")
           c.field.kind = FieldKind::Scalar;
         else if (t == "electromagnetic")
           c.field.kind = FieldKind::Electromagnetic;
         else
           throw BadValue{"expected scalar or electromagnetic, got '" + v + "'"};
       }},
      {"temperature", [](RunConfig& c, const std::string& v) { c.field.temperature = to_double(v); }},
      {"gamma0", [](RunConfig& c, const std::string& v) { c.field.gamma0 = to_double(v); }},
      {"cutoff", [](RunConfig& c, const std::string& v) { c.field.cutoff = to_double(v); }},
      {"renormalize", [](RunConfig& c, const std::string& v) { c.coeff.renormalize = to_bool(v); }},
      {"magnetostatics", [](RunConfig& c, const std::string& v) { c.coeff.magnetostatics = to_bool(v); }},
      {"branch", [](RunConfig& c, const std::string& v) { c.coeff.branch = parse_branch(v); }},
      {"lowt_kmax", [](RunConfig& c, const std::string& v) { c.coeff.lowt_kmax = int(to_size(v)); }},
      {"geometry",
       [](RunConfig& c, const std::string& v) {
         const auto t = trim(v);
         if (t != "explicit" && t != "pair" && t != "ring" && t != "simplex")
           throw BadValue{"expected explicit, pair, ring or simplex, got '" + v + "'"};
         c.geometry = t;
       }},
      {"atom",
       [](RunConfig& c, const std::string& v) {
         c.atoms.push_back(parse_atom(v));
         c.geometry = "explicit";
       }},
      {"n_atoms", [](RunConfig& c, const std::string& v) { c.n_atoms = to_size(v); }},
      {"separation", [](RunConfig& c, const std::string& v) { c.separation = to_double(v); }},
      {"omega", [](RunConfig& c, const std::string& v) { c.omega = to_double(v); }},
      {"detuning", [](RunConfig& c, const std::string& v) { c.detuning = to_double(v); }},
      {"sweep", [](RunConfig& c, const std::string& v) { c.sweep.variable = sweep_variable(v); }},
      {"sweep_min", [](RunConfig& c, const std::string& v) { c.sweep.min = to_double(v); }},
      {"sweep_max", [](RunConfig& c, const std::string& v) { c.sweep.max = to_double(v); }},
      {"sweep_points", [](RunConfig& c, const std::string& v) { c.sweep.points = to_size(v); }},
      {"sweep_scale", [](RunConfig& c, const std::string& v) { c.sweep.log = parse_scale(v); }},
      {"sweep2", [](RunConfig& c, const std::string& v) { c.sweep2.variable = sweep_variable(v); }},
      {"sweep2_min", [](RunConfig& c, const std::string& v) { c.sweep2.min = to_double(v); }},
      {"sweep2_max", [](RunConfig& c, const std::string& v) { c.sweep2.max = to_double(v); }},
      {"sweep2_points", [](RunConfig& c, const std::string& v) { c.sweep2.points = to_size(v); }},
      {"sweep2_scale", [](RunConfig& c, const std::string& v) { c.sweep2.log = parse_scale(v); }},
      {"output", [](RunConfig& c, const std::string& v) { c.output = trim(v); }},
      {"state", [](RunConfig& c, const std::string& v) { c.state = trim(v); }},
      {"t_max", [](RunConfig& c, const std::string& v) { c.t_max = to_double(v); }},
      {"t_points", [](RunConfig& c, const std::string& v) { c.t_points = to_size(v); }},
      {"pair",
       [](RunConfig& c, const std::string& v) {
         const auto p = split(v, ',');
         if (p.size() != 2) throw BadValue{"expected n,m"};
         c.pair_n = to_size(p[0]);
         c.pair_m = to_size(p[1]);
       }},
      {"kappa", [](RunConfig& c, const std::string& v) { c.kappa = to_double(v); }},
      {"null_tol", [](RunConfig& c, const std::string& v) { c.null_tol = trim(v) == "auto" ? 0.0 : to_double(v); }},
      {"n_list", [](RunConfig& c, const std::string& v) { c.n_list = parse_n_list(v); }},
      {"experimental_cinterpolate",
       [](RunConfig& c, const std::string& v) { c.experimental_cinterpolate = to_bool(v); }},
  };
  return table;
}

const Setter* find_setter(const std::string& key) {
  for (const auto& [k, s] : setters())
    if (k == key) return &s;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, s] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

std::vector<double> SweepSpec::values() const {
  if (!active()) return {};
  if (points == 0) throw ValidationError("sweep '" + variable + "' needs at least one point");
  if (log && !(min > 0 && max > 0)) throw ValidationError("log sweep '" + variable + "' needs positive bounds");
  std::vector<double> v(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double s = points == 1 ? 0.0 : double(k) / double(points - 1);
    v[k] = log ? std::exp(std::log(min) + s * (std::log(max) - std::log(min))) : min + s * (max - min);
  }
  return v;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where) {
  const Setter* s = find_setter(key);
  if (!s) throw ValidationError("unknown key '" + key + "' (" + where + ")");
  try {
    (*s)(cfg, value);
  } catch (const BadValue& e) {
    throw ValidationError("invalid value for key '" + key + "' (" + where + "): " + e.why);
  }
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg;
  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("malformed line (" + where + "): expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ValidationError("malformed line (" + where + "): missing key");
    apply_setting(cfg, key, trim(line.substr(eq + 1)), where);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

AtomArray RunConfig::atom_array() const {
  if (geometry == "explicit") {
    if (atoms.empty()) throw ValidationError("geometry = explicit but no atom lines");
    return AtomArray(atoms);
  }
  if (geometry == "pair") return pair_array(separation, omega, detuning);
  if (geometry == "ring") return ring_array(n_atoms, separation, omega);
  return simplex_array(n_atoms, separation, omega);
}

RunConfig RunConfig::with(const std::string& variable, double value) const {
  RunConfig c = *this;
  if (variable == "r") {
    c.separation = value;
    if (geometry == "explicit") throw ValidationError("cannot sweep r with explicit atom positions");
  } else if (variable == "detuning") {
    c.detuning = value;
    if (geometry != "pair") throw ValidationError("detuning sweeps need geometry = pair");
  } else if (variable == "temperature") {
    c.field.temperature = value;
  } else if (variable == "gamma0") {
    c.field.gamma0 = value;
  } else if (variable == "cutoff") {
    c.field.cutoff = value;
  } else {
    throw ValidationError("unknown sweep variable '" + variable + "' (r, detuning, temperature, gamma0, cutoff)");
  }
  return c;
}

void RunConfig::validate() const {
  if (!(omega_ref > 0)) throw ValidationError("omega_ref must be positive");
  if (geometry != "explicit") {
    if (!(omega > 0)) throw ValidationError("transition frequency omega must be positive");
    if (!(separation > 0)) throw ValidationError("separation must be positive");
    if (geometry != "pair" && (n_atoms < 1 || n_atoms > 6))
      throw ValidationError("n_atoms must be in 1..6");
  }
  const AtomArray a = atom_array();
  field.validate(a);
  if (a.size() > 1 && (pair_n == pair_m || pair_n >= a.size() || pair_m >= a.size()))
    throw ValidationError("pair must name two distinct atoms (0-based)");
  if (sweep.active()) (void)with(sweep.variable, sweep.values().front());
  if (sweep2.active()) (void)with(sweep2.variable, sweep2.values().front());
  if (t_points < 2 || !(t_max > 0)) throw ValidationError("need t_max > 0 and t_points >= 2");
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  std::vector<std::pair<std::string, std::string>> e;
  const auto num = [](double x) { return format_number(x); };
  e.emplace_back("omega_ref", num(omega_ref));
  e.emplace_back("field", field.kind == FieldKind::Scalar ? "scalar" : "electromagnetic");
  e.emplace_back("temperature", num(field.temperature));
  e.emplace_back("gamma0", num(field.gamma0));
  e.emplace_back("cutoff", num(field.cutoff));
  e.emplace_back("renormalize", bool_str(coeff.renormalize));
  e.emplace_back("magnetostatics", bool_str(coeff.magnetostatics));
  e.emplace_back("branch", coeff.branch ? to_string(*coeff.branch) : "auto");
  e.emplace_back("lowt_kmax", std::to_string(coeff.lowt_kmax));
  e.emplace_back("geometry", geometry);
  if (geometry == "explicit") {
    for (const auto& a : atoms) {
      std::ostringstream os;
      os << num(a.omega) << ',' << num(a.position.x()) << ',' << num(a.position.y()) << ','
         << num(a.position.z()) << ',' << num(a.dipole.x()) << ',' << num(a.dipole.y()) << ','
         << num(a.dipole.z());
      e.emplace_back("atom", os.str());
    }
  } else {
    e.emplace_back("n_atoms", std::to_string(geometry == "pair" ? 2 : n_atoms));
    e.emplace_back("separation", num(separation));
    e.emplace_back("omega", num(omega));
    e.emplace_back("detuning", num(detuning));
  }
  const auto sweep_entries = [&](const std::string& p, const SweepSpec& s) {
    e.emplace_back(p, s.active() ? s.variable : "none");
    if (!s.active()) return;
    e.emplace_back(p + "_min", num(s.min));
    e.emplace_back(p + "_max", num(s.max));
    e.emplace_back(p + "_points", std::to_string(s.points));
    e.emplace_back(p + "_scale", s.log ? "log" : "lin");
  };
  sweep_entries("sweep", sweep);
  sweep_entries("sweep2", sweep2);
  e.emplace_back("state", state);
  e.emplace_back("t_max", num(t_max));
  e.emplace_back("t_points", std::to_string(t_points));
  e.emplace_back("pair", std::to_string(pair_n) + "," + std::to_string(pair_m));
  e.emplace_back("kappa", num(kappa));
  e.emplace_back("null_tol", null_tol > 0 ? num(null_tol) : "auto");
  std::string nl;
  for (std::size_t k = 0; k < n_list.size(); ++k) nl += (k ? "," : "") + std::to_string(n_list[k]);
  e.emplace_back("n_list", nl);
  e.emplace_back("experimental_cinterpolate", bool_str(experimental_cinterpolate));
  return e;
}

}  // namespace qd
