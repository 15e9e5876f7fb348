#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <map>
#include <sstream>

#include "qdipole/asymptotic.hpp"
#include "qdipole/coefficients.hpp"
#include "qdipole/csv.hpp"
#include "qdipole/darkstates.hpp"
#include "qdipole/entanglement.hpp"
#include "qdipole/error.hpp"
#include "qdipole/hilbert.hpp"
#include "qdipole/liouvillian.hpp"
#include "qdipole/parallel.hpp"

namespace qdtool {

using namespace qd;

namespace {

using Row = std::vector<CsvCell>;

void header(CsvWriter& w, const std::string& cmd, const RunConfig& cfg) {
  w.comment("qdipole " + cmd);
  w.provenance(cfg.resolved());
}

std::vector<double> time_grid(const RunConfig& cfg) {
  std::vector<double> t(cfg.t_points);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = cfg.t_max * double(k) / double(t.size() - 1);
  return t;
}

// one config per sweep point (just cfg when there is no sweep)
std::vector<RunConfig> sweep_points(const RunConfig& cfg) {
  if (!cfg.sweep.active()) return {cfg};
  std::vector<RunConfig> out;
  for (double v : cfg.sweep.values()) {
    out.push_back(cfg.with(cfg.sweep.variable, v));
    out.back().validate();
  }
  return out;
}

double sweep_value(const RunConfig& c, const std::string& var) {
  if (var == "r") return c.separation;
  if (var == "detuning") return c.detuning;
  if (var == "temperature") return c.field.temperature;
  if (var == "gamma0") return c.field.gamma0;
  return c.field.cutoff;
}

void reject_sweep(const RunConfig& cfg, const std::string& cmd) {
  if (cfg.sweep.active() || cfg.sweep2.active()) throw ValidationError(cmd + " does not take a sweep");
}

template <class F>
void write_sweep(CsvWriter& w, const RunConfig& cfg, std::vector<std::string> cols, F&& rows_at) {
  const bool swept = cfg.sweep.active();
  if (swept) cols.insert(cols.begin(), cfg.sweep.variable);
  const auto points = sweep_points(cfg);
  const auto blocks = parallel_map<std::vector<Row>>(points.size(), [&](std::size_t i) { return rows_at(points[i]); });
  w.header(cols);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (auto row : blocks[i]) {
      if (swept) row.insert(row.begin(), sweep_value(points[i], cfg.sweep.variable));
      w.row(row);
    }
}

// ---------------------------------------------------------------- coefficients

void coefficients(const RunConfig& cfg, const CommandFlags& flags, CsvWriter& w) {
  header(w, "coefficients", cfg);
  const auto times = time_grid(cfg);
  write_sweep(w, cfg, {"n", "m", "omega", "t_or_inf", "re", "im", "branch"}, [&](const RunConfig& c) {
    const CoefficientModel cm(c.field, c.atom_array(), c.coeff);
    const std::string branch = to_string(cm.branch());
    std::vector<Row> rows;
    const std::size_t N = cm.size();
    for (std::size_t n = 0; n < N; ++n)
      for (std::size_t m = 0; m < N; ++m)
        for (int sign : {+1, -1}) {
          const double om = sign * cm.atoms()[m].omega;
          const cplx a = cm(n, m, om);
          rows.push_back({std::int64_t(n), std::int64_t(m), om, std::string("inf"), a.real(), a.imag(), branch});
          if (!flags.fulltime) continue;
          for (double t : times) {
            if (t == 0) continue;
            const cplx b = coeff_fulltime(cm.field(), cm.atoms(), n, m, om, t);
            rows.push_back({std::int64_t(n), std::int64_t(m), om, t, b.real(), b.imag(), std::string("fulltime")});
          }
        }
    return rows;
  });
}

// ---------------------------------------------------------------- rates

// dyad carrying the largest |left| x |right| weight of a mode; neither factor
// alone is local for population modes (the right operator drags the ground
// state along, the dual functional the states feeding it). N = 2 in the
// (gg, S, A, ee) basis with S, A = (|01> +- |10>)/sqrt 2, otherwise computational bit strings
std::string mode_label(const Matrix& right, const Matrix& left, std::size_t n_atoms) {
  Matrix b = Matrix::Identity(right.rows(), right.cols());
  std::vector<std::string> names;
  if (n_atoms == 2) {
    const double s = std::sqrt(0.5);
    b.setZero();
    b(0, 0) = 1;
    b(1, 1) = s;
    b(2, 1) = s;
    b(1, 2) = s;
    b(2, 2) = -s;
    b(3, 3) = 1;
    names = {"gg", "S", "A", "ee"};
  } else {
    for (Eigen::Index k = 0; k < right.rows(); ++k) {
      std::string bits;
      for (std::size_t a = 0; a < n_atoms; ++a) bits += (std::size_t(k) & atom_bit(a, n_atoms)) ? '1' : '0';
      names.push_back(bits);
    }
  }
  const Eigen::MatrixXd t =
      (b.adjoint() * right * b).cwiseAbs().cwiseProduct((b.adjoint() * left * b).cwiseAbs());
  Eigen::Index i = 0, j = 0;
  t.maxCoeff(&i, &j);
  return "|" + names[std::size_t(i)] + "><" + names[std::size_t(j)] + "|";
}

void rates(const RunConfig& cfg, const CommandFlags& flags, CsvWriter& w) {
  header(w, "rates", cfg);
  const std::string var = cfg.sweep.active() ? cfg.sweep.variable : "r";
  const auto points = sweep_points(cfg);
  const auto blocks = parallel_map<std::vector<Row>>(points.size(), [&](std::size_t i) {
    const RunConfig& c = points[i];
    const CoefficientModel cm(c.field, c.atom_array(), c.coeff);
    const LiouvillianModel model(cm);
    LiouvilleSpectrum spec;
    if (flags.perturbative || cm.size() > kMaxDenseAtoms) {
      PerturbativeOptions po;
      po.kappa = c.kappa;
      spec = spectrum_perturbative(model, c.field.gamma0, po);
    } else {
      spec = spectrum_numeric(build_liouvillian(model));
    }
    const auto d = Eigen::Index(model.dim());
    std::vector<Row> rows;
    for (Eigen::Index k = 0; k < spec.size(); ++k)
      rows.push_back({sweep_value(c, var), mode_label(spec.right_operator(k, d), unvec(spec.left.row(k).adjoint(), d), cm.size()), spec.f[k].real(),
                      spec.f[k].imag(), to_string(spec.provenance)});
    return rows;
  });
  w.header({var, "mode_label", "re_f", "im_f", "provenance"});
  for (const auto& b : blocks)
    for (const auto& r : b) w.row(r);
}

// ---------------------------------------------------------------- dynamics

void dynamics(const RunConfig& cfg, CsvWriter& w) {
  reject_sweep(cfg, "dynamics");
  const AtomArray atoms = cfg.atom_array();
  const CoefficientModel cm(cfg.field, atoms, cfg.coeff);
  const Superoperator L = build_liouvillian(LiouvillianModel(cm));
  const Matrix rho0 = state_from_spec(cfg.state, atoms.size());
  const auto times = time_grid(cfg);
  const double gamma = cm.gamma_ref(), omega = atoms.mean_omega();
  const auto d = Eigen::Index(L.dim());

  std::optional<ConcurrenceTrace> tr;
  if (atoms.size() >= 2) {
    TrajectoryOptions opt;
    opt.n = cfg.pair_n;
    opt.m = cfg.pair_m;
    opt.gamma = gamma;
    opt.neg_tol = 5 * (gamma / omega) * (gamma / omega);
    tr = concurrence_trajectory(L, atoms, rho0, times, opt);
  }
  const Propagator prop(L, rho0);

  header(w, "dynamics", cfg);
  std::vector<std::string> cols{"t"};
  if (tr) {
    w.comment("uC_inf = " + format_number(tr->uC_inf));
    for (const auto& e : tr->events) w.comment("event = " + to_string(e.kind) + " " + format_number(e.time));
    for (const char* c : {"uC", "C", "band_lo", "band_hi", "uC_smooth"}) cols.emplace_back(c);
  }
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a = 0; a < d; ++a) {
      const std::string id = "rho_" + std::to_string(a) + "_" + std::to_string(b);
      cols.push_back(id + "_re");
      cols.push_back(id + "_im");
    }
  cols.emplace_back("trace");
  cols.emplace_back("min_eig");
  w.header(cols);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Matrix rho = prop.state(times[k]);
    Row row{times[k]};
    if (tr) {
      row.insert(row.end(), {tr->uC[k], tr->C[k], -tr->band, tr->band, tr->uC_smooth[k]});
    }
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index a = 0; a < d; ++a) {
        row.emplace_back(rho(a, b).real());
        row.emplace_back(rho(a, b).imag());
      }
    row.emplace_back(rho.trace().real());
    row.emplace_back(min_eigenvalue(rho));
    w.row(row);
  }
}

// ---------------------------------------------------------------- dark states

double null_tolerance(const RunConfig& c, const CoefficientModel& cm) {
  return c.null_tol > 0 ? c.null_tol : kNullTolGamma * cm.gamma_ref();
}

void dark_states(const RunConfig& cfg, std::ostream& text, std::ostream* csv) {
  reject_sweep(cfg, "dark-states");
  const AtomArray atoms = cfg.atom_array();
  const CoefficientModel cm(cfg.field, atoms, cfg.coeff);
  const double tol = null_tolerance(cfg, cm);
  const auto rep = dark_state_report(cfg.field, atoms, cfg.coeff, tol);

  auto& o = text;
  o << "dark states  N = " << rep.n_atoms << "  T = " << format_number(rep.temperature) << "\n";
  o << std::left << std::setw(28) << "  family" << std::setw(10) << "count" << "rank\n";
  o << std::setw(28) << "  proper (j = 0)" << std::setw(10) << rep.proper_count << rep.proper_rank << "\n";
  for (std::size_t i = 0; i < rep.improper_counts.size(); ++i) {
    const std::size_t tj = rep.improper_counts[i].first;
    const std::string j = tj % 2 ? std::to_string(tj) + "/2" : std::to_string(tj / 2);
    o << std::setw(28) << ("  improper (j = " + j + ", T=0)") << std::setw(10) << rep.improper_counts[i].second
      << rep.improper_ranks[i].second << "\n";
  }
  if (rep.numeric) {
    o << "  numeric null space (tol " << format_number(tol) << "): " << rep.numeric->non_decaying
      << " non-decaying, " << rep.numeric->stationary << " stationary\n";
  }
  if (rep.overlap) o << "  overlap with T = 0 family: " << format_number(*rep.overlap) << "\n";
  for (const auto& s : rep.warnings) o << "warning: " << s << "\n";

  if (!csv) return;
  CsvWriter w(*csv);
  header(w, "dark-states", cfg);
  w.header({"family", "two_j", "vector", "basis_index", "re", "im"});
  const auto dump = [&](const std::string& fam, std::int64_t tj, const Matrix& B) {
    for (Eigen::Index v = 0; v < B.cols(); ++v)
      for (Eigen::Index k = 0; k < B.rows(); ++k)
        w.row({fam, tj, std::int64_t(v), std::int64_t(k), B(k, v).real(), B(k, v).imag()});
  };
  dump("proper", 0, rep.proper_basis);
  for (const auto& f : rep.improper_basis) dump("improper", std::int64_t(f.two_j), f.basis);
}

// ---------------------------------------------------------------- asymptotic

void asymptotic(const RunConfig& cfg, const CommandFlags& flags, CsvWriter& w) {
  header(w, "asymptotic", cfg);
  write_sweep(w, cfg, {"a", "b", "re", "im", "delta_re", "delta_im", "valid", "branch"}, [&](const RunConfig& c) {
    const CoefficientModel cm(c.field, c.atom_array(), c.coeff);
    const auto null_state = [&] {
      return asymptotic_from_nullspace(build_liouvillian(LiouvillianModel(cm)), cm.atoms(), c.field.temperature);
    };
    std::vector<AsymptoticState> states;
    if (flags.nullspace) {
      states.push_back(null_state());
    } else {
      AsymptoticOptions ao;
      ao.experimental_finiteT_derivative = c.experimental_cinterpolate;
      states.push_back(second_order_correction(cm, ao));
      // outside the high-temperature regime the null state is reported alongside
      if (!states.back().valid && cm.size() <= kMaxDenseAtoms) states.push_back(null_state());
    }
    std::vector<Row> rows;
    for (const auto& st : states) {
      const Matrix rho = st.state();
      for (Eigen::Index a = 0; a < rho.rows(); ++a)
        for (Eigen::Index b = 0; b < rho.cols(); ++b)
          rows.push_back({std::int64_t(a), std::int64_t(b), rho(a, b).real(), rho(a, b).imag(), st.delta(a, b).real(),
                          st.delta(a, b).imag(), std::int64_t(st.valid), to_string(st.branch)});
    }
    return rows;
  });
}

// ---------------------------------------------------------------- ent-map

std::vector<double> axis(const SweepSpec& s, const std::string& var, double lo, double hi, std::size_t n, bool log) {
  if (s.active()) {
    if (s.variable != var) throw ValidationError("ent-map expects sweep = r and sweep2 = detuning");
    return s.values();
  }
  SweepSpec d{var, lo, hi, n, log};
  return d.values();
}

void ent_map(const RunConfig& cfg, CsvWriter& w) {
  if (cfg.geometry != "pair") throw ValidationError("ent-map needs geometry = pair");
  const CoefficientModel ref(cfg.field, cfg.atom_array(), cfg.coeff);
  const double gamma = ref.gamma_ref();
  const auto r = axis(cfg.sweep, "r", 0.05, 50, 10, true);
  const auto dw = axis(cfg.sweep2, "detuning", 0, 10 * gamma, 10, false);
  for (double x : r)
    if (!(x > cfg.field.cutoff)) throw ValidationError("cutoff must be below separations");
  const auto rows = asymptotic_entanglement_map(cfg.field, cfg.omega, r, dw, cfg.coeff.magnetostatics);
  header(w, "ent-map", cfg);
  w.header({"r", "detuning", "uC", "magnetostatics", "valid"});
  for (const auto& e : rows) w.row({e.r, e.detuning, e.uC, std::int64_t(e.magnetostatics), std::int64_t(e.valid)});
}

// ---------------------------------------------------------------- superradiance

void superradiance(const RunConfig& cfg, CsvWriter& w) {
  reject_sweep(cfg, "superradiance");
  const auto rows = max_decay_rate_vs_N(cfg.field, cfg.omega, cfg.separation, cfg.n_list, cfg.coeff);
  const double gamma = CoefficientModel(cfg.field, ring_array(1, cfg.separation, cfg.omega), cfg.coeff).gamma_ref();
  header(w, "superradiance", cfg);
  if (rows.size() >= 2) {
    // least-squares slope of log rate vs log N
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
      const double x = std::log(double(r.n_atoms)), y = std::log(r.max_rate);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = double(rows.size());
    w.comment("loglog_slope = " + format_number((n * sxy - sx * sy) / (n * sxx - sx * sx)));
  }
  w.header({"n_atoms", "max_rate", "max_rate_over_gamma"});
  for (const auto& r : rows) w.row({std::int64_t(r.n_atoms), r.max_rate, r.max_rate / gamma});
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"coefficients", "rates",   "dynamics",     "dark-states",
                                              "asymptotic",   "ent-map", "superradiance"};
  return names;
}

void run_command(const std::string& cmd, const RunConfig& cfg, const CommandFlags& flags, std::ostream& out,
                 std::ostream& console) {
  cfg.validate();
  CsvWriter w(out);
  if (cmd == "coefficients")
    coefficients(cfg, flags, w);
  else if (cmd == "rates")
    rates(cfg, flags, w);
  else if (cmd == "dynamics")
    dynamics(cfg, w);
  else if (cmd == "dark-states")
    dark_states(cfg, console, cfg.output.empty() ? nullptr : &out);
  else if (cmd == "asymptotic")
    asymptotic(cfg, flags, w);
  else if (cmd == "ent-map")
    ent_map(cfg, w);
  else if (cmd == "superradiance")
    superradiance(cfg, w);
  else
    throw ValidationError("unknown command '" + cmd + "'");
}

}  // namespace qdtool
