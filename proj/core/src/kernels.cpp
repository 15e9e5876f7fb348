#include "qdipole/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qdipole/error.hpp"
#include "qdipole/specfun.hpp"

namespace qd {

AtomArray::AtomArray(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

double AtomArray::distance(std::size_t n, std::size_t m) const {
  return (atoms_.at(n).position - atoms_.at(m).position).norm();
}

double AtomArray::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < size(); ++n)
    for (std::size_t m = n + 1; m < size(); ++m) {
      const double d = distance(n, m);
      if (d > 0.0) best = std::min(best, d);
    }
  return best;
}

double AtomArray::mean_omega() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.omega;
  return atoms_.empty() ? 0.0 : s / double(atoms_.size());
}

std::vector<double> AtomArray::omegas() const {
  std::vector<double> w;
  w.reserve(size());
  for (const auto& a : atoms_) w.push_back(a.omega);
  return w;
}

void AtomArray::validate() const {
  if (atoms_.empty()) throw ValidationError("atom array is empty");
  for (std::size_t n = 0; n < size(); ++n) {
    const auto& a = atoms_[n];
    if (!(a.omega > 0.0) || !std::isfinite(a.omega)) {
      std::ostringstream os;
      os << "atom " << n << ": transition frequency must be positive, got " << a.omega;
      throw ValidationError(os.str());
    }
    if (std::abs(a.dipole.norm() - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "atom " << n << ": dipole direction not normalized (|d|=" << a.dipole.norm() << ")";
      throw ValidationError(os.str());
    }
  }
  for (std::size_t n = 0; n < size(); ++n)
    for (std::size_t m = n + 1; m < size(); ++m)
      if (distance(n, m) == 0.0) {
        std::ostringstream os;
        os << "atoms " << n << " and " << m << " coincide";
        throw ValidationError(os.str());
      }
}

AtomArray ring_array(std::size_t n, double spacing, double omega) {
  std::vector<Atom> v(n);
  if (n == 1) {
    v[0].omega = omega;
    return AtomArray(v);
  }
  const double R = spacing / (2.0 * std::sin(std::numbers::pi / double(n)));
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = 2.0 * std::numbers::pi * double(k) / double(n);
    v[k].omega = omega;
    v[k].position = Eigen::Vector3d(R * std::cos(phi), R * std::sin(phi), 0.0);
  }
  return AtomArray(v);
}

AtomArray pair_array(double r, double omega, double detuning) {
  std::vector<Atom> v(2);
  v[0].omega = omega - detuning / 2;
  v[1].omega = omega + detuning / 2;
  v[1].position = Eigen::Vector3d(r, 0.0, 0.0);
  return AtomArray(v);
}

AtomArray simplex_array(std::size_t n, double r, double omega) {
  if (n < 1 || n > 4) throw ValidationError("simplex_array: equidistant clusters exist for N <= 4");
  const Eigen::Vector3d verts[4] = {
      {0.0, 0.0, 0.0},
      {1.0, 0.0, 0.0},
      {0.5, std::sqrt(3.0) / 2, 0.0},
      {0.5, std::sqrt(3.0) / 6, std::sqrt(2.0 / 3.0)},
  };
  std::vector<Atom> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k].omega = omega;
    v[k].position = r * verts[k];
  }
  return AtomArray(v);
}

void FieldSpec::validate(const AtomArray& atoms) const {
  if (temperature < 0.0 || !std::isfinite(temperature))
    throw ValidationError("temperature must be >= 0");
  if (!(gamma0 > 0.0)) throw ValidationError("gamma0 must be > 0");
  if (!(cutoff > 0.0)) throw ValidationError("cutoff length r0 must be > 0");
  atoms.validate();
  if (cutoff >= atoms.min_separation()) {
    std::ostringstream os;
    os << "cutoff must be below separations: r0=" << cutoff
       << " >= min separation " << atoms.min_separation();
    throw ValidationError(os.str());
  }
}

double separation(const FieldSpec& field, const AtomArray& atoms, std::size_t n, std::size_t m) {
  if (n >= atoms.size() || m >= atoms.size()) throw ValidationError("atom index out of range");
  return n == m ? field.cutoff : atoms.distance(n, m);
}

namespace kernel {

double scalar_damping(double gamma0, double r, double w) { return gamma0 * specfun::sinc(r * w); }

double scalar_noise(double gamma0, double r, double w, double T) {
  const double g = scalar_damping(gamma0, r, w);
  if (T == 0.0) return w < 0.0 ? -2.0 * g * w : 0.0;
  const double x = w / T;
  if (x == 0.0) return 2.0 * g * T;
  if (x > 700.0) return 0.0;
  return 2.0 * g * T * (x / std::expm1(x));
}

}  // namespace kernel

namespace {

double em_orientation(const AtomArray& atoms, std::size_t n, std::size_t m, double r, double w) {
  const Eigen::Vector3d& dn = atoms[n].dipole;
  const Eigen::Vector3d& dm = atoms[m].dipole;
  const double z = r * w;
  double value = specfun::fs1(z) * dn.dot(dm);
  if (n != m) {
    const Eigen::Vector3d rhat = (atoms[m].position - atoms[n].position) / r;
    value += specfun::fs0(z) * dn.dot(rhat) * dm.dot(rhat);
  }
  // n == m: r0 is a length only, no direction; FS0 vanishes at small r0 w anyway
  return value;
}

}  // namespace

double damping_kernel_freq(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                           std::size_t m, double w) {
  const double r = separation(field, atoms, n, m);
  if (field.kind == FieldKind::Scalar) return kernel::scalar_damping(field.gamma0, r, w);
  return field.gamma0 * em_orientation(atoms, n, m, r, w);
}

double noise_kernel_freq(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                         std::size_t m, double w) {
  const double g = damping_kernel_freq(field, atoms, n, m, w);
  const double T = field.temperature;
  if (T == 0.0) return w < 0.0 ? -2.0 * g * w : 0.0;
  const double x = w / T;
  if (x == 0.0) return 2.0 * g * T;
  if (x > 700.0) return 0.0;
  return 2.0 * g * T * (x / std::expm1(x));
}

double damping_kernel_time(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                           std::size_t m, double t) {
  if (field.kind != FieldKind::Scalar)
    throw UnsupportedError("time-domain damping kernel is only available for the scalar field");
  const double r = separation(field, atoms, n, m);
  return std::abs(t) < r ? field.gamma0 / 2.0 / (2.0 * r) : 0.0;
}

}  // namespace qd
