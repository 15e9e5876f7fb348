#include "qdipole/asymptotic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qdipole/error.hpp"

namespace qd {

std::string to_string(AsymptoticBranch b) {
  switch (b) {
    case AsymptoticBranch::HighT: return "high_t";
    case AsymptoticBranch::ZeroT: return "zero_t";
    case AsymptoticBranch::NullSpace: return "null_space";
  }
  return "?";
}

namespace {

std::vector<double> energies_of(const AtomArray& atoms) {
  const std::size_t N = atoms.size(), d = dim_of(N);
  std::vector<double> E(d, 0.0);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t n = 0; n < N; ++n)
      if (k & atom_bit(n, N)) E[k] += atoms[n].omega;
  return E;
}

// Boltzmann weights relative to the ground level (T = 0: indicator of E = 0)
std::vector<double> weights(const std::vector<double>& E, double T) {
  std::vector<double> w(E.size());
  for (std::size_t k = 0; k < E.size(); ++k) w[k] = T > 0 ? std::exp(-E[k] / T) : (E[k] == 0 ? 1.0 : 0.0);
  return w;
}

}  // namespace

Matrix boltzmann_state(const AtomArray& atoms, double T) {
  if (!(T >= 0)) throw DomainError("temperature must be non-negative");
  atoms.validate();
  const auto E = energies_of(atoms);
  const auto w = weights(E, T);
  double Z = 0;
  for (double x : w) Z += x;
  const Eigen::Index d = Eigen::Index(E.size());
  Matrix rho = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) rho(k, k) = w[std::size_t(k)] / Z;
  return rho;
}

bool high_temperature_valid(const AtomArray& atoms, double T, double gamma) {
  if (!(T > 0)) return false;
  double smallest = std::numeric_limits<double>::infinity();
  const std::size_t N = atoms.size();
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t m = 0; m < N; ++m)
      if (n != m || N == 1) smallest = std::min(smallest, std::exp(-(atoms[n].omega + atoms[m].omega) / T));
  return gamma / atoms.mean_omega() < kHighTMargin * smallest;
}

AsymptoticState second_order_correction(const CoefficientModel& coeffs, const AsymptoticOptions& options) {
  const AtomArray& atoms = coeffs.atoms();
  const double T = coeffs.field().temperature;
  const std::size_t N = atoms.size(), d = dim_of(N);
  const auto E = energies_of(atoms);
  const auto w = weights(E, T);
  double Z = 0;
  for (double x : w) Z += x;

  AsymptoticState st;
  st.rho_T = boltzmann_state(atoms, T);
  st.branch = T > 0 ? AsymptoticBranch::HighT : AsymptoticBranch::ZeroT;
  if (T > 0) {
    st.valid = high_temperature_valid(atoms, T, coeffs.gamma_ref());
    if (!st.valid)
      st.warnings.push_back("high-temperature condition violated; second-order state unreliable");
  }
  const bool derivative_terms = T == 0 || options.experimental_finiteT_derivative;
  if (T > 0 && options.experimental_finiteT_derivative)
    st.warnings.push_back("experimental: resonant terms from the derivative formula at finite T");

  const double h = options.derivative_step * atoms.mean_omega();
  // Richardson-refined central difference
  const auto dA = [&](std::size_t n, std::size_t m, double x) {
    const auto D = [&](double s) { return (coeffs(n, m, x + s) - coeffs(n, m, x - s)) / (2 * s); };
    return (4.0 * D(h / 2) - D(h)) / 3.0;
  };

  st.delta = Matrix::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double wij = E[i] - E[j];
      const bool resonant = wij == 0;
      if (resonant && !derivative_terms) continue;
      double s = 0;
      // <i|sx_m|k><k|sx_n|j> is nonzero only for k = i ^ bit_m and j = k ^ bit_n
      for (std::size_t m = 0; m < N; ++m) {
        const std::size_t k = i ^ atom_bit(m, N);
        for (std::size_t n = 0; n < N; ++n) {
          if ((k ^ atom_bit(n, N)) != j) continue;
          const double wik = E[i] - E[k], wjk = E[j] - E[k];
          cplx R;
          if (!resonant) {
            R = w[k] * (coeffs(n, m, wik) - coeffs(n, m, wjk)) / wij +
                (w[i] * coeffs(m, n, -wik) - w[j] * coeffs(m, n, -wjk)) / wij;
          } else {
            R = 0.0;
            if (w[k] != 0) R += w[k] * dA(n, m, wik);
            if (w[i] != 0) R -= w[i] * dA(m, n, -wik);
          }
          s += R.imag();
        }
      }
      st.delta(Eigen::Index(i), Eigen::Index(j)) = s / Z;
    }
  return st;
}

AsymptoticState asymptotic_from_nullspace(const Superoperator& L, const AtomArray& atoms, double T,
                                          const LiouvilleSpectrum* spectrum) {
  LiouvilleSpectrum local;
  if (!spectrum) {
    local = spectrum_numeric(L);
    spectrum = &local;
  }
  const Eigen::Index d = Eigen::Index(L.dim());
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < spectrum->f.size(); ++k)
    if (std::abs(spectrum->f[k]) < std::abs(spectrum->f[best])) best = k;
  const double fmin = std::abs(spectrum->f[best]);

  AsymptoticState st;
  st.branch = AsymptoticBranch::NullSpace;
  st.rho_T = boltzmann_state(atoms, T);
  Matrix rho = spectrum->right_operator(best, d);
  const cplx tr = rho.trace();
  if (std::abs(tr) < 1e-14) throw NumericalStateError("null eigen-operator has zero trace");
  rho /= tr;
  st.delta = rho - st.rho_T;

  // other (near-)null modes: the steady state is not unique
  double scale = 0;
  for (Eigen::Index k = 0; k < spectrum->f.size(); ++k) scale = std::max(scale, std::abs(spectrum->f[k]));
  const double tol = std::max(1e-9 * scale, 10 * fmin);
  for (Eigen::Index k = 0; k < spectrum->f.size(); ++k) {
    if (k == best || std::abs(spectrum->f[k]) > tol) continue;
    Matrix o = spectrum->right_operator(k, d);
    const cplx t = o.trace();
    if (std::abs(t) > 1e-12) o /= t;
    st.family.push_back(o);
  }
  if (!st.family.empty()) {
    std::ostringstream os;
    os << st.family.size() + 1 << " null modes; asymptotic state is an affine family";
    st.warnings.push_back(os.str());
  }
  return st;
}

}  // namespace qd
