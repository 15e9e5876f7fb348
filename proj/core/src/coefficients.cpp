#include "qdipole/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qdipole/error.hpp"
#include "qdipole/specfun.hpp"

namespace qd {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr cplx I(0.0, 1.0);

// Watson-lemma terms kept in the asymptotic I_k used for the tail
constexpr int kTailTerms = 5;
// explicit terms are extended until k beta |w| reaches this before the tail kicks in
constexpr double kTailStart = 25.0;

void require_scalar(const FieldSpec& field, const char* what) {
  if (field.kind != FieldKind::Scalar) {
    std::ostringstream os;
    os << what << ": closed forms are implemented for the scalar kernel only";
    throw UnsupportedError(os.str());
  }
}

// Sum_{k>K} 2 sum_j (2j)! Im[((k beta - i r) w)^{-(2j+1)}], midpoint Euler-Maclaurin
double lowT_tail(double beta, double r, double w, int K) {
  const double a = (K + 0.5) * beta;
  const cplx X(a, -r);
  double total = 0.0;
  double fact = 1.0;  // (2j)!
  for (int j = 0; j < kTailTerms; ++j) {
    if (j > 0) fact *= double(2 * j - 1) * (2 * j);
    const int m = 2 * j + 1;
    double integral;
    if (m == 1)
      integral = std::atan2(r, a) / beta;
    else
      integral = std::imag(std::pow(X, 1 - m)) / (beta * (m - 1));
    const double d1 = std::imag(-double(m) * beta * std::pow(X, -m - 1));
    const double d3 = std::imag(-double(m) * (m + 1) * (m + 2) * beta * beta * beta * std::pow(X, -m - 3));
    const double s = integral + d1 / 24.0 - 7.0 * d3 / 5760.0;
    total += 2.0 * fact * std::pow(w, -m) * s;
  }
  return total;
}

// thermal part of Im A for w > 0:  -(gamma0/(pi r)) sum_k I_k
double lowT_thermal(double gamma0, double r, double w, double T, int k_max) {
  const double beta = 1.0 / T;
  const int K = std::max(k_max, int(std::ceil(kTailStart / (beta * w))));
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  int growth = 0;
  for (int k = 1; k <= K; ++k) {
    const cplx z = cplx(k * beta, -r) * w;
    const cplx v = specfun::expe1(z) - specfun::expe1(-z) - I * kPi * std::exp(-z);
    const double Ik = v.imag();
    if (!std::isfinite(Ik)) throw ConvergenceError("low-T expansion: non-finite summand");
    sum += Ik;
    if (k * beta > 2.0 * r) {
      if (std::abs(Ik) > std::abs(prev)) {
        if (++growth >= 3) {
          std::ostringstream os;
          os << "low-T expansion: partial sums diverging at k=" << k << " (T=" << T << ", w=" << w
             << ", r=" << r << ")";
          throw ConvergenceError(os.str());
        }
      } else {
        growth = 0;
      }
    }
    prev = Ik;
  }
  sum += lowT_tail(beta, r, w, K);
  return -gamma0 / (kPi * r) * sum;
}

}  // namespace

std::string to_string(Branch b) {
  switch (b) {
    case Branch::ZeroT: return "zeroT";
    case Branch::FiniteTLerch: return "lerch";
    case Branch::LowTExpansion: return "lowT";
  }
  return "?";
}

namespace coef {

double imag_zeroT(double gamma0, double r, double w) {
  if (!(r > 0.0)) throw DomainError("imag_zeroT: r must be > 0");
  const double x = r * w;
  if (x == 0.0) return -gamma0 / (2.0 * r);
  return -gamma0 / (r * kPi) * (std::sin(x) * specfun::ci(std::abs(x)) - std::cos(x) * specfun::si(x));
}

double imag_lerch(double gamma0, double r, double w, double T) {
  if (!(T > 0.0)) throw DomainError("imag_lerch: requires T > 0");
  if (!(r > 0.0)) throw DomainError("imag_lerch: r must be > 0");
  if (w == 0.0) return -gamma0 / (2.0 * r);
  const cplx phi = specfun::lerch_phi1(cplx(0.0, w / (2.0 * kPi * T)), 2.0 * kPi * T * r);
  // T/w - (coth(w/2T) - 1) cos(rw)/2, rearranged to stay finite as w -> 0
  const double c = std::cos(r * w);
  const double s = std::sin(r * w / 2.0);
  const double bracket = (T / w) * 2.0 * s * s - 0.5 * specfun::coth_minus_inv(w / (2.0 * T)) * c + 0.5 * c;
  return gamma0 / (kPi * r) * phi.imag() - gamma0 / r * bracket;
}

double imag_lowT(double gamma0, double r, double w, double T, int k_max) {
  if (!(T > 0.0)) throw DomainError("imag_lowT: requires T > 0");
  if (!(r > 0.0)) throw DomainError("imag_lowT: r must be > 0");
  if (k_max < 1) throw DomainError("imag_lowT: k_max must be >= 1");
  if (std::abs(w) < T) {
    std::ostringstream os;
    os << "imag_lowT: |w|=" << std::abs(w) << " below the expansion floor |w| >= T=" << T;
    throw DomainError(os.str());
  }
  const double thermal = lowT_thermal(gamma0, r, std::abs(w), T, k_max);
  return imag_zeroT(gamma0, r, w) + (w > 0 ? thermal : -thermal);
}

}  // namespace coef

double coeff_real(const FieldSpec& field, const AtomArray& atoms, std::size_t n, std::size_t m,
                  double w) {
  return 0.5 * noise_kernel_freq(field, atoms, n, m, w);
}

double coeff_imag_zeroT(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                        std::size_t m, double w) {
  require_scalar(field, "coeff_imag_zeroT");
  return coef::imag_zeroT(field.gamma0, separation(field, atoms, n, m), w);
}

double coeff_imag_finiteT(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                          std::size_t m, double w, double T) {
  require_scalar(field, "coeff_imag_finiteT");
  return coef::imag_lerch(field.gamma0, separation(field, atoms, n, m), w, T);
}

double coeff_imag_lowT_expansion(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                                 std::size_t m, double w, double T, int k_max) {
  require_scalar(field, "coeff_imag_lowT_expansion");
  return coef::imag_lowT(field.gamma0, separation(field, atoms, n, m), w, T, k_max);
}

cplx coeff_fulltime(const FieldSpec& field, const AtomArray& atoms, std::size_t n, std::size_t m,
                    double w, double t) {
  require_scalar(field, "coeff_fulltime");
  if (t < 0.0) throw DomainError("coeff_fulltime: t must be >= 0");
  return coef::fulltime(field.gamma0, separation(field, atoms, n, m), w, field.temperature, t,
                        50.0 / field.cutoff);
}

Eigen::MatrixXcd Counterterm::operator_matrix() const {
  const Eigen::Index d = Eigen::Index(1) << shifts.size();
  double total = 0.0;
  for (double s : shifts) total += s;
  return Eigen::MatrixXcd::Identity(d, d) * total;
}

Counterterm renormalization_counterterm(const FieldSpec& field, const AtomArray& atoms) {
  Counterterm c;
  for (std::size_t n = 0; n < atoms.size(); ++n) c.shifts.push_back(-field.gamma0 / (2.0 * field.cutoff));
  return c;
}

CoefficientModel::CoefficientModel(FieldSpec field, AtomArray atoms, CoefficientOptions options)
    : field_(field), atoms_(std::move(atoms)), options_(options) {
  field_.validate(atoms_);
  require_scalar(field_, "CoefficientModel");
  if (options_.branch)
    branch_ = *options_.branch;
  else
    branch_ = field_.temperature == 0.0 ? Branch::ZeroT : Branch::FiniteTLerch;
  if (branch_ != Branch::ZeroT && field_.temperature == 0.0)
    throw ValidationError("finite-temperature branch requested at T=0");
  if (branch_ == Branch::ZeroT && field_.temperature != 0.0)
    throw ValidationError("zero-temperature branch requested at T>0");
  const std::size_t N = atoms_.size();
  static_shift_.resize(N * N);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t m = 0; m < N; ++m) static_shift_[n * N + m] = -field_.gamma0 / (2.0 * separation(n, m));
}

double CoefficientModel::separation(std::size_t n, std::size_t m) const {
  return qd::separation(field_, atoms_, n, m);
}

double CoefficientModel::bare_imag(std::size_t n, std::size_t m, double w) const {
  const double r = separation(n, m);
  if (w == 0.0) return -field_.gamma0 / (2.0 * r);
  switch (branch_) {
    case Branch::ZeroT: return coef::imag_zeroT(field_.gamma0, r, w);
    case Branch::FiniteTLerch: return coef::imag_lerch(field_.gamma0, r, w, field_.temperature);
    case Branch::LowTExpansion:
      return coef::imag_lowT(field_.gamma0, r, w, field_.temperature, options_.lowt_kmax);
  }
  return 0.0;
}

cplx CoefficientModel::bare(std::size_t n, std::size_t m, double w) const {
  return {0.5 * kernel::scalar_noise(field_.gamma0, separation(n, m), w, field_.temperature),
          bare_imag(n, m, w)};
}

cplx CoefficientModel::operator()(std::size_t n, std::size_t m, double w) const {
  cplx v = bare(n, m, w);
  const bool subtract = (n == m) ? options_.renormalize : !options_.magnetostatics;
  if (subtract) v -= I * static_shift_[n * atoms_.size() + m];
  return v;
}

double CoefficientModel::gamma_ref() const {
  double s = 0.0;
  for (std::size_t n = 0; n < atoms_.size(); ++n) {
    const double w = atoms_[n].omega;
    s += kernel::scalar_noise(field_.gamma0, field_.cutoff, -w, 0.0) / 2.0;
  }
  return s / double(atoms_.size());
}

SpectralCoefficientSet tabulate(const CoefficientModel& model) {
  SpectralCoefficientSet set;
  const std::size_t N = model.size();
  set.n_atoms = N;
  set.plus.resize(N * N);
  set.minus.resize(N * N);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t m = 0; m < N; ++m) {
      const double w = model.atoms()[m].omega;
      set.plus[n * N + m] = model(n, m, +w);
      set.minus[n * N + m] = model(n, m, -w);
    }
  set.branch = model.branch();
  set.renormalized = model.options().renormalize;
  set.magnetostatics = model.options().magnetostatics;
  return set;
}

double level_shift(const FieldSpec& field, const AtomArray& atoms, std::size_t n, bool renormalized) {
  CoefficientOptions opt;
  opt.renormalize = renormalized;
  CoefficientModel model(field, atoms, opt);
  return model(n, n, -atoms[n].omega).imag();
}

}  // namespace qd
