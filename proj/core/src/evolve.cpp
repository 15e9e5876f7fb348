#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "qdipole/error.hpp"
#include "qdipole/liouvillian.hpp"
#include "qdipole/parallel.hpp"

namespace qd {

std::size_t worker_count() {
  if (const char* env = std::getenv("QDIPOLE_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return std::size_t(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace {

using State = std::vector<cplx>;
namespace ode = boost::numeric::odeint;

constexpr double kOdeAbsTol = 1e-12;
constexpr double kOdeRelTol = 1e-10;

}  // namespace

struct Propagator::Impl {
  Eigen::Index d = 0;
  bool ode = false;
  // eigen path
  Vector f, c;
  Matrix right;
  // ode path
  Matrix L;
  State y0;
  mutable double t_last = 0;
  mutable State y_last;
  double dt0 = 0;

  void init_eigen(const LiouvilleSpectrum& spec, const Vector& v0) {
    f = spec.f;
    right = spec.right;
    c = spec.left * v0;
  }

  void init_ode(const Matrix& Lm, const Vector& v0) {
    ode = true;
    L = Lm;
    y0.assign(v0.data(), v0.data() + v0.size());
    y_last = y0;
    const double norm = L.cwiseAbs().colwise().sum().maxCoeff();
    dt0 = norm > 0 ? 0.1 / norm : 1.0;
  }

  Matrix state(double t) const {
    if (t < 0) throw DomainError("propagation time must be non-negative");
    if (!ode) {
      Vector a = c;
      for (Eigen::Index k = 0; k < a.size(); ++k) a[k] *= std::exp(f[k] * t);
      return unvec(right * a, d);
    }
    if (t < t_last) {
      t_last = 0;
      y_last = y0;
    }
    if (t > t_last) {
      const auto rhs = [this](const State& y, State& dy, double) {
        Eigen::Map<const Vector> yv(y.data(), Eigen::Index(y.size()));
        Eigen::Map<Vector> dv(dy.data(), Eigen::Index(dy.size()));
        dv.noalias() = L * yv;
      };
      auto stepper = ode::make_controlled(kOdeAbsTol, kOdeRelTol, ode::runge_kutta_dopri5<State>());
      ode::integrate_adaptive(stepper, rhs, y_last, t_last, t, std::min(dt0, t - t_last));
      t_last = t;
    }
    Eigen::Map<const Vector> v(y_last.data(), Eigen::Index(y_last.size()));
    return unvec(Vector(v), d);
  }
};

Propagator::Propagator(const Superoperator& L, const Matrix& rho0)
    : Propagator(L, spectrum_numeric(L), rho0) {}

Propagator::Propagator(const Superoperator& L, const LiouvilleSpectrum& spec, const Matrix& rho0)
    : impl_(std::make_unique<Impl>()) {
  const Eigen::Index d = Eigen::Index(L.dim());
  if (rho0.rows() != d || rho0.cols() != d) throw ValidationError("initial state has the wrong dimension");
  impl_->d = d;
  const Vector v0 = vec(rho0);
  if (spec.ill_conditioned || spec.right.size() == 0)
    impl_->init_ode(L.L, v0);
  else
    impl_->init_eigen(spec, v0);
}

Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;
Propagator& Propagator::operator=(Propagator&&) noexcept = default;

Matrix Propagator::state(double t) const { return impl_->state(t); }
bool Propagator::uses_ode() const { return impl_->ode; }

std::vector<Matrix> evolve(const Superoperator& L, const Matrix& rho0, const std::vector<double>& times) {
  Propagator p(L, rho0);
  std::vector<Matrix> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(p.state(t));
  return out;
}

std::vector<RateRow> max_decay_rate_vs_N(const FieldSpec& field, double omega, double spacing,
                                         const std::vector<std::size_t>& n_list,
                                         const CoefficientOptions& options) {
  return parallel_map<RateRow>(n_list.size(), [&](std::size_t i) {
    const std::size_t n = n_list[i];
    const AtomArray atoms = ring_array(n, spacing, omega);
    const CoefficientModel cm(field, atoms, options);
    const LiouvillianModel model(cm);
    PerturbativeOptions po;
    po.eigenvectors = false;
    const auto spec = spectrum_perturbative(model, field.gamma0, po);
    double best = 0;
    for (Eigen::Index k = 0; k < spec.f.size(); ++k) best = std::max(best, std::abs(spec.f[k].real()));
    return RateRow{n, best};
  });
}

}  // namespace qd
