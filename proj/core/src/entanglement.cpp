#include "qdipole/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qdipole/error.hpp"
#include "qdipole/parallel.hpp"

namespace qd {

namespace {

void require_pair_state(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw ValidationError("two-qubit state must be 4x4");
}

const Matrix& sysy() {
  static const Matrix Y = [] {
    Matrix y(4, 4);
    y.setZero();
    // sy x sy with sy = [[0, i], [-i, 0]]
    y(0, 3) = -1;
    y(1, 2) = 1;
    y(2, 1) = 1;
    y(3, 0) = -1;
    return y;
  }();
  return Y;
}


// Positive states: rho = W W^dag, sqrt(lambda_i) are the singular values of
// tau = W^T Y W. No square roots of near-zero eigenvalues of rho rho~.
double uc_from_tau(const Eigen::SelfAdjointEigenSolver<Matrix>& es) {
  const Eigen::VectorXd p = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix W = es.eigenvectors() * p.asDiagonal();
  const Matrix tau = W.transpose() * sysy() * W;
  const Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(tau).singularValues();  // decreasing
  return s(0) - s(1) - s(2) - s(3);
}

}  // namespace

double unmaximized_concurrence(const Matrix& rho, double neg_tol) {
  require_pair_state(rho);
  const Eigen::SelfAdjointEigenSolver<Matrix> herm(0.5 * (rho + rho.adjoint()));
  if (herm.eigenvalues().minCoeff() >= -kPositiveStateTol) return uc_from_tau(herm);

  // perturbative states slightly outside the positive cone
  const Matrix& Y = sysy();
  const Matrix R = rho * Y * rho.conjugate() * Y;
  Eigen::ComplexEigenSolver<Matrix> es(R, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("concurrence eigensolver failed");
  std::vector<double> lam(4);
  for (int k = 0; k < 4; ++k) {
    const double l = es.eigenvalues()[k].real();
    if (l < -neg_tol) {
      std::ostringstream os;
      os << "rho rho~ eigenvalue " << l << " below -" << neg_tol;
      throw NumericalStateError(os.str());
    }
    lam[std::size_t(k)] = std::max(0.0, l);
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::sqrt(lam[0]) - std::sqrt(lam[1]) - std::sqrt(lam[2]) - std::sqrt(lam[3]);
}

double concurrence(const Matrix& rho, double neg_tol) {
  return std::max(0.0, unmaximized_concurrence(rho, neg_tol));
}

double log_negativity(const Matrix& rho) {
  require_pair_state(rho);
  Matrix pt(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) pt(2 * a + b, 2 * c + e) = rho(2 * a + e, 2 * c + b);
  const Matrix h = 0.5 * (pt + pt.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return std::log2(es.eigenvalues().cwiseAbs().sum());
}

std::string to_string(EventKind k) { return k == EventKind::Death ? "death" : "revival"; }

ConcurrenceTrace concurrence_trajectory(const Superoperator& L, const AtomArray& atoms, const Matrix& rho0,
                                        const std::vector<double>& times, const TrajectoryOptions& opt) {
  const std::size_t N = L.n_atoms;
  if (opt.n >= N || opt.m >= N || opt.n == opt.m) throw ValidationError("invalid atom pair");
  if (!(opt.gamma > 0)) throw ValidationError("trajectory needs the gamma scale");
  const double omega = atoms.mean_omega();

  const auto spec = spectrum_numeric(L);
  const Propagator prop(L, spec, rho0);
  const auto uc_at = [&](double t) {
    return unmaximized_concurrence(partial_trace_pair(prop.state(t), opt.n, opt.m), opt.neg_tol);
  };

  ConcurrenceTrace tr;
  tr.times = times;
  tr.band = opt.band > 0 ? opt.band : opt.gamma / omega;
  tr.window = opt.window < 0 ? std::numbers::pi / omega : opt.window;
  const double resolution = opt.resolution > 0 ? opt.resolution : 1e-3 / opt.gamma;

  // 16-point Gauss-Legendre average over [t - w/2, t + w/2], clipped at 0
  static const double gx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                               0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
  static const double gw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                               0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};
  const auto smooth_at = [&](double t) {
    if (tr.window == 0) return uc_at(t);
    const double a = std::max(0.0, t - tr.window / 2), b = a + tr.window;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0;
    for (int k = 0; k < 8; ++k) s += gw[k] * (uc_at(c - h * gx[k]) + uc_at(c + h * gx[k]));
    return 0.5 * s;
  };

  tr.uC.reserve(times.size());
  for (double t : times) {
    const double u = uc_at(t);
    tr.uC.push_back(u);
    tr.C.push_back(std::max(0.0, u));
    tr.uC_smooth.push_back(smooth_at(t));
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double u0 = tr.uC_smooth[k - 1], u1 = tr.uC_smooth[k];
    if ((u0 > 0) == (u1 > 0)) continue;
    double a = times[k - 1], b = times[k], fa = u0;
    while (b - a > resolution) {
      const double c = 0.5 * (a + b), fc = smooth_at(c);
      if ((fc > 0) == (fa > 0)) {
        a = c;
        fa = fc;
      } else {
        b = c;
      }
    }
    tr.events.push_back({0.5 * (a + b), u0 > 0 ? EventKind::Death : EventKind::Revival});
  }
  const auto inf = asymptotic_from_nullspace(L, atoms, 0.0, &spec);
  tr.uC_inf = unmaximized_concurrence(partial_trace_pair(inf.state(), opt.n, opt.m), opt.neg_tol);
  return tr;
}

std::vector<EntMapRow> asymptotic_entanglement_map(const FieldSpec& field, double omega,
                                                   const std::vector<double>& r_grid,
                                                   const std::vector<double>& detuning_grid,
                                                   bool magnetostatics) {
  const std::size_t nr = r_grid.size(), nd = detuning_grid.size();
  return parallel_map<EntMapRow>(nr * nd, [&](std::size_t idx) {
    const double r = r_grid[idx / nd], dw = detuning_grid[idx % nd];
    CoefficientOptions co;
    co.magnetostatics = magnetostatics;
    const CoefficientModel cm(field, pair_array(r, omega, dw), co);
    const auto st = second_order_correction(cm);
    return EntMapRow{r, dw, unmaximized_concurrence(st.state(), 1.0), magnetostatics, st.valid};
  });
}

}  // namespace qd
