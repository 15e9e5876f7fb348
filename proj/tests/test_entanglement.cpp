#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "qdipole/entanglement.hpp"
#include "qdipole/error.hpp"

using namespace qd;
using cplx = std::complex<double>;

namespace {

// Wootters via the Hermitian form sqrt(rho) rho~ sqrt(rho)
double uc_oracle(const Matrix& rho) {
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const Matrix tilde = yy * rho.conjugate() * yy;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix s = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es2(Matrix(s * tilde * s));
  Eigen::VectorXd l = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(l.data(), l.data() + 4, std::greater<>());
  return l(0) - l(1) - l(2) - l(3);
}

Matrix random_pure(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vector v(4);
  for (int i = 0; i < 4; ++i) v(i) = cplx(g(rng), g(rng));
  v.normalize();
  return v * v.adjoint();
}

Matrix random_mixed(std::mt19937& rng, int rank) {
  Matrix rho = Matrix::Zero(4, 4);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int k = 0; k < rank; ++k) rho += u(rng) * random_pure(rng);
  return rho / rho.trace();
}

Matrix random_unitary2(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Matrix a(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = cplx(g(rng), g(rng));
  return Eigen::HouseholderQR<Matrix>(a).householderQ();
}

}  // namespace

TEST_CASE("reference states") {
  const Matrix bell = state_from_spec("bell_minus", 2);
  CHECK(std::abs(unmaximized_concurrence(bell) - 1.0) < 1e-12);
  CHECK(std::abs(concurrence(state_from_spec("bell_plus", 2)) - 1.0) < 1e-12);
  CHECK(std::abs(log_negativity(bell) - 1.0) < 1e-12);
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    std::normal_distribution<double> g;
    Vector a(2), b(2);
    a << cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
    b << cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
    const Vector psi = Eigen::kroneckerProduct(a.normalized(), b.normalized());
    const Matrix rho = psi * psi.adjoint();
    CHECK(std::abs(unmaximized_concurrence(rho)) < 1e-7);
    CHECK(std::abs(log_negativity(rho)) < 1e-12);
  }
  // two-qubit Gibbs state
  for (double T : {0.2, 1.0, 5.0}) {
    const AtomArray atoms = pair_array(1.0, 1.0, 0.3);
    const Matrix rho = boltzmann_state(atoms, T);
    const double w1 = 0.85, w2 = 1.15;
    const double z0 = (1 + std::exp(-w1 / T)) * (1 + std::exp(-w2 / T));
    CHECK(std::abs(unmaximized_concurrence(rho) + 2 * std::exp(-(w1 + w2) / (2 * T)) / z0) < 1e-12);
  }
}

TEST_CASE("random states against the Hermitian form") {
  std::mt19937 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Matrix rho = random_mixed(rng, 1 + k % 4);
    CHECK(std::abs(unmaximized_concurrence(rho) - uc_oracle(rho)) < 1e-7);
  }
}

TEST_CASE("invariances") {
  std::mt19937 rng(9);
  for (int k = 0; k < 50; ++k) {
    const Matrix rho = random_mixed(rng, 2);
    const Matrix U = Eigen::kroneckerProduct(random_unitary2(rng), random_unitary2(rng));
    CHECK(std::abs(unmaximized_concurrence(U * rho * U.adjoint()) - unmaximized_concurrence(rho)) < 1e-10);
  }
  // Lipschitz-type continuity
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const Matrix rho = random_mixed(rng, 4);
    Matrix d = random_mixed(rng, 4) - 0.25 * Matrix::Identity(4, 4);
    d *= 1e-6 / d.norm();
    worst = std::max(worst, std::abs(unmaximized_concurrence(rho + d) - unmaximized_concurrence(rho)) / 1e-6);
  }
  CHECK(worst < 10);
}

TEST_CASE("negativity and concurrence agree on entanglement") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    const double p = u(rng);
    const Matrix rho = p * random_pure(rng) + (1 - p) * 0.25 * Matrix::Identity(4, 4);
    const double uc = unmaximized_concurrence(rho), ln = log_negativity(rho);
    if (std::abs(uc) < 1e-9) continue;
    CHECK((uc > 0) == (ln > 1e-12));
    CHECK(concurrence(rho) == doctest::Approx(std::max(0.0, uc)));
    ++checked;
  }
  CHECK(checked > 450);
}

TEST_CASE("tolerance on negative eigenvalues") {
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 0.5;
  rho(3, 3) = 0.5;
  rho(1, 1) = -1e-3;
  rho(2, 2) = 1e-3;  // rho rho~ eigenvalue rho_11 rho_22 = -1e-6
  rho(0, 3) = rho(3, 0) = 0.1;
  CHECK_THROWS_AS(unmaximized_concurrence(rho), NumericalStateError);
  CHECK_NOTHROW(unmaximized_concurrence(rho, 1e-2));
}

TEST_CASE("trajectory events") {
  FieldSpec f;
  f.gamma0 = 1e-3;
  f.cutoff = 1e-3;
  const AtomArray atoms = pair_array(2 * std::numbers::pi / 20, 1.0);
  const Superoperator L = build_liouvillian(f, atoms);
  const Matrix rho0 = state_from_spec("amp:0.31622776601683794,0,0,0.9486832980505138", 2);
  TrajectoryOptions opt;
  opt.gamma = 1e-3;
  opt.band = 1e-3;
  opt.neg_tol = 5e-6;
  std::vector<double> coarse, fine;
  for (double t = 0; t <= 1500; t += 2.0) coarse.push_back(t);
  for (double t = 0; t <= 1500; t += 1.0) fine.push_back(t);
  const auto a = concurrence_trajectory(L, atoms, rho0, coarse, opt);
  const auto b = concurrence_trajectory(L, atoms, rho0, fine, opt);
  REQUIRE(!a.events.empty());
  CHECK(a.events.front().kind == EventKind::Death);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].kind == b.events[i].kind);
    CHECK(std::abs(a.events[i].time - b.events[i].time) < 0.05 * b.events[i].time);
  }
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    CHECK(a.C[i] >= 0.0);
    CHECK(a.C[i] <= 1.0);
    if (a.uC[i] <= 0) CHECK(a.C[i] == 0.0);
  }
  CHECK(std::abs(a.uC.front() - 2 * std::sqrt(0.09)) < 1e-12);
  CHECK(a.window == doctest::Approx(std::numbers::pi));
  CHECK(std::abs(a.uC_inf) < 10 * 1e-3);
}
