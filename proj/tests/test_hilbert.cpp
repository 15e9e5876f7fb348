#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <random>

#include "qdipole/error.hpp"
#include "qdipole/hilbert.hpp"

using namespace qd;
using cplx = std::complex<double>;

namespace {

Vector basis(std::size_t i, std::size_t dim) {
  Vector v = Vector::Zero(Eigen::Index(dim));
  v(Eigen::Index(i)) = 1.0;
  return v;
}

Matrix random_state(std::size_t dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = cplx(g(rng), g(rng));
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

// explicit index contraction, atoms (n, m) kept
Matrix brute_partial_trace(const Matrix& rho, std::size_t N, std::size_t n, std::size_t m) {
  Matrix out = Matrix::Zero(4, 4);
  const std::size_t D = dim_of(N);
  auto bit = [&](std::size_t idx, std::size_t k) { return (idx >> (N - 1 - k)) & 1u; };
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) {
      bool same_rest = true;
      for (std::size_t k = 0; k < N; ++k)
        if (k != n && k != m && bit(i, k) != bit(j, k)) same_rest = false;
      if (!same_rest) continue;
      out(Eigen::Index(2 * bit(i, n) + bit(i, m)), Eigen::Index(2 * bit(j, n) + bit(j, m))) +=
          rho(Eigen::Index(i), Eigen::Index(j));
    }
  return out;
}

}  // namespace

TEST_CASE("single-qubit conventions") {
  const Matrix sp = build_pauli(0, Pauli::Plus, 1);
  CHECK((sp * basis(0, 2) - basis(1, 2)).norm() == 0.0);
  CHECK((build_pauli(0, Pauli::Minus, 1) * basis(1, 2) - basis(0, 2)).norm() == 0.0);
  const Matrix x = build_pauli(0, Pauli::X, 1), y = build_pauli(0, Pauli::Y, 1);
  CHECK((sp - 0.5 * (x + cplx(0, 1) * y)).norm() < 1e-15);
  CHECK((build_pauli(0, Pauli::Minus, 1) - 0.5 * (x - cplx(0, 1) * y)).norm() < 1e-15);
  const Matrix z = build_pauli(0, Pauli::Z, 1);
  CHECK(z(0, 0) == -1.0);
  CHECK(z(1, 1) == 1.0);
  // x y = i z
  CHECK((x * y - cplx(0, 1) * z).norm() < 1e-15);
  CHECK(excitation(0b1011) == 3);
}

TEST_CASE("embeddings") {
  const std::size_t N = 3;
  const Matrix x0 = build_pauli(0, Pauli::X, N), x1 = build_pauli(1, Pauli::X, N);
  CHECK((x0 * x1 - x1 * x0).norm() == 0.0);
  // atom 1 is the most significant bit
  CHECK((build_pauli(0, Pauli::Plus, N) * basis(0, 8) - basis(4, 8)).norm() == 0.0);
  CHECK((build_pauli(2, Pauli::Plus, N) * basis(0, 8) - basis(1, 8)).norm() == 0.0);
  for (std::size_t n = 0; n < N; ++n) {
    const Matrix z = build_pauli(n, Pauli::Z, N);
    Eigen::SelfAdjointEigenSolver<Matrix> es(z);
    int plus = 0, minus = 0;
    for (double e : es.eigenvalues()) (std::abs(e - 1) < 1e-12 ? plus : minus) += std::abs(std::abs(e) - 1) < 1e-12;
    CHECK(plus == 4);
    CHECK(minus == 4);
    CHECK((build_pauli(n, Pauli::Y, N).adjoint() - build_pauli(n, Pauli::Y, N)).norm() == 0.0);
  }
  CHECK_THROWS_AS(build_pauli(3, Pauli::X, N), ValidationError);
}

TEST_CASE("collective spin") {
  const auto s2 = collective_spin(2);
  // Sx |10> = Sx |01>
  CHECK((s2.x * basis(2, 4) - s2.x * basis(1, 4)).norm() < 1e-15);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s2.squared);
  const auto ev = es.eigenvalues();
  CHECK(std::abs(ev(0)) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ev(i) - 2) < 1e-12);
  const Vector psi = (basis(1, 4) - basis(2, 4)) / std::sqrt(2.0);
  CHECK((s2.squared * psi).norm() < 1e-15);

  for (std::size_t N : {3u, 4u, 5u}) {
    const auto s = collective_spin(N);
    CHECK((s.squared * s.z - s.z * s.squared).norm() < 1e-12);
    const Matrix sq = 0.25 * (s.x * s.x + s.y * s.y + s.z * s.z);
    CHECK((sq - s.squared).norm() < 1e-12);
    CHECK((s.plus - 0.5 * (s.x + cplx(0, 1) * s.y)).norm() < 1e-12);
    CHECK((s.minus - s.plus.adjoint()).norm() == 0.0);
  }
  // N = 4: two singlets
  Eigen::SelfAdjointEigenSolver<Matrix> es4(collective_spin(4).squared);
  int singlets = 0;
  for (double e : es4.eigenvalues()) singlets += std::abs(e) < 1e-10;
  CHECK(singlets == 2);
}

TEST_CASE("partial trace") {
  std::mt19937 rng(7);
  const Matrix rho2 = random_state(4, rng);
  CHECK((partial_trace_pair(rho2, 0, 1) - rho2).norm() < 1e-15);
  // swapped order permutes the factors
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  CHECK((partial_trace_pair(rho2, 1, 0) - swap * rho2 * swap).norm() < 1e-15);

  const Matrix a = random_state(2, rng), b = random_state(2, rng), c = random_state(2, rng);
  const Matrix prod = Eigen::kroneckerProduct(a, Eigen::kroneckerProduct(b, c)).eval();
  CHECK((partial_trace_pair(prod, 0, 2) - Eigen::kroneckerProduct(a, c).eval()).norm() < 1e-14);

  // W-like state on three atoms
  Vector w = Vector::Zero(8);
  w(1) = 0.5;
  w(2) = cplx(0, 0.5);
  w(4) = std::sqrt(0.5);
  const Matrix rw = w * w.adjoint();
  for (auto [n, m] : {std::pair{0, 1}, {0, 2}, {1, 2}, {2, 0}})
    CHECK((partial_trace_pair(rw, n, m) - brute_partial_trace(rw, 3, n, m)).norm() < 1e-15);
  const Matrix r4 = random_state(16, rng);
  const Matrix p = partial_trace_pair(r4, 1, 3);
  CHECK((p - brute_partial_trace(r4, 4, 1, 3)).norm() < 1e-14);
  CHECK(std::abs(p.trace() - 1.0) < 1e-14);
  CHECK(hermiticity_residual(p) < 1e-15);
  CHECK_THROWS_AS(partial_trace_pair(rw, 1, 1), ValidationError);
}

TEST_CASE("state specs") {
  CHECK(std::abs(state_from_spec("ground", 2)(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(state_from_spec("excited_all", 3)(7, 7) - 1.0) < 1e-15);
  const Matrix bm = state_from_spec("bell_minus", 2);
  CHECK(std::abs(bm(1, 2) + 0.5) < 1e-15);
  CHECK(std::abs(state_from_spec("bell_plus", 2)(1, 2) - 0.5) < 1e-15);
  const Vector k = ket_from_spec("amp:1,0,0,3", 2);
  CHECK(std::abs(k.norm() - 1.0) < 1e-15);
  CHECK(std::abs(k(3) / k(0) - 3.0) < 1e-14);
  const Vector kc = ket_from_spec("amp:1,0.5+2j,0,-1j", 2);
  CHECK(std::abs(kc(1) / kc(0) - cplx(0.5, 2)) < 1e-14);
  CHECK(std::abs(kc(3) / kc(0) - cplx(0, -1)) < 1e-14);
  const Matrix rho = state_from_spec("amp:0.31622776601683794,0,0,0.9486832980505138", 2);
  CHECK(std::abs(rho(0, 0) - 0.1) < 1e-14);
  CHECK_NOTHROW(check_density(rho, 1e-12));
  CHECK_THROWS(ket_from_spec("amp:1,0", 2));
  CHECK_THROWS(ket_from_spec("amp:0,0,0,0", 2));
  CHECK_THROWS(ket_from_spec("nonsense", 2));
}

TEST_CASE("density checks") {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 1.1;
  rho(1, 1) = -0.1;
  CHECK(min_eigenvalue(rho) == doctest::Approx(-0.1));
  CHECK_NOTHROW(check_density(rho, 0.2));
  CHECK_THROWS_AS(check_density(rho, 0.05), NumericalStateError);
  rho(0, 1) = 1e-6;
  CHECK(hermiticity_residual(rho) > 0.0);
  CHECK_THROWS_AS(check_density(rho, 1.0), NumericalStateError);
}
