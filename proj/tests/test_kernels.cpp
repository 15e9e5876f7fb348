#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qdipole/error.hpp"
#include "qdipole/kernels.hpp"
#include "qdipole/specfun.hpp"

using namespace qd;

namespace {

FieldSpec scalar(double T = 0.0, double g0 = 1e-3, double r0 = 1e-3) {
  FieldSpec f;
  f.temperature = T;
  f.gamma0 = g0;
  f.cutoff = r0;
  return f;
}

}  // namespace

TEST_CASE("scalar damping kernel") {
  const auto f = scalar();
  const auto atoms = pair_array(10.0, 1.0);
  CHECK(damping_kernel_freq(f, atoms, 0, 0, 0.0) == doctest::Approx(f.gamma0).epsilon(1e-15));
  CHECK(std::abs(damping_kernel_freq(f, atoms, 0, 1, 1.0) - f.gamma0 * specfun::sinc(10.0)) < 1e-14 * f.gamma0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-20, 20);
  for (int k = 0; k < 200; ++k) {
    const double w = U(rng);
    const double a = damping_kernel_freq(f, atoms, 0, 1, w);
    CHECK(std::abs(a - damping_kernel_freq(f, atoms, 1, 0, w)) < 1e-13 * f.gamma0);
    CHECK(std::abs(a - damping_kernel_freq(f, atoms, 0, 1, -w)) < 1e-13 * f.gamma0);
  }
  // envelope of the cross kernel
  for (double r : {1.5, 4.0, 30.0, 200.0}) {
    const auto p = pair_array(r, 1.0);
    CHECK(std::abs(damping_kernel_freq(f, p, 0, 1, 1.0)) <= f.gamma0 / r);
  }
}

TEST_CASE("electromagnetic damping kernel") {
  FieldSpec f = scalar();
  f.kind = FieldKind::Electromagnetic;
  // dipoles along z, separation along x: perpendicular to r -> FS1 only
  const auto atoms = pair_array(3.0, 1.0);
  for (double w : {0.1, 0.7, 1.0, 2.5}) {
    CHECK(std::abs(damping_kernel_freq(f, atoms, 0, 1, w) - f.gamma0 * specfun::fs1(3.0 * w)) < 1e-15);
    // tracks the scalar curve: FS1 - sinc = -z^2/30 + O(z^4)
    const double z = 0.1 * w;
    CHECK(std::abs(specfun::fs1(z) - specfun::sinc(z)) <= 1.01 * z * z / 30);
  }
  // dipoles parallel to the separation: FS1 + FS0
  std::vector<Atom> v(2);
  v[1].position = {3.0, 0, 0};
  v[0].dipole = v[1].dipole = {1, 0, 0};
  const AtomArray along(v);
  CHECK(std::abs(damping_kernel_freq(f, along, 0, 1, 1.0) -
                 f.gamma0 * (specfun::fs1(3.0) + specfun::fs0(3.0))) < 1e-15);
  CHECK(damping_kernel_freq(f, along, 0, 0, 0.0) == doctest::Approx(f.gamma0));
}

TEST_CASE("noise kernel") {
  const auto atoms = pair_array(2.0, 1.0);
  const auto f0 = scalar(0.0);
  CHECK(noise_kernel_freq(f0, atoms, 0, 1, 1.0) == 0.0);
  CHECK(noise_kernel_freq(f0, atoms, 0, 0, -1.0) > 0.0);

  const auto hot = scalar(100.0);
  for (double w : {-1.0, 0.5, 1.0}) {
    const double classical = 2 * 100.0 * damping_kernel_freq(hot, atoms, 0, 0, w);
    CHECK(std::abs(noise_kernel_freq(hot, atoms, 0, 0, w) / classical - 1) < 0.01);
  }
  const auto f1 = scalar(1.0);
  for (double w : {0.3, 1.0, 2.7}) {
    const double ratio = noise_kernel_freq(f1, atoms, 0, 1, w) / noise_kernel_freq(f1, atoms, 0, 1, -w);
    CHECK(std::abs(ratio - std::exp(-w)) < 1e-10 * std::exp(-w));
  }
  // non-negative at negative frequency for any T; everywhere when T > 0
  for (double T : {0.0, 0.1, 1.0, 10.0})
    for (double w : {-5.0, -1.0, -0.01}) CHECK(noise_kernel_freq(scalar(T), atoms, 0, 0, w) >= 0.0);
  for (double w : {0.01, 0.5, 1.2}) CHECK(noise_kernel_freq(f1, atoms, 0, 0, w) >= 0.0);
}

TEST_CASE("noise kernel matrix is positive where sinc > 0") {
  const auto f = scalar(0.5);
  const auto atoms = ring_array(3, 0.8, 1.0);
  for (double w : {-1.0, -0.5, 0.5, 1.0}) {
    Eigen::Matrix3d M;
    for (std::size_t n = 0; n < 3; ++n)
      for (std::size_t m = 0; m < 3; ++m) M(Eigen::Index(n), Eigen::Index(m)) = noise_kernel_freq(f, atoms, n, m, w);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(M);
    CHECK(es.eigenvalues().minCoeff() >= -1e-15);
  }
}

TEST_CASE("time-domain damping kernel") {
  const auto f = scalar();
  const auto atoms = pair_array(2.0, 1.0);
  CHECK(damping_kernel_time(f, atoms, 0, 1, 2.5) == 0.0);
  CHECK(damping_kernel_time(f, atoms, 0, 1, -2.5) == 0.0);
  CHECK(damping_kernel_time(f, atoms, 0, 1, 1.0) == doctest::Approx(f.gamma0 / 2 / 4.0));
  const double area = oracle::gk([&](double t) { return damping_kernel_time(f, atoms, 0, 1, t); }, -2.0, 2.0);
  CHECK(std::abs(area - f.gamma0 / 2) < 1e-15);
  // two-sided Fourier transform of the rectangle: (gamma0/2) sinc(r w), i.e.
  // half of the frequency-domain kernel (the two forms differ by this factor)
  const double w = 1.0;
  const double ft =
      oracle::gk([&](double t) { return std::cos(w * t) * damping_kernel_time(f, atoms, 0, 1, t); }, -2.0, 2.0);
  CHECK(std::abs(ft - 0.5 * damping_kernel_freq(f, atoms, 0, 1, w)) < 1e-8 * f.gamma0);

  FieldSpec em = f;
  em.kind = FieldKind::Electromagnetic;
  CHECK_THROWS_AS(damping_kernel_time(em, atoms, 0, 1, 0.5), UnsupportedError);
}

TEST_CASE("field and atom validation") {
  auto f = scalar(0.0, 1e-3, 0.5);
  CHECK_THROWS_WITH_AS(f.validate(pair_array(0.4, 1.0)), doctest::Contains("cutoff must be below separations"),
                       ValidationError);
  f.cutoff = 1e-3;
  CHECK_NOTHROW(f.validate(pair_array(0.4, 1.0)));
  f.temperature = -1;
  CHECK_THROWS_AS(f.validate(pair_array(0.4, 1.0)), ValidationError);
  std::vector<Atom> bad(1);
  bad[0].omega = 0.0;
  CHECK_THROWS_AS(AtomArray(bad).validate(), ValidationError);
  CHECK_THROWS_AS(AtomArray().validate(), ValidationError);
  CHECK(separation(scalar(), pair_array(2.0, 1.0), 1, 1) == 1e-3);
  CHECK_THROWS_AS(separation(scalar(), pair_array(2.0, 1.0), 2, 1), ValidationError);
}

TEST_CASE("geometry helpers") {
  const auto ring = ring_array(5, 0.3, 1.0);
  for (std::size_t n = 0; n < 5; ++n) CHECK(ring.distance(n, (n + 1) % 5) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(ring.min_separation() == doctest::Approx(0.3).epsilon(1e-12));
  const auto tet = simplex_array(4, 0.2, 1.0);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t m = n + 1; m < 4; ++m) CHECK(tet.distance(n, m) == doctest::Approx(0.2).epsilon(1e-12));
  const auto p = pair_array(1.0, 1.0, 0.1);
  CHECK(p[0].omega == doctest::Approx(0.95));
  CHECK(p[1].omega == doctest::Approx(1.05));
}
