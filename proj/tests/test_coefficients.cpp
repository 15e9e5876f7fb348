#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qdipole/coefficients.hpp"
#include "qdipole/error.hpp"

using namespace qd;
using cplx = std::complex<double>;

namespace {

constexpr double g0 = 1e-3;

FieldSpec scalar(double T = 0.0, double r0 = 1e-3) {
  FieldSpec f;
  f.temperature = T;
  f.gamma0 = g0;
  f.cutoff = r0;
  return f;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// A(w; t) = (1/2pi) int_{-L}^{L} alpha(e) (e^{i(e-w)t} - 1)/(i(e-w)) de
cplx fulltime_oracle(double r, double w, double T, double t, double L) {
  const auto kern = [&](double e, bool imag) {
    const double x = e - w;
    const double a = oracle::alpha(g0, r, e, T);
    if (std::abs(x) < 1e-9) return imag ? 0.0 : a * t;
    return imag ? a * (1 - std::cos(x * t)) / x : a * std::sin(x * t) / x;
  };
  const double width = oracle::pi / (t + r + 1.0);
  double re = 0, im = 0, a = -L;
  while (a < L) {
    double b = std::min(a + width, L);
    if (a < 0 && b > 0) b = 0;  // kink of the vacuum noise
    re += oracle::gk([&](double e) { return kern(e, false); }, a, b);
    im += oracle::gk([&](double e) { return kern(e, true); }, a, b);
    a = b;
  }
  return cplx(re, im) / (2 * oracle::pi);
}

}  // namespace

TEST_CASE("zero-temperature closed form against the principal-value oracle") {
  CHECK(std::abs(coef::imag_zeroT(g0, 10.0, 1.0) - oracle::pv_imag(g0, 10.0, 1.0, 0.0)) < 1e-8 * g0);
  for (double w : {0.1, 0.5, 1.0, 2.0, 5.0})
    for (double s : {1.0, -1.0})
      for (double r : {0.3, 2.0}) {
        CAPTURE(s * w);
        CAPTURE(r);
        CHECK(rel(coef::imag_zeroT(g0, r, s * w), oracle::pv_imag(g0, r, s * w, 0.0)) < 1e-6);
      }
  CHECK(coef::imag_zeroT(g0, 2.0, 0.0) == doctest::Approx(-g0 / 4.0).epsilon(1e-15));
  // approaching w = 0 from either side is continuous
  CHECK(std::abs(coef::imag_zeroT(g0, 2.0, 1e-9) + g0 / 4.0) < 1e-7 * g0);
}

TEST_CASE("Lerch finite-temperature form") {
  CHECK(std::abs(coef::imag_lerch(g0, 5.0, 1.0, 0.5) - oracle::pv_imag(g0, 5.0, 1.0, 0.5)) < 1e-6 * g0);
  for (double w : {-2.0, -0.5, 0.3, 1.0})
    for (double T : {0.1, 1.0, 5.0}) {
      CAPTURE(w);
      CAPTURE(T);
      CHECK(rel(coef::imag_lerch(g0, 1.5, w, T), oracle::pv_imag(g0, 1.5, w, T)) < 1e-6);
    }
  for (double w : {-1.0, 1.0, 3.0})
    CHECK(std::abs(coef::imag_lerch(g0, 5.0, w, 1e-4) - coef::imag_zeroT(g0, 5.0, w)) < 1e-6 * g0);
  CHECK(coef::imag_lerch(g0, 3.0, 0.0, 0.7) == doctest::Approx(-g0 / 6.0).epsilon(1e-15));
  // smooth through w = 0
  CHECK(std::abs(coef::imag_lerch(g0, 3.0, 1e-7, 0.7) + g0 / 6.0) < 1e-6 * g0);
  CHECK_THROWS_AS(coef::imag_lerch(g0, 3.0, 1.0, 0.0), DomainError);
}

TEST_CASE("low-temperature expansion") {
  const double ref = coef::imag_lerch(g0, 5.0, 1.0, 0.05);
  CHECK(std::abs(coef::imag_lowT(g0, 5.0, 1.0, 0.05) - ref) < 1e-4 * std::abs(ref));
  CHECK(std::abs(coef::imag_lowT(g0, 5.0, 1.0, 1e-5) - coef::imag_zeroT(g0, 5.0, 1.0)) < 1e-9 * g0);
  const double a = coef::imag_lowT(g0, 5.0, 1.0, 0.05, 200), b = coef::imag_lowT(g0, 5.0, 1.0, 0.05, 400);
  CHECK(std::abs(a - b) < 1e-8 * std::abs(a));
  for (double w : {-2.0, -0.5, 0.5, 2.0}) {
    const double T = 0.1;
    CHECK(rel(coef::imag_lowT(g0, 2.0, w, T), coef::imag_lerch(g0, 2.0, w, T)) < 1e-4);
    CHECK(rel(coef::imag_lowT(g0, 2.0, w, T), oracle::pv_imag(g0, 2.0, w, T)) < 1e-5);
  }
  CHECK_THROWS_AS(coef::imag_lowT(g0, 5.0, 0.01, 0.05), DomainError);
  CHECK_THROWS_AS(coef::imag_lowT(g0, 5.0, 1.0, 0.0), DomainError);
}

TEST_CASE("real part is half the noise kernel") {
  const auto atoms = pair_array(2.0, 1.0);
  CHECK(coeff_real(scalar(), atoms, 0, 1, 1.0) == 0.0);
  CHECK(coeff_real(scalar(), atoms, 0, 1, -1.0) == doctest::Approx(g0 * std::sin(2.0) / 2.0).epsilon(1e-14));
  const double hot = coeff_real(scalar(100.0), atoms, 0, 0, 1.0);
  CHECK(std::abs(hot / (100.0 * g0 * std::sin(1e-3) / 1e-3) - 1) < 0.01);

  const CoefficientModel model(scalar(0.3), atoms);
  const auto set = tabulate(model);
  for (std::size_t n = 0; n < 2; ++n)
    for (std::size_t m = 0; m < 2; ++m) {
      CHECK(set.at(n, m, +1).real() == 0.5 * noise_kernel_freq(scalar(0.3), atoms, n, m, +1.0));
      CHECK(set.at(n, m, -1).real() == 0.5 * noise_kernel_freq(scalar(0.3), atoms, n, m, -1.0));
    }
}

TEST_CASE("model dispatch and the wrappers") {
  const auto atoms = pair_array(2.0, 1.0);
  CHECK(CoefficientModel(scalar(0.0), atoms).branch() == Branch::ZeroT);
  CHECK(CoefficientModel(scalar(0.5), atoms).branch() == Branch::FiniteTLerch);
  CoefficientOptions lo;
  lo.branch = Branch::LowTExpansion;
  const CoefficientModel low(scalar(0.05), atoms, lo);
  const CoefficientModel lerch(scalar(0.05), atoms);
  CHECK(rel(low.bare_imag(0, 1, -1.0), lerch.bare_imag(0, 1, -1.0)) < 1e-4);
  CHECK_THROWS_AS(CoefficientModel(scalar(0.0), atoms, lo), ValidationError);
  FieldSpec em = scalar();
  em.kind = FieldKind::Electromagnetic;
  CHECK_THROWS_AS(CoefficientModel(em, atoms), UnsupportedError);
  CHECK(coeff_imag_zeroT(scalar(), atoms, 0, 1, 1.0) == coef::imag_zeroT(g0, 2.0, 1.0));
  CHECK(coeff_imag_zeroT(scalar(), atoms, 1, 1, 1.0) == coef::imag_zeroT(g0, 1e-3, 1.0));
  CHECK(coeff_imag_finiteT(scalar(), atoms, 0, 1, 1.0, 0.4) == coef::imag_lerch(g0, 2.0, 1.0, 0.4));
}

TEST_CASE("renormalization") {
  const auto atoms = pair_array(2.0, 1.0);
  for (double r0 : {1e-2, 1e-3}) {
    const CoefficientModel m(scalar(0.0, r0), atoms);
    CHECK(std::abs(m.bare_imag(0, 0, 0.0) + g0 / (2 * r0)) < 1e-10 * g0 / r0);
    const auto ct = renormalization_counterterm(scalar(0.0, r0), atoms);
    CHECK(ct.shifts[0] == doctest::Approx(-g0 / (2 * r0)));
    // the counterterm is proportional to the identity
    const auto U = ct.operator_matrix();
    CHECK((U - U(0, 0) * Eigen::MatrixXcd::Identity(4, 4)).norm() == 0.0);
  }
  // the renormalized single-atom level shift depends on r0 only logarithmically
  const AtomArray one({Atom{}});
  const double bare1 = level_shift(scalar(0.0, 1e-3), one, 0, false);
  const double bare2 = level_shift(scalar(0.0, 5e-4), one, 0, false);
  const double ren1 = level_shift(scalar(0.0, 1e-3), one, 0, true);
  const double ren2 = level_shift(scalar(0.0, 5e-4), one, 0, true);
  CHECK(std::abs(bare2 / bare1 - 2) < 0.01);
  CHECK(std::abs(ren2 / ren1 - 1) < 0.25);

  // cross terms keep their static part unless magnetostatics is switched off
  const CoefficientModel with(scalar(), atoms);
  CHECK(with(0, 1, 0.0).imag() == doctest::Approx(-g0 / 4.0));
  CoefficientOptions off;
  off.magnetostatics = false;
  const CoefficientModel without(scalar(), atoms, off);
  CHECK(std::abs(without(0, 1, 0.0).imag()) < 1e-18);
  CHECK(without(0, 1, 1.0).imag() == doctest::Approx(with(0, 1, 1.0).imag() + g0 / 4.0));
  CHECK(without(0, 0, 1.0) == with(0, 0, 1.0));
}

TEST_CASE("full-time coefficients") {
  const double r0 = 0.05, L = 50.0 / r0;
  CHECK(std::abs(coef::fulltime(g0, 10.0, -1.0, 0.0, 0.0, L)) == 0.0);
  for (double t : {5.0, 10.5, 25.0}) {
    CAPTURE(t);
    const cplx a = coef::fulltime(g0, 10.0, -1.0, 0.0, t, L), b = fulltime_oracle(10.0, -1.0, 0.0, t, L);
    CHECK(std::abs(a - b) < 1e-8 * g0);
  }
  for (double t : {1.0, 8.0})
    for (double w : {-1.0, 1.0}) {
      CAPTURE(t);
      CAPTURE(w);
      const cplx a = coef::fulltime(g0, 2.0, w, 0.5, t, L), b = fulltime_oracle(2.0, w, 0.5, t, L);
      CHECK(std::abs(a - b) < 1e-8 * g0);
    }
  // late times approach the asymptotic coefficient
  const auto atoms = pair_array(10.0, 1.0);
  for (double T : {0.0, 0.5}) {
    FieldSpec f = scalar(T, 1e-3);
    const CoefficientModel m(f, atoms, CoefficientOptions{false, true, {}, kLowTDefaultKmax});
    const cplx late = coeff_fulltime(f, atoms, 0, 1, -1.0, 50.0 / g0);
    const cplx inf = m(0, 1, -1.0);
    CHECK(std::abs(late - inf) < 1e-3 * std::abs(inf));
  }
  CHECK_THROWS_AS(coeff_fulltime(scalar(), atoms, 0, 1, -1.0, -1.0), DomainError);
}
