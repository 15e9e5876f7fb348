#pragma once
// Independent reference computations used by the tests. Nothing here calls
// into the closed forms under test.

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

inline double sinc(double x) { return x == 0 ? 1.0 : std::sin(x) / x; }

// alpha~(eps) = 2 gamma~(eps) eps / (e^{eps/T} - 1), gamma~ = g0 sinc(r eps)
inline double alpha(double g0, double r, double eps, double T) {
  const double g = g0 * sinc(r * eps);
  if (T == 0) return eps < 0 ? -2 * g * eps : 0.0;
  const double x = eps / T;
  if (std::abs(x) < 1e-12) return 2 * g * T;
  if (x > 700) return 0.0;
  return 2 * g * eps / std::expm1(x);
}

template <class F>
double gk(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 8, 1e-13);
}

// Im A(w) = (1/2pi) PV int alpha(e)/(e - w) de
//         = -(1/2pi) int_0^inf [alpha(w-u) - alpha(w+u)]/u du   (regular at u = 0)
// Panels of width <= pi/r up to U, then the vacuum asymptote
// alpha(w-u) -> -2 g0 sin(r(w-u))/r by Ooura's Fourier quadrature.
inline double pv_imag(double g0, double r, double w, double T) {
  const auto f = [&](double u) {
    if (u == 0) {
      const double h = 1e-6 * (1 + std::abs(w));
      return (alpha(g0, r, w - h, T) - alpha(g0, r, w + h, T)) / (2 * h);
    }
    return (alpha(g0, r, w - u, T) - alpha(g0, r, w + u, T)) / u;
  };
  // beyond U the thermal parts are below e^{-45}
  const double U = std::abs(w) + 45 * T + 10;
  const double width = std::min(pi / r, 1.0);
  double s = 0, a = 0;
  const double kink = std::abs(w);
  while (a < U) {
    double b = std::min(a + width, U);
    if (a < kink && kink < b) b = kink;
    s += gk(f, a, b);
    a = b;
  }
  // tail: (2 g0/r) int_U^inf sin(r(u - w))/u du, u = U + x
  static boost::math::quadrature::ooura_fourier_sin<double> fsin;
  static boost::math::quadrature::ooura_fourier_cos<double> fcos;
  const double phi = r * (U - w);
  const auto g = [&](double x) { return 1.0 / (x + U); };
  const double tail = (2 * g0 / r) * (std::cos(phi) * fsin.integrate(g, r).first +
                                      std::sin(phi) * fcos.integrate(g, r).first);
  return -(s + tail) / (2 * pi);
}

}  // namespace oracle
