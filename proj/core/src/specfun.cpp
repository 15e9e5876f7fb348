#include <algorithm>
#include "qdipole/specfun.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qdipole/error.hpp"

namespace qd::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

struct GslQuiet {
  GslQuiet() { gsl_set_error_handler_off(); }
};
const GslQuiet gsl_quiet;

double checked(int status, const gsl_sf_result& r, const char* what, double z) {
  if (status != GSL_SUCCESS || !std::isfinite(r.val)) {
    std::ostringstream os;
    os << what << "(" << z << "): " << gsl_strerror(status);
    throw DomainError(os.str());
  }
  return r.val;
}

// modified Lentz on e^w E1(w) = 1/(w+1- 1/(w+3- 4/(w+5- ...)))
cplx expe1_cf(cplx w) {
  constexpr double tiny = 1e-300;
  cplx f = w + 1.0;
  if (f == 0.0) f = tiny;
  cplx C = f, D = 0.0;
  for (int n = 1; n < 20000; ++n) {
    const double a = -double(n) * n;
    const cplx b = w + double(2 * n + 1);
    D = b + a * D;
    if (D == 0.0) D = tiny;
    D = 1.0 / D;
    C = b + a / C;
    if (C == 0.0) C = tiny;
    const cplx d = C * D;
    f *= d;
    if (std::abs(d - 1.0) < 1e-16) return 1.0 / f;
  }
  std::ostringstream os;
  os << "e1_complex: continued fraction did not converge at w=" << w;
  throw ConvergenceError(os.str());
}

cplx e1_series(cplx w) {
  cplx term = 1.0, sum = 0.0;
  const double n_min = std::abs(w);
  for (int k = 1; k < 5000; ++k) {
    term *= -w / double(k);
    const cplx add = term / double(k);
    sum += add;
    if (k > n_min && std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(w) - sum;
}

bool use_series(cplx w) {
  const double a = std::abs(w);
  if (a < kE1SeriesRadius) return true;
  return w.real() < 0 && std::abs(w.imag()) < std::min(kE1SeriesLeftImag, -w.real()) &&
         a < kE1SeriesLeftRadius;
}

void check_e1_domain(cplx w) {
  if (w == 0.0 || (w.imag() == 0.0 && w.real() < 0.0) || !std::isfinite(w.real()) ||
      !std::isfinite(w.imag())) {
    std::ostringstream os;
    os << "e1_complex: argument " << w << " on the branch cut or non-finite";
    throw DomainError(os.str());
  }
}

}  // namespace

double sinc(double x) {
  if (std::abs(x) < kSincSeriesBelow) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double fs1(double z) {
  if (std::abs(z) < kFsSeriesBelow) {
    const double q = z * z;
    return 1.0 + q * (-1.0 / 5 + q * (3.0 / 280 + q * (-1.0 / 3780 + q * (1.0 / 266112 - q / 28828800))));
  }
  return 1.5 * ((z * z - 1.0) * std::sin(z) + z * std::cos(z)) / (z * z * z);
}

double fs0(double z) {
  if (std::abs(z) < kFsSeriesBelow) {
    const double q = z * z;
    return q * (1.0 / 10 + q * (-1.0 / 140 + q * (1.0 / 5040 + q * (-1.0 / 332640 + q / 34594560))));
  }
  return -1.5 * ((z * z - 3.0) * std::sin(z) + 3.0 * z * std::cos(z)) / (z * z * z);
}

double Si(double z) {
  gsl_sf_result r;
  return checked(gsl_sf_Si_e(z, &r), r, "Si", z);
}

double si(double z) { return Si(z) - kPi / 2; }

double ci(double z) {
  if (!(z > 0.0)) {
    std::ostringstream os;
    os << "ci: requires z > 0, got " << z;
    throw DomainError(os.str());
  }
  gsl_sf_result r;
  return checked(gsl_sf_Ci_e(z, &r), r, "ci", z);
}

double cin(double z) {
  z = std::abs(z);
  if (z < kCinSeriesBelow) {
    // sum_{k>=1} (-1)^{k+1} z^{2k} / (2k (2k)!)
    const double q = z * z;
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 30; ++k) {
      term *= q / ((2.0 * k - 1) * (2.0 * k));
      const double add = (k % 2 ? 1.0 : -1.0) * term / (2.0 * k);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return kEulerGamma + std::log(z) - ci(z);
}

double ei(double z) {
  if (z == 0.0 || !std::isfinite(z)) {
    std::ostringstream os;
    os << "ei: requires finite z != 0, got " << z;
    throw DomainError(os.str());
  }
  const double v = std::expint(z);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "ei: overflow at z=" << z;
    throw DomainError(os.str());
  }
  return v;
}

cplx expe1(cplx w) {
  check_e1_domain(w);
  if (use_series(w)) return std::exp(w) * e1_series(w);
  return expe1_cf(w);
}

cplx e1_complex(cplx w) {
  check_e1_domain(w);
  if (use_series(w)) return e1_series(w);
  return std::exp(-w) * expe1_cf(w);
}

cplx lerch_phi1(cplx z, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << "lerch_phi1: requires lambda > 0, got " << lambda;
    throw DomainError(os.str());
  }
  if (z.imag() == 0.0 && z.real() <= -1.0 && z.real() == std::floor(z.real())) {
    std::ostringstream os;
    os << "lerch_phi1: z=" << z.real() << " is a negative integer";
    throw DomainError(os.str());
  }
  if (lambda * 1.0 > 745.0) return 0.0;

  if (lambda >= kLerchDirectLambdaMin) {
    cplx sum = 0.0;
    const double q = std::exp(-lambda);
    double wk = 1.0;
    const long cap = 4'000'000;
    for (long k = 1; k <= cap; ++k) {
      wk *= q;
      const cplx term = wk / (double(k) + z);
      sum += term;
      if (std::abs(term) < 1e-16 * std::abs(sum) && double(k) * lambda > 1.0) return sum;
      if (wk == 0.0) return sum;
    }
    std::ostringstream os;
    os << "lerch_phi1: no convergence after " << cap << " terms (lambda=" << lambda << ", z=" << z
       << ")";
    throw ConvergenceError(os.str());
  }

  // small lambda: explicit head, Euler-Maclaurin tail with the exact
  // integral int_K^inf e^{-lambda x}/(x+z) dx = e^{-lambda K} e^{w} E1(w),
  // w = lambda (K + z)
  const int K = 64 + int(std::ceil(std::abs(z)));
  if (std::abs(double(K) + z) < 32.0) {
    std::ostringstream os;
    os << "lerch_phi1: tail expansion unreliable near pole (lambda=" << lambda << ", z=" << z << ")";
    throw ConvergenceError(os.str());
  }
  cplx sum = 0.0;
  for (int k = 1; k < K; ++k) sum += std::exp(-lambda * k) / (double(k) + z);

  const double x = K;
  const cplx u = x + z;
  // f^{(n)}(x) for f = e^{-lambda x}/(x+z)
  auto deriv = [&](int n) {
    cplx acc = 0.0;
    double binom = 1.0;
    double fact = 1.0;  // j!
    for (int j = 0; j <= n; ++j) {
      if (j > 0) {
        binom *= double(n - j + 1) / j;
        fact *= j;
      }
      const double sgn = (j % 2) ? -1.0 : 1.0;
      acc += binom * std::pow(-lambda, n - j) * sgn * fact / std::pow(u, j + 1);
    }
    return std::exp(-lambda * x) * acc;
  };
  const cplx integral = std::exp(-lambda * x) * expe1(lambda * u);
  // B2/2!, B4/4!, B6/6!, B8/8!
  constexpr double b[] = {1.0 / 12, -1.0 / 720, 1.0 / 30240, -1.0 / 1209600};
  cplx tail = integral + 0.5 * deriv(0);
  for (int p = 1; p <= 4; ++p) tail -= b[p - 1] * deriv(2 * p - 1);
  return sum + tail;
}

double nbar(double w, double T) {
  if (!(w > 0.0)) {
    std::ostringstream os;
    os << "nbar: requires w > 0, got " << w;
    throw DomainError(os.str());
  }
  if (T < 0.0) throw DomainError("nbar: negative temperature");
  if (T == 0.0) return 0.0;
  return 1.0 / std::expm1(w / T);
}

double coth_minus_inv(double x) {
  if (std::abs(x) < kCothSeriesBelow) {
    // sum_n 2^{2n} B_{2n} x^{2n-1} / (2n)!
    static constexpr double c[] = {
        1.0 / 3,           -1.0 / 45,          2.0 / 945,          -1.0 / 4725,
        2.0 / 93555,       -1382.0 / 638512875, 4.0 / 18243225,     -2.221460878997967908e-8,
        2.250784651680899285e-9, -2.280515120459218287e-10, 2.310643259900262410e-11,
        -2.341170681982488396e-12};
    const double q = x * x;
    double acc = 0.0;
    for (int k = 11; k >= 0; --k) acc = acc * q + c[k];
    return x * acc;
  }
  if (std::abs(x) > 40.0) return (x > 0 ? 1.0 : -1.0) - 1.0 / x;
  return 1.0 / std::tanh(x) - 1.0 / x;
}

}  // namespace qd::specfun
