// Full-time coefficients A(w;t) = int_0^t e^{-i w tau} alpha(tau) dtau for the
// scalar kernel. With x = tau - r,
//   alpha(tau) = (g0/2 pi r) [1/(r+tau) + 1/(r-tau)] + nu_th(tau) - (i g0/2r) delta(tau-r)
//   nu_th(tau) = (g0 T/2r) [h(pi T (r+tau)) + h(pi T (r-tau))],  h(y) = coth y - 1/y
// The vacuum pieces are taken exactly as the transform of alpha~ truncated at
// |w| < Lambda and integrated in closed form; only the smooth nu_th is done
// by quadrature.
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "qdipole/coefficients.hpp"
#include "qdipole/error.hpp"
#include "qdipole/specfun.hpp"

namespace qd::coef {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I(0.0, 1.0);

// int_a^b e^{i k x}/x dx, 0 < a <= b
cplx j_pos(double k, double a, double b) {
  if (a == b) return 0.0;
  const double ak = std::abs(k);
  const double re = std::log(b / a) - specfun::cin(ak * b) + specfun::cin(ak * a);
  const double im = k == 0.0 ? 0.0 : std::copysign(1.0, k) * (specfun::Si(ak * b) - specfun::Si(ak * a));
  return {re, im};
}

// int_0^x (e^{i k s} - 1)/s ds
cplx f_sub(double k, double x) { return {-specfun::cin(k * x), specfun::Si(k * x)}; }

struct Integrand {
  double g0, r, w, T;
  bool imag_part;
};

double nu_th_integrand(double tau, void* p) {
  const auto* q = static_cast<const Integrand*>(p);
  const double v = q->g0 * q->T / (2.0 * q->r) *
                   (specfun::coth_minus_inv(kPi * q->T * (q->r + tau)) +
                    specfun::coth_minus_inv(kPi * q->T * (q->r - tau)));
  return q->imag_part ? -std::sin(q->w * tau) * v : std::cos(q->w * tau) * v;
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

cplx thermal_quadrature(double g0, double r, double w, double T, double upper) {
  if (upper <= 0.0) return 0.0;
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(512));
  double width = std::min(0.5 / T, upper);
  if (w != 0.0) width = std::min(width, kPi / std::abs(w));
  const int panels = int(std::ceil(upper / width));
  const double h = upper / panels;
  const double scale = g0 * T / r;
  double parts[2] = {0.0, 0.0};
  for (int part = 0; part < 2; ++part) {
    Integrand q{g0, r, w, T, part == 1};
    gsl_function F{&nu_th_integrand, &q};
    for (int p = 0; p < panels; ++p) {
      double val, err;
      const int status = gsl_integration_qag(&F, p * h, (p + 1) * h, 1e-15 * scale * h, 1e-11, 512,
                                             GSL_INTEG_GAUSS21, ws.get(), &val, &err);
      if (status != 0) {
        std::ostringstream os;
        os << "coeff_fulltime: quadrature failed on [" << p * h << ", " << (p + 1) * h
           << "] (w=" << w << ", T=" << T << ", r=" << r << "): " << gsl_strerror(status)
           << ", error estimate " << err;
        throw ConvergenceError(os.str());
      }
      parts[part] += val;
    }
  }
  const cplx total(parts[0], parts[1]);
  return total;
}

}  // namespace

cplx fulltime(double g0, double r, double w, double T, double t, double Lambda) {
  if (t < 0.0) throw DomainError("fulltime: t must be >= 0");
  if (!(r > 0.0) || !(Lambda > 0.0)) throw DomainError("fulltime: r and Lambda must be > 0");
  if (t == 0.0) return 0.0;
  const double pref = g0 / (2.0 * kPi * r);
  const cplx ep = std::exp(I * (w * r));
  const cplx em = std::conj(ep);

  // 1/u -> (1 - e^{-i Lambda u})/u, u = r + tau
  const cplx plus = pref * ep * (j_pos(-w, r, r + t) - j_pos(-Lambda - w, r, r + t));

  const double x0 = -r, x1 = t - r;
  auto D = [&](double k) { return f_sub(k, x1) - f_sub(k, x0); };
  const cplx d_w = D(-w), d_up = D(Lambda - w), d_dn = D(-Lambda - w);
  const cplx pole = -pref * em * (d_w - 0.5 * d_up - 0.5 * d_dn);
  const cplx delta = -0.5 * pref * em * (d_up - d_dn);

  cplx thermal = 0.0;
  if (T > 0.0) {
    const double tau_m = r + 20.0 / (kPi * T);
    thermal = thermal_quadrature(g0, r, w, T, std::min(t, tau_m));
    if (t > tau_m)
      thermal += -pref * (ep * j_pos(-w, tau_m + r, t + r) - em * j_pos(-w, tau_m - r, t - r));
  }
  return plus + pole + delta + thermal;
}

}  // namespace qd::coef
