#pragma once

#include <string>
#include <vector>

#include "qdipole/coefficients.hpp"
#include "qdipole/hilbert.hpp"
#include "qdipole/liouvillian.hpp"

namespace qd {

enum class AsymptoticBranch { HighT, ZeroT, NullSpace };
std::string to_string(AsymptoticBranch b);

struct AsymptoticState {
  Matrix rho_T;  // zeroth order (product Gibbs state)
  Matrix delta;  // second-order correction
  AsymptoticBranch branch = AsymptoticBranch::HighT;
  bool valid = true;
  std::vector<Matrix> family;  // extra trace-normalized null modes (NullSpace branch)
  std::vector<std::string> warnings;

  Matrix state() const { return rho_T + delta; }
};

// prod_n (1 - tanh(Omega_n/2T) sigma^z_n)/2; T = 0 gives the ground projector
Matrix boltzmann_state(const AtomArray& atoms, double T);

// gamma/mean Omega < kHighTMargin * min_{n != m} exp(-(Omega_n + Omega_m)/T)
inline constexpr double kHighTMargin = 0.1;
bool high_temperature_valid(const AtomArray& atoms, double T, double gamma);

struct AsymptoticOptions {
  double derivative_step = 1e-5;  // relative to mean Omega
  // Resonant/diagonal terms at finite T from the derivative formula (the
  // paper only conjectures it away from T = 0).
  bool experimental_finiteT_derivative = false;
};

AsymptoticState second_order_correction(const CoefficientModel& coeffs,
                                        const AsymptoticOptions& options = {});

// Trace-normalized right null eigen-operator of L (delta = rho_null - rho_T)
AsymptoticState asymptotic_from_nullspace(const Superoperator& L, const AtomArray& atoms, double T,
                                          const LiouvilleSpectrum* spectrum = nullptr);

}  // namespace qd
