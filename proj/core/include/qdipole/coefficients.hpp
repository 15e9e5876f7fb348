#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdipole/kernels.hpp"

namespace qd {

using cplx = std::complex<double>;

enum class Branch { ZeroT, FiniteTLerch, LowTExpansion };
std::string to_string(Branch b);

// Scalar-kernel closed forms on (gamma0, r). All return Im A(w).
namespace coef {
double imag_zeroT(double gamma0, double r, double w);
double imag_lerch(double gamma0, double r, double w, double T);
// Requires |w| >= T (the expansion floor).
double imag_lowT(double gamma0, double r, double w, double T, int k_max = 200);
// A(w; t) from the closed-form time-domain kernel with hard cutoff Lambda
cplx fulltime(double gamma0, double r, double w, double T, double t, double Lambda);
}  // namespace coef

inline constexpr int kLowTDefaultKmax = 200;

double coeff_real(const FieldSpec& field, const AtomArray& atoms, std::size_t n, std::size_t m,
                  double w);
double coeff_imag_zeroT(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                        std::size_t m, double w);
double coeff_imag_finiteT(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                          std::size_t m, double w, double T);
double coeff_imag_lowT_expansion(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                                 std::size_t m, double w, double T,
                                 int k_max = kLowTDefaultKmax);
// A_nm(w; t) = int_0^t e^{-i w tau} alpha_nm(tau) dtau; frequency cutoff 50/r0
cplx coeff_fulltime(const FieldSpec& field, const AtomArray& atoms, std::size_t n, std::size_t m,
                    double w, double t);

struct CoefficientOptions {
  bool renormalize = true;
  bool magnetostatics = true;
  std::optional<Branch> branch;  // override of the T-based dispatch
  int lowt_kmax = kLowTDefaultKmax;
};

// U_ren = sum_n sigma^x_n Im A_nn(0) sigma^x_n. For two-level atoms each
// term is Im A_nn(0) times the identity.
struct Counterterm {
  std::vector<double> shifts;  // Im A_nn(0) = -gamma0/(2 r0)
  Eigen::MatrixXcd operator_matrix() const;
};
Counterterm renormalization_counterterm(const FieldSpec& field, const AtomArray& atoms);

// Complex coefficients A_nm(w) with the renormalization counterterm and the
// magnetostatic toggle applied, evaluable at any w.
class CoefficientModel {
 public:
  CoefficientModel(FieldSpec field, AtomArray atoms, CoefficientOptions options = {});

  cplx operator()(std::size_t n, std::size_t m, double w) const;
  cplx bare(std::size_t n, std::size_t m, double w) const;
  double bare_imag(std::size_t n, std::size_t m, double w) const;

  std::size_t size() const { return atoms_.size(); }
  const FieldSpec& field() const { return field_; }
  const AtomArray& atoms() const { return atoms_; }
  const CoefficientOptions& options() const { return options_; }
  Branch branch() const { return branch_; }
  double separation(std::size_t n, std::size_t m) const;
  // single-atom |0><1| coherence decay rate used as the unit gamma
  double gamma_ref() const;

 private:
  FieldSpec field_;
  AtomArray atoms_;
  CoefficientOptions options_;
  Branch branch_;
  std::vector<double> static_shift_;  // Im A_nm(0), row-major
};

struct SpectralCoefficientSet {
  std::size_t n_atoms = 0;
  // plus[n*N+m] = A_nm(+Omega_m), minus[n*N+m] = A_nm(-Omega_m)
  std::vector<cplx> plus, minus;
  Branch branch = Branch::ZeroT;
  bool renormalized = true;
  bool magnetostatics = true;

  cplx at(std::size_t n, std::size_t m, int sign) const {
    return sign > 0 ? plus[n * n_atoms + m] : minus[n * n_atoms + m];
  }
};

SpectralCoefficientSet tabulate(const CoefficientModel& model);

// N=1 level shift Im A_nn(-Omega_n), with the counterterm removed when renormalized
double level_shift(const FieldSpec& field, const AtomArray& atoms, std::size_t n, bool renormalized);

}  // namespace qd
