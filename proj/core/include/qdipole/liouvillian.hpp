#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qdipole/coefficients.hpp"
#include "qdipole/hilbert.hpp"

namespace qd {

inline constexpr std::size_t kMaxAtoms = 6;
inline constexpr std::size_t kMaxDenseAtoms = 5;

// L rho = -i[H, rho] + sum_n [sigma^x_n, rho C_n^dag - C_n rho],
// C_n = sum_m A_nm(+Omega_m) sigma^+_m + A_nm(-Omega_m) sigma^-_m,
// H = sum_n Omega_n sigma^+_n sigma^-_n (ground energy zero).
class LiouvillianModel {
 public:
  LiouvillianModel(std::vector<double> omegas, SpectralCoefficientSet coeffs);
  LiouvillianModel(const CoefficientModel& model);

  std::size_t n_atoms() const { return omegas_.size(); }
  std::size_t dim() const { return dim_of(n_atoms()); }
  const std::vector<double>& omegas() const { return omegas_; }
  const SpectralCoefficientSet& coefficients() const { return coeffs_; }
  double energy(std::size_t basis_index) const { return energies_[basis_index]; }
  const std::vector<double>& energies() const { return energies_; }

  Matrix apply(const Matrix& rho) const;
  Matrix apply_free(const Matrix& rho) const;    // L0
  Matrix apply_second(const Matrix& rho) const;  // L2
  // <a'|L(|a><b|)|b'> for a batch of dyads, as a dense block (rows/cols index
  // the dyad list, column-stacked convention a + d*b)
  Matrix block(const std::vector<std::size_t>& dyads) const;

 private:
  std::vector<double> omegas_;
  SpectralCoefficientSet coeffs_;
  std::vector<double> energies_;
};

struct Superoperator {
  Matrix L;  // 4^N x 4^N acting on column-stacked vec(rho)
  std::size_t n_atoms = 0;
  bool renormalized = true;
  bool magnetostatics = true;
  std::size_t dim() const { return dim_of(n_atoms); }
};

Superoperator build_liouvillian(const LiouvillianModel& model);
Superoperator build_liouvillian(const FieldSpec& field, const AtomArray& atoms,
                                const CoefficientOptions& options = {});

enum class Provenance { NumericDense, Perturbative };
std::string to_string(Provenance p);

struct LiouvilleSpectrum {
  Vector f;      // eigen-frequencies
  Matrix right;  // columns: vec of right eigen-operators o_k
  Matrix left;   // rows: dual (left) eigen-functionals S_k, <S_i, o_j> = delta_ij
  Provenance provenance = Provenance::NumericDense;
  double condition = 1.0;  // of the right eigenbasis (numeric branch)
  bool ill_conditioned = false;
  std::vector<std::string> warnings;

  Eigen::Index size() const { return f.size(); }
  Matrix right_operator(Eigen::Index k, Eigen::Index d) const { return unvec(right.col(k), d); }
};

inline constexpr double kIllConditioned = 1e10;

// Full eigendecomposition, sorted by |Im f| then Re f. N <= 5.
LiouvilleSpectrum spectrum_numeric(const Superoperator& L);

struct PerturbativeOptions {
  double kappa = 10.0;
  double gamma = 0.0;      // clustering scale; 0 -> gamma0 * mean Omega
  bool eigenvectors = true;
};
// Canonical perturbation theory: dyads clustered by zeroth-order frequency
// (gaps > kappa*gamma split clusters), each cluster block of L diagonalized.
LiouvilleSpectrum spectrum_perturbative(const LiouvillianModel& model, double gamma0,
                                        const PerturbativeOptions& options = {});

// rho(t) from a spectrum (eigenbasis reconstruction) or, when the eigenbasis
// is ill conditioned, from an adaptive Dormand-Prince integration.
class Propagator {
 public:
  Propagator(const Superoperator& L, const Matrix& rho0);
  Propagator(const Superoperator& L, const LiouvilleSpectrum& spec, const Matrix& rho0);
  ~Propagator();
  Propagator(Propagator&&) noexcept;
  Propagator& operator=(Propagator&&) noexcept;

  Matrix state(double t) const;
  bool uses_ode() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<Matrix> evolve(const Superoperator& L, const Matrix& rho0, const std::vector<double>& times);

struct RateRow {
  std::size_t n_atoms;
  double max_rate;
};
// max |Re f| over perturbative modes for each N, atoms on a ring of spacing `spacing`
std::vector<RateRow> max_decay_rate_vs_N(const FieldSpec& field, double omega, double spacing,
                                         const std::vector<std::size_t>& n_list,
                                         const CoefficientOptions& options = {});

}  // namespace qd
