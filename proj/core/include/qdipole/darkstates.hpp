#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qdipole/hilbert.hpp"
#include "qdipole/liouvillian.hpp"

namespace qd {

// N!/[(N/2+1)!(N/2)!] for even N, 0 for odd N
std::size_t proper_dark_count(std::size_t n_atoms);
// N!(2j+1)/[(N/2+j+1)!(N/2-j)!]; j in {N/2, N/2-1, ...}, passed as 2j
std::size_t improper_dark_count(std::size_t n_atoms, std::size_t two_j);

// Columns: orthonormal kets with Sigma^+ psi = Sigma^- psi = 0 inside each
// excitation sector (the j = 0 multiplet). Empty for odd N.
Matrix proper_dark_basis(std::size_t n_atoms);

struct ImproperFamily {
  std::size_t two_j;
  Matrix basis;  // columns: m = -j states (excitation N/2 - j, Sigma^- psi = 0)
};
std::vector<ImproperFamily> improper_dark_basis_T0(std::size_t n_atoms);

struct NullCount {
  std::size_t non_decaying = 0;  // modes with |Re f| < tol (includes the stationary ones)
  std::size_t stationary = 0;    // modes with |f| < tol
  std::vector<Eigen::Index> modes;
  Matrix basis;                  // columns: vec of the right eigen-operators of `modes`
  std::vector<std::string> warnings;
};
// Second-order eigenvalues carry O(gamma^2) errors (coherences next to a dark
// state can even show Re f ~ +5 gamma^2), so the default tolerance sits
// between that floor and the O(gamma) rates.
inline constexpr double kNullTolGamma = 1e-2;  // tol = kNullTolGamma * gamma
NullCount numeric_null_count(const LiouvilleSpectrum& spec, double tol);

// Largest ||P o|| / ||o|| over the given modes, P the projector onto the span of
// the dyads |a><b| built from all T = 0 improper dark kets.
double overlap_with_T0_family(const Matrix& modes, std::size_t n_atoms);

struct DarkStateReport {
  std::size_t n_atoms = 0;
  double temperature = 0;
  std::size_t proper_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> improper_counts;  // (2j, count)
  std::size_t proper_rank = 0;                                       // from the constructed basis
  std::vector<std::pair<std::size_t, std::size_t>> improper_ranks;
  std::optional<NullCount> numeric;  // dense spectrum, N <= 5
  std::optional<double> overlap;     // numeric non-decaying modes vs the T = 0 family
  Matrix proper_basis;
  std::vector<ImproperFamily> improper_basis;
  std::vector<std::string> warnings;
};

DarkStateReport dark_state_report(const FieldSpec& field, const AtomArray& atoms,
                                  const CoefficientOptions& options, double tol);

}  // namespace qd
