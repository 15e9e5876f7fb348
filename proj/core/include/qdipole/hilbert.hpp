#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>

namespace qd {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Basis |s_1 s_2 ... s_N>, atom 1 the most significant bit, s = 1 excited.
// Single-qubit matrices in the (|0>, |1>) ordering:
//   sigma+ = |1><0|,  sigma_z = diag(-1, +1),  sigma_y = [[0, i], [-i, 0]]
// so that sigma+- = (sigma_x +- i sigma_y)/2.
enum class Pauli { X, Y, Z, Plus, Minus };

inline std::size_t dim_of(std::size_t n_atoms) { return std::size_t(1) << n_atoms; }
// bit mask of atom n in an N-atom basis index
inline std::size_t atom_bit(std::size_t n, std::size_t n_atoms) {
  return std::size_t(1) << (n_atoms - 1 - n);
}
int excitation(std::size_t basis_index);

Matrix build_pauli(std::size_t n, Pauli which, std::size_t n_atoms);

struct CollectiveSpin {
  Matrix x, y, z, plus, minus, squared;
};
// Sigma_a = sum_n sigma^a_n (no factor 1/2; Sigma^2 eigenvalues are 4 j(j+1))
// `squared` is (Sigma/2)^2 with eigenvalues j(j+1).
CollectiveSpin collective_spin(std::size_t n_atoms);

// rho over N atoms -> 4x4 state of atoms (n, m), in that order
Matrix partial_trace_pair(const Matrix& rho, std::size_t n, std::size_t m);

// Named states (ground, excited_all, bell_minus, bell_plus) or
// "amp:c0,c1,..." with complex entries written as re or re+imj.
// Returns the normalized pure-state density matrix.
Matrix state_from_spec(const std::string& spec, std::size_t n_atoms);
Vector ket_from_spec(const std::string& spec, std::size_t n_atoms);

double min_eigenvalue(const Matrix& rho);  // of the Hermitian part
double hermiticity_residual(const Matrix& rho);
// Throws NumericalStateError when rho is not Hermitian/unit-trace to 1e-12 or
// has an eigenvalue below -tol_pos.
void check_density(const Matrix& rho, double tol_pos);

inline Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }
inline Matrix unvec(const Vector& v, Eigen::Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

}  // namespace qd
