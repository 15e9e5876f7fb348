#include "qdipole/hilbert.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "qdipole/error.hpp"

namespace qd {

int excitation(std::size_t basis_index) { return std::popcount(basis_index); }

Matrix build_pauli(std::size_t n, Pauli which, std::size_t n_atoms) {
  if (n >= n_atoms) {
    std::ostringstream os;
    os << "build_pauli: atom index " << n << " out of range for N=" << n_atoms;
    throw ValidationError(os.str());
  }
  const std::size_t d = dim_of(n_atoms);
  const std::size_t bit = atom_bit(n, n_atoms);
  const std::complex<double> i(0.0, 1.0);
  Matrix M = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const bool up = k & bit;
    const std::size_t f = k ^ bit;
    switch (which) {
      case Pauli::X: M(f, k) = 1.0; break;
      case Pauli::Y: M(f, k) = up ? i : -i; break;  // <0|sy|1> = i, <1|sy|0> = -i
      case Pauli::Z: M(k, k) = up ? 1.0 : -1.0; break;
      case Pauli::Plus:
        if (!up) M(f, k) = 1.0;
        break;
      case Pauli::Minus:
        if (up) M(f, k) = 1.0;
        break;
    }
  }
  return M;
}

CollectiveSpin collective_spin(std::size_t n_atoms) {
  const std::size_t d = dim_of(n_atoms);
  CollectiveSpin s;
  s.x = s.y = s.z = s.plus = s.minus = Matrix::Zero(d, d);
  for (std::size_t n = 0; n < n_atoms; ++n) {
    s.x += build_pauli(n, Pauli::X, n_atoms);
    s.y += build_pauli(n, Pauli::Y, n_atoms);
    s.z += build_pauli(n, Pauli::Z, n_atoms);
    s.plus += build_pauli(n, Pauli::Plus, n_atoms);
    s.minus += build_pauli(n, Pauli::Minus, n_atoms);
  }
  s.squared = 0.25 * (s.x * s.x + s.y * s.y + s.z * s.z);
  return s;
}

Matrix partial_trace_pair(const Matrix& rho, std::size_t n, std::size_t m) {
  const std::size_t d = std::size_t(rho.rows());
  if (rho.cols() != rho.rows() || d < 4 || std::popcount(d) != 1)
    throw ValidationError("partial_trace_pair: need a 2^N x 2^N matrix with N >= 2");
  const std::size_t N = std::size_t(std::countr_zero(d));
  if (n == m) throw ValidationError("partial_trace_pair: atoms must differ");
  if (n >= N || m >= N) throw ValidationError("partial_trace_pair: atom index out of range");
  const std::size_t bn = atom_bit(n, N), bm = atom_bit(m, N);
  auto local = [&](std::size_t k) { return ((k & bn) ? 2 : 0) + ((k & bm) ? 1 : 0); };
  const std::size_t rest_mask = (d - 1) & ~(bn | bm);
  Matrix out = Matrix::Zero(4, 4);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if ((a & rest_mask) == (b & rest_mask)) out(local(a), local(b)) += rho(a, b);
  return out;
}

namespace {

std::complex<double> parse_complex(const std::string& tok) {
  // accepts "a", "a+bj", "a-bj", "bj"
  std::string s;
  for (char c : tok)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ValidationError("empty amplitude");
  if (s.back() != 'j' && s.back() != 'i') return {std::stod(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) {
    if (s.empty() || s == "+") return {0.0, 1.0};
    if (s == "-") return {0.0, -1.0};
    return {0.0, std::stod(s)};
  }
  const std::string im = s.substr(split);
  const double imv = (im == "+") ? 1.0 : (im == "-") ? -1.0 : std::stod(im);
  return {std::stod(s.substr(0, split)), imv};
}

}  // namespace

Vector ket_from_spec(const std::string& spec, std::size_t n_atoms) {
  const std::size_t d = dim_of(n_atoms);
  Vector psi = Vector::Zero(d);
  if (spec == "ground") {
    psi(0) = 1.0;
  } else if (spec == "excited_all") {
    psi(d - 1) = 1.0;
  } else if (spec == "bell_minus" || spec == "bell_plus") {
    if (n_atoms != 2) throw ValidationError("state '" + spec + "' requires exactly 2 atoms");
    psi(1) = 1.0;  // |01>
    psi(2) = spec == "bell_minus" ? -1.0 : 1.0;
  } else if (spec.rfind("amp:", 0) == 0) {
    std::stringstream ss(spec.substr(4));
    std::string tok;
    std::size_t k = 0;
    while (std::getline(ss, tok, ',')) {
      if (k >= d) throw ValidationError("amplitude list longer than 2^N");
      try {
        psi(k++) = parse_complex(tok);
      } catch (const std::invalid_argument&) {
        throw ValidationError("bad amplitude '" + tok + "'");
      }
    }
    if (k != d) {
      std::ostringstream os;
      os << "amplitude list has " << k << " entries, expected " << d;
      throw ValidationError(os.str());
    }
  } else {
    throw ValidationError("unknown state spec '" + spec + "'");
  }
  const double nrm = psi.norm();
  if (nrm == 0.0) throw ValidationError("state spec has zero norm");
  return psi / nrm;
}

Matrix state_from_spec(const std::string& spec, std::size_t n_atoms) {
  const Vector psi = ket_from_spec(spec, n_atoms);
  return psi * psi.adjoint();
}

double min_eigenvalue(const Matrix& rho) {
  const Matrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double hermiticity_residual(const Matrix& rho) { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

void check_density(const Matrix& rho, double tol_pos) {
  if (rho.rows() != rho.cols()) throw NumericalStateError("density matrix not square");
  if (hermiticity_residual(rho) > 1e-12) throw NumericalStateError("density matrix not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-12) throw NumericalStateError("density matrix trace != 1");
  const double lo = min_eigenvalue(rho);
  if (lo < -tol_pos) {
    std::ostringstream os;
    os << "density matrix eigenvalue " << lo << " below -" << tol_pos;
    throw NumericalStateError(os.str());
  }
}

}  // namespace qd
