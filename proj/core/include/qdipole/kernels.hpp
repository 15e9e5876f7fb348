#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace qd {

// Natural units hbar = c = k_B = 1 throughout.
struct Atom {
  double omega = 1.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d dipole = Eigen::Vector3d::UnitZ();
};

class AtomArray {
 public:
  AtomArray() = default;
  explicit AtomArray(std::vector<Atom> atoms);

  std::size_t size() const { return atoms_.size(); }
  const Atom& operator[](std::size_t n) const { return atoms_[n]; }
  Atom& operator[](std::size_t n) { return atoms_[n]; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  double distance(std::size_t n, std::size_t m) const;
  // smallest nonzero pairwise distance (inf for a single atom)
  double min_separation() const;
  double mean_omega() const;
  std::vector<double> omegas() const;

  // throws ValidationError
  void validate() const;

 private:
  std::vector<Atom> atoms_;
};

// Regular N-gon in the xy plane with nearest-neighbour spacing s (N=2: a pair
// on the x axis). Dipoles along z.
AtomArray ring_array(std::size_t n, double spacing, double omega);
// Pair with separation r along x; frequencies omega -+ detuning/2.
AtomArray pair_array(double r, double omega, double detuning = 0.0);
// Equidistant N <= 4 cluster (pair, triangle, tetrahedron) of edge r.
AtomArray simplex_array(std::size_t n, double r, double omega);

enum class FieldKind { Scalar, Electromagnetic };

struct FieldSpec {
  FieldKind kind = FieldKind::Scalar;
  double temperature = 0.0;
  double gamma0 = 1e-3;
  double cutoff = 1e-3;  // r0 = 1/Lambda, stands in for r_nn

  // cutoff below all separations, T >= 0, gamma0 > 0; throws ValidationError
  void validate(const AtomArray& atoms) const;
};

// r_nm, with r0 substituted on the diagonal
double separation(const FieldSpec& field, const AtomArray& atoms, std::size_t n, std::size_t m);

// gamma~_nm(w)
double damping_kernel_freq(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                           std::size_t m, double w);
// alpha~_nm(w) = 2 gamma~(w) w / (e^{w/T} - 1)
double noise_kernel_freq(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                         std::size_t m, double w);
// gamma_nm(t) = (gamma0/2) theta(r - |t|) / (2r); scalar only
double damping_kernel_time(const FieldSpec& field, const AtomArray& atoms, std::size_t n,
                           std::size_t m, double t);

namespace kernel {
// scalar building blocks on (gamma0, r)
double scalar_damping(double gamma0, double r, double w);
double scalar_noise(double gamma0, double r, double w, double T);
}  // namespace kernel

}  // namespace qd
