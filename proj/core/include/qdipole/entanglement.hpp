#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qdipole/asymptotic.hpp"
#include "qdipole/hilbert.hpp"
#include "qdipole/liouvillian.hpp"

namespace qd {

inline constexpr double kNegativeEigTol = 1e-8;
inline constexpr double kPositiveStateTol = 1e-12;

// sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4), l the eigenvalues of rho (sy x sy) rho* (sy x sy)
// in decreasing order. For rho positive to kPositiveStateTol this goes through
// Wootters' tau matrix; otherwise the eigenvalues of rho rho~ are taken
// directly, clamping those in (-neg_tol, 0) and throwing below -neg_tol.
double unmaximized_concurrence(const Matrix& rho, double neg_tol = kNegativeEigTol);
double concurrence(const Matrix& rho, double neg_tol = kNegativeEigTol);
// log2 || rho^{T_B} ||_1
double log_negativity(const Matrix& rho);

enum class EventKind { Death, Revival };
std::string to_string(EventKind k);

struct EntanglementEvent {
  double time;
  EventKind kind;
};

struct ConcurrenceTrace {
  std::vector<double> times;
  std::vector<double> uC, C;
  std::vector<double> uC_smooth;  // window average used for event detection
  std::vector<EntanglementEvent> events;
  double uC_inf = 0;  // of the asymptotic (null) state
  double band = 0;    // +- gamma/Omega
  double window = 0;
};

struct TrajectoryOptions {
  std::size_t n = 0, m = 1;  // pair
  double band = 0;           // gamma/Omega; 0 -> taken from the caller's gamma
  double window = -1;        // smoothing window; < 0 -> pi/mean Omega, 0 -> raw
  double resolution = 0;     // bisection tolerance; 0 -> 1e-3/gamma
  double gamma = 0;
  double neg_tol = kNegativeEigTol;
};

ConcurrenceTrace concurrence_trajectory(const Superoperator& L, const AtomArray& atoms, const Matrix& rho0,
                                        const std::vector<double>& times, const TrajectoryOptions& options);

struct EntMapRow {
  double r, detuning, uC;
  bool magnetostatics, valid;
};
// uC of the second-order asymptotic state of a pair at separation r, frequencies
// omega -+ detuning/2
std::vector<EntMapRow> asymptotic_entanglement_map(const FieldSpec& field, double omega,
                                                   const std::vector<double>& r_grid,
                                                   const std::vector<double>& detuning_grid,
                                                   bool magnetostatics);

}  // namespace qd
