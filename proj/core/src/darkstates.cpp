#include "qdipole/darkstates.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "qdipole/error.hpp"

namespace qd {

namespace {

double factorial(std::size_t n) { return std::tgamma(double(n) + 1.0); }

constexpr double kRankTol = 1e-10;

std::vector<std::size_t> sector(std::size_t n_atoms, int s) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dim_of(n_atoms); ++k)
    if (excitation(k) == s) out.push_back(k);
  return out;
}

// orthonormal null space of M restricted to the columns `cols`, embedded in C^d
Matrix null_space(const Matrix& M, const std::vector<std::size_t>& cols) {
  const Eigen::Index d = M.cols();
  Matrix sub(M.rows(), Eigen::Index(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) sub.col(Eigen::Index(c)) = M.col(Eigen::Index(cols[c]));
  Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] > kRankTol) ++rank;
  const Eigen::Index nul = Eigen::Index(cols.size()) - rank;
  Matrix out = Matrix::Zero(d, nul);
  for (Eigen::Index c = 0; c < nul; ++c)
    for (std::size_t q = 0; q < cols.size(); ++q)
      out(Eigen::Index(cols[q]), c) = svd.matrixV()(Eigen::Index(q), rank + c);
  return out;
}

void require_atoms(std::size_t n) {
  if (n < 2) throw ValidationError("dark states need N >= 2");
  if (n > kMaxAtoms) throw ValidationError("dark states limited to N <= 6");
}

}  // namespace

std::size_t proper_dark_count(std::size_t n) {
  if (n % 2) return 0;
  return std::size_t(std::llround(factorial(n) / (factorial(n / 2 + 1) * factorial(n / 2))));
}

std::size_t improper_dark_count(std::size_t n, std::size_t two_j) {
  if (two_j > n || (n - two_j) % 2) return 0;
  const std::size_t hi = (n + two_j) / 2 + 1, lo = (n - two_j) / 2;
  return std::size_t(std::llround(factorial(n) * double(two_j + 1) / (factorial(hi) * factorial(lo))));
}

Matrix proper_dark_basis(std::size_t n) {
  require_atoms(n);
  const auto S = collective_spin(n);
  const Eigen::Index d = Eigen::Index(dim_of(n));
  Matrix both(2 * d, d);
  both << S.plus, S.minus;
  std::vector<Matrix> parts;
  Eigen::Index total = 0;
  for (int s = 0; s <= int(n); ++s) {
    parts.push_back(null_space(both, sector(n, s)));
    total += parts.back().cols();
  }
  Matrix out(d, total);
  Eigen::Index c = 0;
  for (const auto& p : parts) {
    out.middleCols(c, p.cols()) = p;
    c += p.cols();
  }
  return out;
}

std::vector<ImproperFamily> improper_dark_basis_T0(std::size_t n) {
  require_atoms(n);
  const auto S = collective_spin(n);
  std::vector<ImproperFamily> out;
  for (std::size_t s = 0; 2 * s <= n; ++s)  // excitation s carries m = -j with j = N/2 - s
    out.push_back({n - 2 * s, null_space(S.minus, sector(n, int(s)))});
  return out;
}

NullCount numeric_null_count(const LiouvilleSpectrum& spec, double tol) {
  if (!(tol > 0)) throw ValidationError("null-count tolerance must be positive");
  NullCount nc;
  for (Eigen::Index k = 0; k < spec.f.size(); ++k) {
    const double re = std::abs(spec.f[k].real());
    if (re < tol) {
      ++nc.non_decaying;
      nc.modes.push_back(k);
      if (std::abs(spec.f[k]) < tol) ++nc.stationary;
    }
    if (re > tol / 3 && re < 3 * tol) {
      std::ostringstream os;
      os << "decay rate " << re << " within a factor 3 of tol " << tol << "; count is ambiguous";
      nc.warnings.push_back(os.str());
    }
  }
  if (spec.right.size()) {
    nc.basis.resize(spec.right.rows(), Eigen::Index(nc.modes.size()));
    for (std::size_t q = 0; q < nc.modes.size(); ++q) nc.basis.col(Eigen::Index(q)) = spec.right.col(nc.modes[q]);
  }
  return nc;
}

double overlap_with_T0_family(const Matrix& modes, std::size_t n) {
  const auto fam = improper_dark_basis_T0(n);
  Eigen::Index K = 0;
  for (const auto& f : fam) K += f.basis.cols();
  const Eigen::Index d = Eigen::Index(dim_of(n));
  Matrix kets(d, K);
  Eigen::Index c = 0;
  for (const auto& f : fam) {
    kets.middleCols(c, f.basis.cols()) = f.basis;
    c += f.basis.cols();
  }
  // orthonormal kets -> dyads |a><b| are orthonormal in Hilbert-Schmidt
  double best = 0;
  for (Eigen::Index m = 0; m < modes.cols(); ++m) {
    const Matrix o = unvec(modes.col(m), d);
    const double norm = o.norm();
    if (norm == 0) continue;
    const Matrix proj = kets.adjoint() * o * kets;  // coefficients <a|o|b>
    best = std::max(best, proj.norm() / norm);
  }
  return best;
}

DarkStateReport dark_state_report(const FieldSpec& field, const AtomArray& atoms,
                                  const CoefficientOptions& options, double tol) {
  const std::size_t n = atoms.size();
  require_atoms(n);
  DarkStateReport r;
  r.n_atoms = n;
  r.temperature = field.temperature;
  r.proper_count = proper_dark_count(n);
  r.proper_basis = proper_dark_basis(n);
  r.proper_rank = std::size_t(r.proper_basis.cols());
  r.improper_basis = improper_dark_basis_T0(n);
  for (const auto& f : r.improper_basis) {
    r.improper_counts.emplace_back(f.two_j, improper_dark_count(n, f.two_j));
    r.improper_ranks.emplace_back(f.two_j, std::size_t(f.basis.cols()));
  }
  if (n <= kMaxDenseAtoms) {
    const CoefficientModel cm(field, atoms, options);
    const auto spec = spectrum_numeric(build_liouvillian(LiouvillianModel(cm)));
    r.numeric = numeric_null_count(spec, tol);
    r.overlap = overlap_with_T0_family(r.numeric->basis, n);
    r.warnings = r.numeric->warnings;
    r.warnings.insert(r.warnings.end(), spec.warnings.begin(), spec.warnings.end());
  } else {
    r.warnings.push_back("N > 5: numeric null count skipped; counts from operator-sector ranks only");
  }
  return r;
}

}  // namespace qd
