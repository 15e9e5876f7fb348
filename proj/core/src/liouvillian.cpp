#include "qdipole/liouvillian.hpp"

#include <sstream>
#include <unordered_map>

#include "qdipole/error.hpp"

namespace qd {

namespace {

constexpr cplx I(0.0, 1.0);

struct Entry {
  std::size_t row, col;
  cplx value;
};

}  // namespace

LiouvillianModel::LiouvillianModel(std::vector<double> omegas, SpectralCoefficientSet coeffs)
    : omegas_(std::move(omegas)), coeffs_(std::move(coeffs)) {
  const std::size_t N = omegas_.size();
  if (N == 0) throw ValidationError("Liouvillian needs at least one atom");
  if (N > kMaxAtoms) {
    std::ostringstream os;
    os << "Liouvillian: N=" << N << " exceeds the supported maximum " << kMaxAtoms;
    throw ValidationError(os.str());
  }
  if (coeffs_.n_atoms != N || coeffs_.plus.size() != N * N || coeffs_.minus.size() != N * N)
    throw ValidationError("Liouvillian: coefficient set incomplete for the atom array");
  const std::size_t d = dim();
  energies_.assign(d, 0.0);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t n = 0; n < N; ++n)
      if (k & atom_bit(n, N)) energies_[k] += omegas_[n];
}

LiouvillianModel::LiouvillianModel(const CoefficientModel& model)
    : LiouvillianModel(model.atoms().omegas(), tabulate(model)) {}

Matrix LiouvillianModel::apply_free(const Matrix& rho) const {
  const std::size_t d = dim();
  Matrix out(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) out(i, j) = -I * (energies_[i] - energies_[j]) * rho(i, j);
  return out;
}

Matrix LiouvillianModel::apply_second(const Matrix& rho) const {
  const std::size_t N = n_atoms(), d = dim();
  Matrix out = Matrix::Zero(d, d);
  Matrix X(d, d);
  for (std::size_t n = 0; n < N; ++n) {
    // X = rho C_n^dag - C_n rho
    X.setZero();
    for (std::size_t m = 0; m < N; ++m) {
      const std::size_t bm = atom_bit(m, N);
      const cplx up = coeffs_.at(n, m, +1), dn = coeffs_.at(n, m, -1);
      for (std::size_t j = 0; j < d; ++j) {
        const cplx cj = std::conj((j & bm) ? up : dn);
        for (std::size_t i = 0; i < d; ++i) {
          const cplx ci = (i & bm) ? up : dn;
          X(i, j) += rho(i, j ^ bm) * cj - ci * rho(i ^ bm, j);
        }
      }
    }
    const std::size_t bn = atom_bit(n, N);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) out(i, j) += X(i ^ bn, j) - X(i, j ^ bn);
  }
  return out;
}

Matrix LiouvillianModel::apply(const Matrix& rho) const { return apply_free(rho) + apply_second(rho); }

namespace {

// sparse image L(|a><b|)
void dyad_image(const LiouvillianModel& model, std::size_t a, std::size_t b, std::vector<Entry>& out) {
  out.clear();
  const std::size_t N = model.n_atoms();
  const auto& c = model.coefficients();
  out.push_back({a, b, -I * (model.energy(a) - model.energy(b))});
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t bn = atom_bit(n, N);
    for (std::size_t m = 0; m < N; ++m) {
      const std::size_t bm = atom_bit(m, N);
      const std::size_t am = a ^ bm, bb = b ^ bm;
      const cplx ca = c.at(n, m, (am & bm) ? +1 : -1);  // <a^m| C_n |a>
      const cplx cb = std::conj(c.at(n, m, (bb & bm) ? +1 : -1));
      out.push_back({a ^ bn, bb, cb});        //  sx_n |a><C_n b|
      out.push_back({am ^ bn, b, -ca});       // -sx_n C_n |a><b|
      out.push_back({a, bb ^ bn, -cb});       // -|a><C_n b| sx_n
      out.push_back({am, b ^ bn, ca});        //  C_n |a><b| sx_n
    }
  }
}

}  // namespace

Matrix LiouvillianModel::block(const std::vector<std::size_t>& dyads) const {
  const std::size_t d = dim();
  std::unordered_map<std::size_t, Eigen::Index> pos;
  pos.reserve(dyads.size() * 2);
  for (std::size_t k = 0; k < dyads.size(); ++k) pos.emplace(dyads[k], Eigen::Index(k));
  Matrix B = Matrix::Zero(Eigen::Index(dyads.size()), Eigen::Index(dyads.size()));
  std::vector<Entry> img;
  for (std::size_t k = 0; k < dyads.size(); ++k) {
    const std::size_t a = dyads[k] % d, b = dyads[k] / d;
    dyad_image(*this, a, b, img);
    for (const auto& e : img) {
      auto it = pos.find(e.row + d * e.col);
      if (it != pos.end()) B(it->second, Eigen::Index(k)) += e.value;
    }
  }
  return B;
}

Superoperator build_liouvillian(const LiouvillianModel& model) {
  const std::size_t N = model.n_atoms();
  if (N > kMaxDenseAtoms) {
    std::ostringstream os;
    os << "dense superoperator limited to N <= " << kMaxDenseAtoms << " (got " << N
       << "); use the perturbative blocks";
    throw ValidationError(os.str());
  }
  const std::size_t d = model.dim(), D = d * d;
  Superoperator S;
  S.n_atoms = N;
  S.renormalized = model.coefficients().renormalized;
  S.magnetostatics = model.coefficients().magnetostatics;
  S.L = Matrix::Zero(Eigen::Index(D), Eigen::Index(D));
  std::vector<Entry> img;
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t a = 0; a < d; ++a) {
      dyad_image(model, a, b, img);
      const Eigen::Index col = Eigen::Index(a + d * b);
      for (const auto& e : img) S.L(Eigen::Index(e.row + d * e.col), col) += e.value;
    }
  return S;
}

Superoperator build_liouvillian(const FieldSpec& field, const AtomArray& atoms,
                                const CoefficientOptions& options) {
  return build_liouvillian(LiouvillianModel(CoefficientModel(field, atoms, options)));
}

std::string to_string(Provenance p) {
  return p == Provenance::NumericDense ? "numeric" : "perturbative";
}

}  // namespace qd
