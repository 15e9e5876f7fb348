#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qdipole/error.hpp"
#include "qdipole/liouvillian.hpp"

namespace qd {

namespace {

std::vector<Eigen::Index> mode_order(const Vector& f) {
  std::vector<Eigen::Index> idx(std::size_t(f.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index(0));
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    const auto key = [&](Eigen::Index k) {
      return std::make_tuple(std::abs(f[k].imag()), f[k].imag(), -f[k].real());
    };
    return key(a) < key(b);
  });
  return idx;
}

struct EigenPair {
  Vector values;
  Matrix right, left;
  double condition = 1.0;
};

EigenPair diagonalize(const Matrix& M, bool vectors) {
  EigenPair out;
  Eigen::ComplexEigenSolver<Matrix> es(M, vectors);
  if (es.info() != Eigen::Success) throw ConvergenceError("complex eigensolver did not converge");
  out.values = es.eigenvalues();
  if (vectors) {
    out.right = es.eigenvectors();
    Eigen::PartialPivLU<Matrix> lu(out.right);
    const double rc = lu.rcond();
    out.condition = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    out.left = lu.inverse();
  }
  return out;
}

}  // namespace

LiouvilleSpectrum spectrum_numeric(const Superoperator& L) {
  if (L.n_atoms > kMaxDenseAtoms) throw ValidationError("numeric spectrum limited to N <= 5");
  EigenPair ep = diagonalize(L.L, true);
  LiouvilleSpectrum s;
  s.provenance = Provenance::NumericDense;
  s.condition = ep.condition;
  s.ill_conditioned = ep.condition > kIllConditioned;
  if (s.ill_conditioned) {
    std::ostringstream os;
    os << "eigenbasis condition number " << ep.condition << " exceeds " << kIllConditioned
       << "; propagation falls back to ODE integration";
    s.warnings.push_back(os.str());
  }
  const auto order = mode_order(ep.values);
  const Eigen::Index D = ep.values.size();
  s.f.resize(D);
  s.right.resize(D, D);
  s.left.resize(D, D);
  for (Eigen::Index k = 0; k < D; ++k) {
    s.f[k] = ep.values[order[std::size_t(k)]];
    s.right.col(k) = ep.right.col(order[std::size_t(k)]);
    s.left.row(k) = ep.left.row(order[std::size_t(k)]);
  }
  return s;
}

namespace {

struct Dyad {
  std::size_t index;
  double w;
};

std::vector<std::vector<std::size_t>> cluster(const std::vector<Dyad>& sorted, double scale,
                                              std::vector<std::size_t>* ambiguous_cuts) {
  std::vector<std::vector<std::size_t>> out;
  if (sorted.empty()) return out;
  out.push_back({sorted[0].index});
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    const double gap = sorted[k].w - sorted[k - 1].w;
    if (ambiguous_cuts && gap > 0 && std::abs(gap - scale) < 0.1 * scale) ambiguous_cuts->push_back(k);
    if (gap > scale)
      out.push_back({});
    out.back().push_back(sorted[k].index);
  }
  return out;
}

}  // namespace

LiouvilleSpectrum spectrum_perturbative(const LiouvillianModel& model, double gamma0,
                                        const PerturbativeOptions& options) {
  const std::size_t d = model.dim(), D = d * d;
  double mean_omega = 0;
  for (double w : model.omegas()) mean_omega += w;
  mean_omega /= double(model.n_atoms());
  const double gamma = options.gamma > 0 ? options.gamma : gamma0 * mean_omega;
  if (!(gamma > 0)) throw ValidationError("perturbative spectrum needs a positive gamma scale");
  const double scale = options.kappa * gamma;

  std::vector<Dyad> dyads;
  dyads.reserve(D);
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t a = 0; a < d; ++a) dyads.push_back({a + d * b, model.energy(a) - model.energy(b)});
  std::stable_sort(dyads.begin(), dyads.end(), [](const Dyad& x, const Dyad& y) { return x.w < y.w; });

  std::vector<std::size_t> cuts;
  const auto clusters = cluster(dyads, scale, &cuts);

  const bool vectors = options.eigenvectors;
  if (vectors && model.n_atoms() > kMaxDenseAtoms)
    throw ValidationError("perturbative eigenvectors limited to N <= 5; request eigenvalues only");

  LiouvilleSpectrum s;
  s.provenance = Provenance::Perturbative;
  s.f.resize(Eigen::Index(D));
  if (vectors) {
    s.right = Matrix::Zero(Eigen::Index(D), Eigen::Index(D));
    s.left = Matrix::Zero(Eigen::Index(D), Eigen::Index(D));
  }
  Eigen::Index k = 0;
  double worst = 1.0;
  for (const auto& c : clusters) {
    const EigenPair ep = diagonalize(model.block(c), vectors);
    worst = std::max(worst, ep.condition);
    for (Eigen::Index j = 0; j < ep.values.size(); ++j, ++k) {
      s.f[k] = ep.values[j];
      if (vectors)
        for (std::size_t q = 0; q < c.size(); ++q) {
          s.right(Eigen::Index(c[q]), k) = ep.right(Eigen::Index(q), j);
          s.left(k, Eigen::Index(c[q])) = ep.left(j, Eigen::Index(q));
        }
    }
  }
  s.condition = worst;
  s.ill_conditioned = worst > kIllConditioned;

  // report the alternative clustering around ambiguous gaps
  for (std::size_t cut : cuts) {
    const double w0 = dyads[cut - 1].w, w1 = dyads[cut].w;
    std::vector<std::size_t> merged;
    for (const auto& dy : dyads)
      if (std::abs(dy.w - w0) <= scale * 1.5 || std::abs(dy.w - w1) <= scale * 1.5) merged.push_back(dy.index);
    const bool currently_split = (w1 - w0) > scale;
    std::vector<std::vector<std::size_t>> alt;
    if (currently_split) {
      alt.push_back(merged);
    } else {
      std::vector<std::size_t> lo, hi;
      for (const auto& dy : dyads)
        if (std::abs(dy.w - w0) <= scale * 1.5 || std::abs(dy.w - w1) <= scale * 1.5)
          (dy.w <= w0 ? lo : hi).push_back(dy.index);
      alt = {lo, hi};
    }
    std::ostringstream os;
    os << "cluster gap " << (w1 - w0) << " within 10% of kappa*gamma=" << scale
       << "; alternative clustering eigenvalues:";
    for (const auto& blk : alt) {
      if (blk.empty()) continue;
      const EigenPair ep = diagonalize(model.block(blk), false);
      for (Eigen::Index j = 0; j < ep.values.size(); ++j)
        os << ' ' << ep.values[j].real() << (ep.values[j].imag() < 0 ? "" : "+") << ep.values[j].imag() << 'i';
    }
    s.warnings.push_back(os.str());
  }

  const auto order = mode_order(s.f);
  Vector f(s.f.size());
  for (Eigen::Index j = 0; j < f.size(); ++j) f[j] = s.f[order[std::size_t(j)]];
  if (vectors) {
    Matrix R(s.right.rows(), s.right.cols()), Lm(s.left.rows(), s.left.cols());
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      R.col(j) = s.right.col(order[std::size_t(j)]);
      Lm.row(j) = s.left.row(order[std::size_t(j)]);
    }
    s.right = std::move(R);
    s.left = std::move(Lm);
  }
  s.f = std::move(f);
  return s;
}

}  // namespace qd
