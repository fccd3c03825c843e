#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "homdens/common.hpp"
#include "homdens/graph.hpp"

namespace homdens {

/// Symmetric step kernel on [0,1]^2: a k x k matrix of nonnegative values
/// and a vector of positive cell widths summing to 1.
template <typename Scalar>
struct StepKernelT {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix values;
  Vector weights;

  int cells() const { return int(values.rows()); }
};

/// Rectangular (not necessarily symmetric) step kernel with independent row
/// and column cell partitions. Entries may be signed; `nonneg` records
/// whether every entry is >= 0.
template <typename Scalar>
struct RectKernelT {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix values;
  Vector rowWeights;
  Vector colWeights;
  bool nonneg = false;

  int rows() const { return int(values.rows()); }
  int cols() const { return int(values.cols()); }
};

/// Symmetric nonnegative step kernel of arity r on [0,1]^r, stored as a
/// flat row-major array of size cells^r.
template <typename Scalar>
struct TensorKernelT {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int arity = 2;
  int cells = 0;
  std::vector<Scalar> values;
  Vector weights;

  Scalar at(const std::vector<int>& index) const {
    std::size_t flat = 0;
    for (int i : index) flat = flat * std::size_t(cells) + std::size_t(i);
    return values[flat];
  }
};

using StepKernel = StepKernelT<double>;
using RectKernel = RectKernelT<double>;
using TensorKernel = TensorKernelT<double>;

enum class KernelKind { SymNonneg, DoublyNonneg, CompletelyPositive };
enum class SpectralStatus { NotSymmetricNonneg, SymNonneg, DoublyNonnegative };

/// Eigenvalues of the weighted operator D_w^{1/2} A D_w^{1/2} together with
/// the spectral status and a one-sided complete-positivity certificate.
/// `cpFactor`, when present, is an entrywise nonnegative B with
/// A ~ B B^T up to `cpResidual` in Frobenius norm. Absence of a factor means
/// "unknown", never "not completely positive".
template <typename Scalar>
struct SpectralClassificationT {
  using Matrix = typename StepKernelT<Scalar>::Matrix;
  using Vector = typename StepKernelT<Scalar>::Vector;

  Vector eigenvalues;  // descending
  SpectralStatus status = SpectralStatus::NotSymmetricNonneg;
  std::optional<Matrix> cpFactor;
  Scalar cpResidual = Scalar(0);

  bool doublyNonnegative() const { return status == SpectralStatus::DoublyNonnegative; }
  bool certifiedCP() const { return cpFactor.has_value(); }
};

using SpectralClassification = SpectralClassificationT<double>;

namespace detail {

template <typename Vector>
void check_weights(const Vector& w, const char* what) {
  using Scalar = typename Vector::Scalar;
  if (w.size() == 0) throw std::invalid_argument(std::string(what) + ": empty weights");
  if (w.minCoeff() <= Scalar(0))
    throw std::invalid_argument(std::string(what) + ": weights must be positive");
  if (std::abs(double(w.sum()) - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(what) + ": weights must sum to 1");
}

}  // namespace detail

/// Builds a step kernel from a symmetric nonnegative matrix; weights default
/// to uniform cells. The matrix is symmetrized exactly after validation.
template <typename Scalar>
StepKernelT<Scalar> from_matrix(
    const typename StepKernelT<Scalar>::Matrix& A,
    std::optional<typename StepKernelT<Scalar>::Vector> w = std::nullopt) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw std::invalid_argument("from_matrix: matrix must be square and nonempty");
  const Scalar scale = std::max(Scalar(1), A.template lpNorm<Eigen::Infinity>());
  if ((A - A.transpose()).template lpNorm<Eigen::Infinity>() > Scalar(1e-12) * scale)
    throw std::invalid_argument("from_matrix: matrix is not symmetric");
  if (A.minCoeff() < Scalar(0))
    throw std::invalid_argument("from_matrix: matrix has a negative entry");
  StepKernelT<Scalar> g;
  g.values = ((A + A.transpose()) / Scalar(2)).eval();
  const int k = int(A.rows());
  if (w) {
    if (int(w->size()) != k)
      throw std::invalid_argument("from_matrix: weight length does not match cell count");
    detail::check_weights(*w, "from_matrix");
    g.weights = *w;
  } else {
    g.weights = StepKernelT<Scalar>::Vector::Constant(k, Scalar(1) / Scalar(k));
  }
  return g;
}

inline StepKernel from_matrix_d(const Eigen::MatrixXd& A,
                                std::optional<Eigen::VectorXd> w = std::nullopt) {
  return from_matrix<double>(A, std::move(w));
}

/// Integral of the kernel: w^T A w.
template <typename Scalar>
Scalar edge_density(const StepKernelT<Scalar>& g) {
  return g.weights.dot(g.values * g.weights);
}

/// Integral of a rectangular kernel: wRow^T H wCol.
template <typename Scalar>
Scalar edge_density(const RectKernelT<Scalar>& h) {
  return h.rowWeights.dot(h.values * h.colWeights);
}

template <typename Scalar>
RectKernelT<Scalar> make_rect(
    const typename RectKernelT<Scalar>::Matrix& H,
    std::optional<typename RectKernelT<Scalar>::Vector> wRow = std::nullopt,
    std::optional<typename RectKernelT<Scalar>::Vector> wCol = std::nullopt) {
  if (H.rows() == 0 || H.cols() == 0)
    throw std::invalid_argument("make_rect: matrix must be nonempty");
  RectKernelT<Scalar> h;
  h.values = H;
  auto uniform = [](int k) {
    return RectKernelT<Scalar>::Vector::Constant(k, Scalar(1) / Scalar(k));
  };
  h.rowWeights = wRow ? *wRow : uniform(int(H.rows()));
  h.colWeights = wCol ? *wCol : uniform(int(H.cols()));
  if (int(h.rowWeights.size()) != H.rows() || int(h.colWeights.size()) != H.cols())
    throw std::invalid_argument("make_rect: weight lengths do not match the matrix");
  detail::check_weights(h.rowWeights, "make_rect (rows)");
  detail::check_weights(h.colWeights, "make_rect (cols)");
  h.nonneg = H.minCoeff() >= Scalar(0);
  return h;
}

inline RectKernel make_rect_d(const Eigen::MatrixXd& H,
                              std::optional<Eigen::VectorXd> wRow = std::nullopt,
                              std::optional<Eigen::VectorXd> wCol = std::nullopt) {
  return make_rect<double>(H, std::move(wRow), std::move(wCol));
}

/// Views a symmetric step kernel as a rectangular one (same matrix, same
/// weights on both sides).
template <typename Scalar>
RectKernelT<Scalar> rect_from_step(const StepKernelT<Scalar>& g) {
  RectKernelT<Scalar> h;
  h.values = g.values;
  h.rowWeights = g.weights;
  h.colWeights = g.weights;
  h.nonneg = true;
  return h;
}

/// Gram kernel of h: A = H diag(wCol) H^T with cell weights wRow. The result
/// is positive semidefinite by construction; a signed h whose Gram matrix
/// has a genuinely negative entry is rejected.
template <typename Scalar>
StepKernelT<Scalar> gram(const RectKernelT<Scalar>& h) {
  using Matrix = typename StepKernelT<Scalar>::Matrix;
  Matrix A = h.values * h.colWeights.asDiagonal() * h.values.transpose();
  A = ((A + A.transpose()) / Scalar(2)).eval();
  const Scalar scale = std::max(Scalar(1), A.template lpNorm<Eigen::Infinity>());
  if (A.minCoeff() < Scalar(-1e-12) * scale)
    throw std::invalid_argument("gram: result has a negative entry");
  A = A.cwiseMax(Scalar(0));
  StepKernelT<Scalar> g;
  g.values = std::move(A);
  g.weights = h.rowWeights;
  return g;
}

/// Eigenvalues (descending) of D_w^{1/2} A D_w^{1/2}.
template <typename Scalar>
typename StepKernelT<Scalar>::Vector weighted_spectrum(const StepKernelT<Scalar>& g) {
  using Matrix = typename StepKernelT<Scalar>::Matrix;
  const auto d = g.weights.array().sqrt().matrix();
  Matrix M = d.asDiagonal() * g.values * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(M, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse().eval();
}

namespace detail {

/// Real roots of x^3 + p x + q = 0.
template <typename Scalar>
int cubic_roots(Scalar p, Scalar q, Scalar roots[3]) {
  const Scalar disc = (q / 2) * (q / 2) + (p / 3) * (p / 3) * (p / 3);
  if (disc > Scalar(0)) {
    const Scalar s = std::sqrt(disc);
    roots[0] = std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s);
    return 1;
  }
  if (p == Scalar(0)) {
    roots[0] = Scalar(0);
    return 1;
  }
  const Scalar r = Scalar(2) * std::sqrt(-p / 3);
  const Scalar arg = std::clamp((-q / 2) / std::sqrt(-(p / 3) * (p / 3) * (p / 3)),
                                Scalar(-1), Scalar(1));
  const Scalar theta = std::acos(arg) / 3;
  for (int i = 0; i < 3; ++i)
    roots[i] = r * std::cos(theta - Scalar(2) * Scalar(M_PI) * Scalar(i) / 3);
  return 3;
}

/// One full sweep of exact coordinate descent for min ||A - B B^T||_F^2 over
/// B >= 0: each entry update solves its quartic subproblem in closed form.
template <typename Matrix>
void symnmf_cd_sweep(const Matrix& A, Matrix& B) {
  using Scalar = typename Matrix::Scalar;
  const int k = int(B.rows());
  const int rank = int(B.cols());
  Matrix M = B * B.transpose();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < rank; ++j) {
      const Scalar x0 = B(i, j);
      Scalar s = Scalar(0), q = Scalar(0);
      for (int t = 0; t < k; ++t) {
        if (t == i) continue;
        const Scalar btj = B(t, j);
        s += btj * btj;
        q -= btj * (A(i, t) - M(i, t) + x0 * btj);
      }
      const Scalar ci = M(i, i) - x0 * x0;
      const Scalar p = s - (A(i, i) - ci);
      Scalar roots[3];
      const int nr = cubic_roots<Scalar>(p, q, roots);
      auto objective = [&](Scalar x) {
        return x * x * x * x / 4 + p * x * x / 2 + q * x;
      };
      Scalar best = Scalar(0);
      Scalar bestVal = Scalar(0);
      for (int t = 0; t < nr; ++t) {
        if (roots[t] <= Scalar(0)) continue;
        const Scalar val = objective(roots[t]);
        if (val < bestVal) {
          bestVal = val;
          best = roots[t];
        }
      }
      if (best != x0) {
        const Scalar dx = best - x0;
        for (int t = 0; t < k; ++t) {
          if (t == i) continue;
          M(i, t) += dx * B(t, j);
          M(t, i) = M(i, t);
        }
        M(i, i) += Scalar(2) * dx * x0 + dx * dx;
        B(i, j) = best;
      }
    }
  }
}

/// Levenberg-Marquardt refinement of ||A - B B^T||_F^2 over the entries of
/// B, projecting back onto the nonnegative orthant after each step. Flat
/// directions from overparameterization are absorbed by the damping term.
template <typename Matrix>
void symnmf_lm_polish(const Matrix& A, Matrix& B, typename Matrix::Scalar accept,
                      int maxIter = 60) {
  using Scalar = typename Matrix::Scalar;
  using Dyn = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int k = int(B.rows());
  const int rank = int(B.cols());
  const int mRes = k * (k + 1) / 2;
  const int nVar = k * rank;
  const Scalar sqrt2 = std::sqrt(Scalar(2));

  auto residVec = [&](const Matrix& Bc, Vec& r) {
    const Dyn R = A - Bc * Bc.transpose();
    int idx = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) r(idx++) = (i == j ? Scalar(1) : sqrt2) * R(i, j);
  };

  Vec r(mRes), rTrial(mRes);
  residVec(B, r);
  Scalar f = r.squaredNorm();
  Scalar lambda = Scalar(1e-6);
  for (int iter = 0; iter < maxIter && std::sqrt(f) > accept; ++iter) {
    Dyn J = Dyn::Zero(mRes, nVar);
    int idx = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        const Scalar w = (i == j) ? Scalar(1) : sqrt2;
        for (int t = 0; t < rank; ++t) {
          J(idx, i * rank + t) += w * B(j, t);
          J(idx, j * rank + t) += w * B(i, t);
        }
        ++idx;
      }
    const Dyn JtJ = J.transpose() * J;
    const Vec Jtr = J.transpose() * r;
    bool accepted = false;
    for (int damp = 0; damp < 12; ++damp) {
      Dyn M = JtJ;
      M.diagonal().array() += lambda;
      const Vec delta = M.ldlt().solve(Jtr);
      Matrix trial = B;
      for (int i = 0; i < k; ++i)
        for (int t = 0; t < rank; ++t)
          trial(i, t) = std::max(Scalar(0), B(i, t) + delta(i * rank + t));
      residVec(trial, rTrial);
      const Scalar ft = rTrial.squaredNorm();
      if (ft < f) {
        B = std::move(trial);
        r = rTrial;
        f = ft;
        lambda = std::max(Scalar(1e-12), lambda / 4);
        accepted = true;
        break;
      }
      lambda *= 8;
    }
    if (!accepted) break;
  }
}

}  // namespace detail

/// Bounded-effort search for an entrywise nonnegative factor B with
/// A ~ B B^T: diagonal and Cholesky fast paths, then multiplicative updates,
/// exact coordinate descent, and a damped Gauss-Newton polish, over several
/// restarts. Returns the factor and its Frobenius residual, or nullopt when
/// none was found within the effort budget. Failure carries no information
/// ("unknown", not a disproof).
template <typename Scalar>
std::optional<std::pair<typename StepKernelT<Scalar>::Matrix, Scalar>> cp_factorize(
    const typename StepKernelT<Scalar>::Matrix& A, Scalar tol, int restarts = 20) {
  using Matrix = typename StepKernelT<Scalar>::Matrix;
  const int k = int(A.rows());
  const Scalar normA = A.norm();
  const Scalar accept = tol * std::max(Scalar(1), normA);

  auto residual = [&](const Matrix& B) { return Scalar((A - B * B.transpose()).norm()); };

  // diagonal matrices factor exactly
  Matrix offdiag = A;
  offdiag.diagonal().setZero();
  if (offdiag.template lpNorm<Eigen::Infinity>() == Scalar(0)) {
    Matrix B = A.diagonal().array().sqrt().matrix().asDiagonal();
    return std::make_pair(B, residual(B));
  }

  // Cholesky succeeds with a nonnegative factor for a useful subclass
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() == Eigen::Success) {
    Matrix L = llt.matrixL();
    if (L.minCoeff() >= Scalar(-1e-14) * std::max(Scalar(1), normA)) {
      L = L.cwiseMax(Scalar(0));
      if (residual(L) <= accept) return std::make_pair(L, residual(L));
    }
  }

  const int rank = std::max(1, k * (k + 1) / 2);
  std::optional<std::pair<Matrix, Scalar>> bestFound;

  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  for (int restart = 0; restart < restarts; ++restart) {
    Matrix B(k, rank);
    if (restart == 0) {
      // spectral warm start: |V sqrt(max(lambda, 0))| padded with zeros
      B.setZero();
      const auto evals = es.eigenvalues();
      const auto evecs = es.eigenvectors();
      for (int j = 0; j < k; ++j) {
        const Scalar lambda = std::max(Scalar(0), evals(j));
        B.col(j) = (evecs.col(j) * std::sqrt(lambda)).cwiseAbs();
      }
    } else {
      Rng rng(0xC0FFEEull + std::uint64_t(restart));
      const Scalar scale = std::sqrt(std::max(Scalar(1e-12), Scalar(A.mean())) / Scalar(rank));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < rank; ++j) B(i, j) = Scalar(rng.uniform()) * scale;
    }

    // multiplicative warm-up for min ||A - B B^T||_F^2 over B >= 0
    const Scalar eps = Scalar(1e-30);
    for (int it = 0; it < 100; ++it) {
      Matrix numer = A * B;
      Matrix denom = B * (B.transpose() * B);
      B = (B.array() * (Scalar(0.5) + Scalar(0.5) * numer.array() / (denom.array() + eps)))
              .matrix();
    }
    Scalar f = residual(B);
    for (int sweep = 0; sweep < 100 && f > accept; ++sweep) {
      detail::symnmf_cd_sweep(A, B);
      f = residual(B);
    }
    if (f > accept) {
      detail::symnmf_lm_polish(A, B, accept / 100);
      f = residual(B);
    }
    if (!bestFound || f < bestFound->second) bestFound = std::make_pair(B, f);
    if (f <= accept) break;
  }
  if (bestFound && bestFound->second <= accept) return bestFound;
  return std::nullopt;
}

/// Spectral classification of a step kernel. Doubly nonnegative means the
/// minimum eigenvalue of the weighted operator clears -tol * max(1, lambda_max).
template <typename Scalar>
SpectralClassificationT<Scalar> classify(const StepKernelT<Scalar>& g,
                                         Scalar tol = Scalar(1e-9)) {
  SpectralClassificationT<Scalar> out;
  out.eigenvalues = weighted_spectrum(g);
  const Scalar scale = std::max(Scalar(1), g.values.template lpNorm<Eigen::Infinity>());
  const bool symNonneg =
      (g.values - g.values.transpose()).template lpNorm<Eigen::Infinity>() <=
          Scalar(1e-12) * scale &&
      g.values.minCoeff() >= Scalar(0);
  if (!symNonneg) {
    out.status = SpectralStatus::NotSymmetricNonneg;
    return out;
  }
  const Scalar lambdaMax = out.eigenvalues(0);
  const Scalar lambdaMin = out.eigenvalues(out.eigenvalues.size() - 1);
  out.status = lambdaMin >= -tol * std::max(Scalar(1), lambdaMax)
                   ? SpectralStatus::DoublyNonnegative
                   : SpectralStatus::SymNonneg;
  if (out.status == SpectralStatus::DoublyNonnegative) {
    if (auto cp = cp_factorize<Scalar>(g.values, tol)) {
      out.cpFactor = cp->first;
      out.cpResidual = cp->second;
    }
  }
  return out;
}

/// Deterministic random kernel generator with uniform cell weights.
///   SymNonneg:          symmetric entries uniform on [0, 1)
///   DoublyNonneg:       B B^T with signed B, accepted only when entrywise
///                       nonnegative (rejection keeps the matrix exactly PSD)
///   CompletelyPositive: B B^T with entrywise nonnegative B
template <typename Scalar = double>
StepKernelT<Scalar> random_kernel(KernelKind kind, int k, int rank, std::uint64_t seed) {
  using Matrix = typename StepKernelT<Scalar>::Matrix;
  if (k < 1 || rank < 1)
    throw std::invalid_argument("random_kernel: k and rank must be >= 1");
  Rng rng(derive_seed(seed, std::uint64_t(kind) + 1));
  Matrix A(k, k);
  switch (kind) {
    case KernelKind::SymNonneg: {
      Matrix U(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) U(i, j) = Scalar(rng.uniform());
      A = (U + U.transpose()) / Scalar(2);
      break;
    }
    case KernelKind::CompletelyPositive: {
      Matrix B(k, rank);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < rank; ++j) B(i, j) = Scalar(rng.uniform());
      A = B * B.transpose();
      break;
    }
    case KernelKind::DoublyNonneg: {
      Matrix B(k, rank);
      for (long attempt = 0;; ++attempt) {
        if (attempt > 1000000)
          throw std::runtime_error("random_kernel: acceptance sampling stalled");
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < rank; ++j) B(i, j) = Scalar(rng.uniform(-0.4, 1.0));
        A = B * B.transpose();
        if (A.minCoeff() >= Scalar(0)) break;
      }
      break;
    }
  }
  A = ((A + A.transpose()) / Scalar(2)).eval();
  StepKernelT<Scalar> g;
  g.values = std::move(A);
  g.weights = StepKernelT<Scalar>::Vector::Constant(k, Scalar(1) / Scalar(k));
  return g;
}

/// Deterministic random rectangular kernel with uniform weights; entries
/// uniform on [0,1) or on [-1,1) when signed entries are requested.
template <typename Scalar = double>
RectKernelT<Scalar> random_rect_kernel(int nRows, int nCols, std::uint64_t seed,
                                       bool signedEntries = false) {
  using Matrix = typename RectKernelT<Scalar>::Matrix;
  if (nRows < 1 || nCols < 1)
    throw std::invalid_argument("random_rect_kernel: sizes must be >= 1");
  Rng rng(derive_seed(seed, signedEntries ? 2 : 1));
  Matrix H(nRows, nCols);
  for (int i = 0; i < nRows; ++i)
    for (int j = 0; j < nCols; ++j)
      H(i, j) = signedEntries ? Scalar(rng.uniform(-1.0, 1.0)) : Scalar(rng.uniform());
  return make_rect<Scalar>(H);
}

/// Step kernel of the symmetric permutation matrix with a fixed points and
/// b transpositions (k = a + 2b), uniform weights.
template <typename Scalar = double>
StepKernelT<Scalar> permutation_kernel(int a, int b) {
  if (a < 1 || b < 1)
    throw std::invalid_argument("permutation_kernel: need a >= 1 and b >= 1");
  const int k = a + 2 * b;
  typename StepKernelT<Scalar>::Matrix P =
      StepKernelT<Scalar>::Matrix::Zero(k, k);
  for (int i = 0; i < a; ++i) P(i, i) = Scalar(1);
  for (int j = 0; j < b; ++j) {
    P(a + 2 * j, a + 2 * j + 1) = Scalar(1);
    P(a + 2 * j + 1, a + 2 * j) = Scalar(1);
  }
  StepKernelT<Scalar> g;
  g.values = std::move(P);
  g.weights = StepKernelT<Scalar>::Vector::Constant(k, Scalar(1) / Scalar(k));
  return g;
}

/// Symmetric extension of a square nonnegative kernel: block structure
/// [[0, H], [H^T, 0]] with halved weights, so the new integral is half the
/// original one.
template <typename Scalar>
StepKernelT<Scalar> symmetrize(const RectKernelT<Scalar>& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("symmetrize: kernel must be square");
  if (h.values.minCoeff() < Scalar(0))
    throw std::invalid_argument("symmetrize: kernel has a negative entry");
  const int n = h.rows();
  typename StepKernelT<Scalar>::Matrix A =
      StepKernelT<Scalar>::Matrix::Zero(2 * n, 2 * n);
  A.block(0, n, n, n) = h.values;
  A.block(n, 0, n, n) = h.values.transpose();
  StepKernelT<Scalar> g;
  g.values = std::move(A);
  g.weights.resize(2 * n);
  g.weights.head(n) = h.rowWeights / Scalar(2);
  g.weights.tail(n) = h.colWeights / Scalar(2);
  return g;
}

/// Kronecker N-th power of a rectangular kernel with product weights.
template <typename Scalar>
RectKernelT<Scalar> tensor_power(const RectKernelT<Scalar>& h, int N,
                                 long maxCells = 1 << 22) {
  if (N < 1) throw std::invalid_argument("tensor_power: N must be >= 1");
  double cells = 1;
  for (int i = 0; i < N; ++i) cells *= double(h.rows()) * double(h.cols());
  if (cells > double(maxCells))
    throw TooLarge("tensor_power: result exceeds the cell budget");
  RectKernelT<Scalar> out = h;
  for (int step = 1; step < N; ++step) {
    const int n0 = out.rows(), m0 = out.cols();
    const int n1 = h.rows(), m1 = h.cols();
    typename RectKernelT<Scalar>::Matrix H(n0 * n1, m0 * m1);
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1)
        for (int j0 = 0; j0 < m0; ++j0)
          for (int j1 = 0; j1 < m1; ++j1)
            H(i0 * n1 + i1, j0 * m1 + j1) = out.values(i0, j0) * h.values(i1, j1);
    typename RectKernelT<Scalar>::Vector wr(n0 * n1), wc(m0 * m1);
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1) wr(i0 * n1 + i1) = out.rowWeights(i0) * h.rowWeights(i1);
    for (int j0 = 0; j0 < m0; ++j0)
      for (int j1 = 0; j1 < m1; ++j1) wc(j0 * m1 + j1) = out.colWeights(j0) * h.colWeights(j1);
    out.values = std::move(H);
    out.rowWeights = std::move(wr);
    out.colWeights = std::move(wc);
  }
  out.nonneg = out.values.minCoeff() >= Scalar(0);
  return out;
}

/// Cycle density via the spectrum: t(C_length, g) = sum_i lambda_i^length
/// for the eigenvalues of the weighted operator.
template <typename Scalar>
Scalar schatten_density(const StepKernelT<Scalar>& g, int length) {
  if (length < 2) throw std::invalid_argument("schatten_density: length must be >= 2");
  const auto lambda = weighted_spectrum(g);
  Scalar sum = Scalar(0);
  for (int i = 0; i < lambda.size(); ++i) sum += std::pow(lambda(i), Scalar(length));
  return sum;
}

/// Splits cell `cell` into two cells of widths frac*w and (1-frac)*w with
/// duplicated kernel rows/columns. Leaves every density invariant.
template <typename Scalar>
StepKernelT<Scalar> refine_split(const StepKernelT<Scalar>& g, int cell, Scalar frac) {
  const int k = g.cells();
  if (cell < 0 || cell >= k) throw std::invalid_argument("refine_split: bad cell");
  if (!(frac > Scalar(0) && frac < Scalar(1)))
    throw std::invalid_argument("refine_split: fraction must lie in (0,1)");
  StepKernelT<Scalar> out;
  out.values.resize(k + 1, k + 1);
  out.weights.resize(k + 1);
  auto src = [&](int i) { return i <= cell ? i : i - 1; };
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) out.values(i, j) = g.values(src(i), src(j));
  for (int i = 0; i <= k; ++i) out.weights(i) = g.weights(src(i));
  out.weights(cell) *= frac;
  out.weights(cell + 1) *= (Scalar(1) - frac);
  return out;
}

/// Relabels cells by the permutation `perm` (cell i of the result is cell
/// perm[i] of the input).
template <typename Scalar>
StepKernelT<Scalar> permute_cells(const StepKernelT<Scalar>& g,
                                  const std::vector<int>& perm) {
  const int k = g.cells();
  if (int(perm.size()) != k)
    throw std::invalid_argument("permute_cells: permutation length mismatch");
  StepKernelT<Scalar> out;
  out.values.resize(k, k);
  out.weights.resize(k);
  for (int i = 0; i < k; ++i) {
    out.weights(i) = g.weights(perm[i]);
    for (int j = 0; j < k; ++j) out.values(i, j) = g.values(perm[i], perm[j]);
  }
  return out;
}

/// 0/1 step kernel of a graph's adjacency matrix with uniform cells.
template <typename Scalar = double>
StepKernelT<Scalar> adjacency_kernel(const Graph& h) {
  if (h.n < 1) throw std::invalid_argument("adjacency_kernel: empty graph");
  typename StepKernelT<Scalar>::Matrix A =
      StepKernelT<Scalar>::Matrix::Zero(h.n, h.n);
  for (auto [u, v] : h.edges) {
    A(u, v) = Scalar(1);
    A(v, u) = Scalar(1);
  }
  StepKernelT<Scalar> g;
  g.values = std::move(A);
  g.weights = StepKernelT<Scalar>::Vector::Constant(h.n, Scalar(1) / Scalar(h.n));
  return g;
}

template <typename Scalar>
TensorKernelT<Scalar> make_tensor(int arity, int cells, std::vector<Scalar> values,
                                  typename TensorKernelT<Scalar>::Vector weights) {
  if (arity < 1) throw std::invalid_argument("make_tensor: arity must be >= 1");
  std::size_t expect = 1;
  for (int i = 0; i < arity; ++i) expect *= std::size_t(cells);
  if (values.size() != expect)
    throw std::invalid_argument("make_tensor: value array size mismatch");
  detail::check_weights(weights, "make_tensor");
  if (int(weights.size()) != cells)
    throw std::invalid_argument("make_tensor: weight length mismatch");
  TensorKernelT<Scalar> t;
  t.arity = arity;
  t.cells = cells;
  t.values = std::move(values);
  t.weights = std::move(weights);
  // symmetry and nonnegativity checks (index set is small in practice)
  std::vector<int> idx(arity, 0);
  for (std::size_t flat = 0; flat < expect; ++flat) {
    if (t.values[flat] < Scalar(0))
      throw std::invalid_argument("make_tensor: negative entry");
    auto sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::abs(double(t.at(sorted) - t.values[flat])) > 1e-12)
      throw std::invalid_argument("make_tensor: values not symmetric under index permutations");
    for (int pos = arity - 1; pos >= 0; --pos) {
      if (++idx[pos] < cells) break;
      idx[pos] = 0;
    }
  }
  return t;
}

/// Arity-2 tensor kernel of a symmetric step kernel.
template <typename Scalar>
TensorKernelT<Scalar> tensor_from_step(const StepKernelT<Scalar>& g) {
  const int k = g.cells();
  std::vector<Scalar> values(std::size_t(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) values[std::size_t(i) * k + j] = g.values(i, j);
  return make_tensor<Scalar>(2, k, std::move(values), g.weights);
}

/// Arity-r tensor built from a rectangular kernel by integrating out the
/// column variable: T[i_1..i_r] = sum_y wCol_y prod_j H(i_j, y).
template <typename Scalar>
TensorKernelT<Scalar> product_tensor(const RectKernelT<Scalar>& h, int r,
                                     long maxCells = 1 << 22) {
  if (r < 1) throw std::invalid_argument("product_tensor: arity must be >= 1");
  if (!h.nonneg)
    throw std::invalid_argument("product_tensor: kernel must be nonnegative");
  const int k = h.rows();
  double cells = 1;
  for (int i = 0; i < r; ++i) cells *= double(k);
  if (cells > double(maxCells))
    throw TooLarge("product_tensor: result exceeds the cell budget");
  std::vector<Scalar> values(std::size_t(cells), Scalar(0));
  std::vector<int> idx(r, 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    Scalar sum = Scalar(0);
    for (int y = 0; y < h.cols(); ++y) {
      Scalar prod = h.colWeights(y);
      for (int j = 0; j < r; ++j) prod *= h.values(idx[j], y);
      sum += prod;
    }
    values[flat] = sum;
    for (int pos = r - 1; pos >= 0; --pos) {
      if (++idx[pos] < k) break;
      idx[pos] = 0;
    }
  }
  return make_tensor<Scalar>(r, k, std::move(values), h.rowWeights);
}

}  // namespace homdens
