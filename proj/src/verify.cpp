#include "homdens/verify.hpp"

#include <algorithm>
#include <cmath>

namespace homdens {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MarginRecord make_margin(double lhs, double rhs) {
  MarginRecord m;
  m.lhs = lhs;
  m.rhs = rhs;
  m.margin = lhs - rhs;
  if (rhs > 0) {
    m.ratio = lhs / rhs;
    m.ratioValid = true;
  }
  return m;
}

void VerificationReport::record(long instance, const std::string& descriptor,
                                const MarginRecord& m) {
  ++instancesTested;
  minMargin = std::min(minMargin, m.margin);
  if (m.ratioValid) {
    minRatio = std::min(minRatio, m.ratio);
    anyRatio = true;
  }
  bool violated;
  if (toleranceKind == "ratio")
    violated = m.ratioValid ? m.ratio < 1.0 - tolerance : m.margin < -tolerance;
  else
    violated = m.margin < -tolerance;
  if (violated) violations.push_back({instance, descriptor, m.margin});
}

MarginRecord check_conjecture(const Graph& G, const StepKernel& g,
                              const EvalBudget& budget) {
  const double t = t_dp(G, g, budget);
  const double base = std::pow(edge_density(g), double(edge_count(G)));
  return make_margin(t, base);
}

MarginRecord check_sidorenko(const BipartiteGraph& H, const RectKernel& h,
                             const EvalBudget& budget) {
  if (!h.nonneg)
    throw std::invalid_argument("check_sidorenko: kernel must be nonnegative");
  const double t = t_bipartite(H, h, budget);
  const double base = std::pow(edge_density(h), double(H.edges.size()));
  return make_margin(t, base);
}

MarginRecord check_extra_good(const Graph& G, const StepKernel& g,
                              const std::vector<VectorXd>& fs, const EvalBudget& budget) {
  const auto [lhs, rhs] = t_weighted(G, g, fs, budget);
  return make_margin(lhs, rhs);
}

PowerMeanRecord check_mulholland_smith(const MatrixXd& A, const VectorXd& z, int power) {
  if (power < 1) throw std::invalid_argument("check_mulholland_smith: power must be >= 1");
  if (A.rows() != A.cols() || A.rows() != z.size())
    throw std::invalid_argument("check_mulholland_smith: dimension mismatch");
  if (A.minCoeff() < 0 || (A - A.transpose()).lpNorm<Eigen::Infinity>() > 1e-12)
    throw std::invalid_argument("check_mulholland_smith: matrix must be symmetric nonnegative");
  if (z.minCoeff() < 0)
    throw std::invalid_argument("check_mulholland_smith: vector must be nonnegative");

  VectorXd Akz = z;
  for (int i = 0; i < power; ++i) Akz = A * Akz;
  const double zz = z.dot(z);
  const double lhs = z.dot(Akz) * std::pow(zz, double(power - 1));
  const double rhs = std::pow(z.dot(A * z), double(power));

  PowerMeanRecord rec;
  rec.margin = make_margin(lhs, rhs);
  const double zn = z.norm();
  if (zn == 0) {
    rec.equalityExpected = true;  // degenerate: the zero vector
    rec.eigenResidual = 0;
  } else {
    const double rayleigh = z.dot(A * z) / zz;
    rec.eigenResidual = (A * z - rayleigh * z).norm();
    rec.equalityExpected = rec.eigenResidual <= 1e-9 * zn;
  }
  return rec;
}

MarginRecord check_awm(const MatrixXd& A) {
  if (A.minCoeff() < 0)
    throw std::invalid_argument("check_awm: matrix must be nonnegative");
  const double nm = double(A.rows()) * double(A.cols());
  const double lhs = nm * (A * A.transpose() * A).sum();
  const double rhs = std::pow(A.sum(), 3.0);
  return make_margin(lhs, rhs);
}

TriangleBounds check_triangle_lemma(const StepKernel& g, const EvalBudget& budget) {
  const double density = edge_density(g);
  const double tK3 = t_dp(complete_graph(3), g, budget);
  const double tStar2 = t_dp(complete_bipartite_graph(1, 2), g, budget);
  Graph k4e = complete_graph(4);
  k4e.edges.erase(std::find(k4e.edges.begin(), k4e.edges.end(), std::make_pair(0, 1)));
  const double tK4e = t_dp(k4e, g, budget);
  const double tC4 = t_dp(complete_bipartite_graph(2, 2), g, budget);

  TriangleBounds out;
  out.triangleStar = make_margin(tK3, std::pow(tStar2, 1.5));
  out.diamondSquare = make_margin(tK4e, std::pow(tC4, 1.25));
  out.productBoundM1 = make_margin(tK3, tStar2 * density);
  out.productBoundM2 = make_margin(tK4e, tC4 * density);
  return out;
}

MarginRecord check_same_degree(const BipartiteGraph& H, const RectKernel& h,
                               BipartiteSide side, const EvalBudget& budget) {
  if (!h.nonneg)
    throw std::invalid_argument("check_same_degree: kernel must be nonnegative");
  std::vector<int> ldeg(H.nLeft, 0), rdeg(H.nRight, 0);
  for (auto [l, r] : H.edges) {
    ++ldeg[l];
    ++rdeg[r];
  }
  const auto& deg = side == BipartiteSide::Left ? ldeg : rdeg;
  if (deg.empty()) throw std::invalid_argument("check_same_degree: empty side");
  const int a = deg[0];
  for (int d : deg)
    if (d != a)
      throw std::invalid_argument("check_same_degree: chosen side is not regular");
  if (a < 1) throw std::invalid_argument("check_same_degree: side has isolated vertices");

  // star density with the center on the chosen side, in closed form
  double star = 0;
  if (side == BipartiteSide::Left) {
    const VectorXd rowSums = h.values * h.colWeights;
    for (int x = 0; x < h.rows(); ++x)
      star += h.rowWeights(x) * std::pow(rowSums(x), double(a));
  } else {
    const VectorXd colSums = h.values.transpose() * h.rowWeights;
    for (int y = 0; y < h.cols(); ++y)
      star += h.colWeights(y) * std::pow(colSums(y), double(a));
  }
  const double t = t_bipartite(H, h, budget);
  return make_margin(t, std::pow(star, double(H.edges.size()) / double(a)));
}

double check_sub_identity(const Graph& G, const RectKernel& h, const EvalBudget& budget) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("check_sub_identity: kernel must be square");
  const double lhs = t_dp(G, gram(h), budget);
  const double rhs = t_bipartite(subdivision(G), h, budget);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

MarginRecord check_schatten_chain(const StepKernel& g, int maxHalfLength) {
  if (maxHalfLength < 3)
    throw std::invalid_argument("check_schatten_chain: need at least two chain entries");
  double prev = 0, minDiff = std::numeric_limits<double>::infinity();
  MarginRecord worst;
  for (int k = 2; k <= maxHalfLength; ++k) {
    const double value = std::pow(schatten_density(g, 2 * k), 1.0 / double(2 * k));
    if (k > 2) {
      const double diff = prev - value;
      if (diff < minDiff) {
        minDiff = diff;
        worst = make_margin(prev, value);
      }
    }
    prev = value;
  }
  return worst;
}

MarginRecord check_holder(const BipartiteGraph& H, const std::vector<RectKernel>& edgeKernels,
                          const EvalBudget& budget) {
  const double mixed = t_bipartite_edges(H, edgeKernels, budget);
  double prod = 1;
  for (const auto& f : edgeKernels) prod *= t_bipartite(H, f, budget);
  return make_margin(prod, std::pow(mixed, double(H.edges.size())));
}

double check_incidence_identity(const Hypergraph& G, const RectKernel& h,
                                const EvalBudget& budget) {
  const auto tensor = product_tensor(h, G.r);
  const double lhs = t_hypergraph(G, tensor, budget);
  const double rhs = t_bipartite(incidence(G), h, budget);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

// --- simplex quadratic program ----------------------------------------------

namespace {

// Euclidean projection onto the probability simplex.
VectorXd project_simplex(VectorXd x) {
  const int k = int(x.size());
  std::vector<double> u(x.data(), x.data() + k);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0, theta = 0;
  int support = 0;
  for (int i = 0; i < k; ++i) {
    cum += u[std::size_t(i)];
    const double cand = (cum - 1.0) / double(i + 1);
    if (u[std::size_t(i)] - cand > 0) {
      theta = cand;
      support = i + 1;
    }
  }
  (void)support;
  for (int i = 0; i < k; ++i) x(i) = std::max(0.0, x(i) - theta);
  return x;
}

double kkt_residual(const MatrixXd& A, const VectorXd& x, double lambda) {
  double res = std::abs(x.sum() - 1.0);
  res = std::max(res, std::max(0.0, -x.minCoeff()));
  const VectorXd grad = A * x;
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) > 1e-10)
      res = std::max(res, std::abs(grad(i) - lambda));
    else
      res = std::max(res, std::max(0.0, lambda - grad(i)));
  }
  return res;
}

}  // namespace

DensityResult refine_min_density(const MatrixXd& A, VectorXd x0, int iterations) {
  VectorXd x = project_simplex(std::move(x0));
  const double lip = 2.0 * A.cwiseAbs().rowwise().sum().maxCoeff();
  double step = lip > 0 ? 1.0 / lip : 1.0;
  double f = x.dot(A * x);
  for (int it = 0; it < iterations; ++it) {
    const VectorXd grad = 2.0 * (A * x);
    VectorXd trial = project_simplex(x - step * grad);
    const double ft = trial.dot(A * trial);
    if (ft <= f) {
      x = std::move(trial);
      f = ft;
      step *= 1.1;
    } else {
      step *= 0.5;
      if (step < 1e-16) break;
    }
  }
  DensityResult out;
  out.value = f;
  out.argmin = x;
  for (int i = 0; i < x.size(); ++i)
    if (x(i) > 1e-10) out.support.push_back(i);
  out.kktResidual = kkt_residual(A, x, x.dot(A * x));
  out.certified = false;
  return out;
}

DensityResult min_density(const StepKernel& g) {
  const MatrixXd& A = g.values;
  const int k = int(A.rows());
  if (k > 20) return refine_min_density(A, VectorXd::Constant(k, 1.0 / k));

  DensityResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) support.push_back(i);
    const int s = int(support.size());

    // stationarity on the face: A_S x = lambda 1, sum x = 1
    MatrixXd M = MatrixXd::Zero(s + 1, s + 1);
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < s; ++j) M(i, j) = A(support[std::size_t(i)], support[std::size_t(j)]);
      M(i, s) = -1;
      M(s, i) = 1;
    }
    VectorXd rhs = VectorXd::Zero(s + 1);
    rhs(s) = 1;

    VectorXd sol;
    Eigen::FullPivLU<MatrixXd> lu(M);
    if (lu.isInvertible()) {
      sol = lu.solve(rhs);
    } else {
      // singular face: least-squares stationary solve, verified below
      sol = M.completeOrthogonalDecomposition().solve(rhs);
      if ((M * sol - rhs).norm() > 1e-9) continue;  // inconsistent system
    }
    VectorXd x = VectorXd::Zero(k);
    for (int i = 0; i < s; ++i) x(support[std::size_t(i)]) = sol(i);
    const double lambda = sol(s);
    if (x.minCoeff() < -1e-12) continue;
    x = x.cwiseMax(0.0);
    x /= x.sum();

    // off-support multipliers must not undercut lambda
    bool feasible = true;
    const VectorXd grad = A * x;
    for (int i = 0; i < k && feasible; ++i)
      if (x(i) <= 1e-12 && grad(i) < lambda - 1e-9) feasible = false;
    if (!feasible) continue;

    const double value = x.dot(A * x);
    if (value < best.value) {
      best.value = value;
      best.argmin = x;
      best.support.clear();
      for (int i = 0; i < k; ++i)
        if (x(i) > 1e-10) best.support.push_back(i);
      best.kktResidual = kkt_residual(A, x, lambda);
      best.certified = true;
    }
  }
  return best;
}

CatalogInfimum c_estimate(const StepKernel& g, const std::vector<Graph>& catalog,
                          const EvalBudget& budget) {
  CatalogInfimum out;
  out.value = std::numeric_limits<double>::infinity();
  out.edgeDensity = edge_density(g);
  out.minDensity = min_density(g).value;
  for (const auto& G : catalog) {
    const int e = edge_count(G);
    if (e < 1) continue;
    const double value = std::pow(t_dp(G, g, budget), 1.0 / double(e));
    if (value < out.value) {
      out.value = value;
      out.argmin = G;
    }
  }
  if (!std::isfinite(out.value))
    throw std::invalid_argument("c_estimate: catalog has no graph with edges");
  return out;
}

SearchResult search_counterexample(const Graph& G, int k, int rank, long iterations,
                                   std::uint64_t seed, const EvalBudget& budget) {
  if (k < 1 || rank < 1)
    throw std::invalid_argument("search_counterexample: k and rank must be >= 1");
  if (edge_count(G) < 1)
    throw std::invalid_argument("search_counterexample: graph needs at least one edge");
  const int e = edge_count(G);
  Rng rng(derive_seed(seed, 0x5ea2c4));

  auto ratioOf = [&](const MatrixXd& A) {
    StepKernel g;
    g.values = A;
    g.weights = VectorXd::Constant(k, 1.0 / k);
    const double base = std::pow(edge_density(g), double(e));
    if (base <= 0) return std::numeric_limits<double>::infinity();
    return t_dp(G, g, budget) / base;
  };

  // start from an accepted doubly nonnegative sample
  MatrixXd B(k, rank);
  MatrixXd A;
  for (;;) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < rank; ++j) B(i, j) = rng.uniform(-0.4, 1.0);
    A = B * B.transpose();
    if (A.minCoeff() >= 0) break;
  }
  SearchResult out;
  out.bestRatio = ratioOf(A);

  double sigma = 0.2;
  int consecutiveRejects = 0;
  for (long it = 0; it < iterations; ++it) {
    MatrixXd trial = B;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < rank; ++j) trial(i, j) *= std::exp(sigma * rng.normal());
    const MatrixXd At = trial * trial.transpose();
    bool accept = At.minCoeff() >= 0;
    double ratio = 0;
    if (accept) {
      ratio = ratioOf(At);
      accept = ratio < out.bestRatio;
    }
    if (accept) {
      B = std::move(trial);
      out.bestRatio = ratio;
      ++out.accepted;
      consecutiveRejects = 0;
    } else {
      ++out.rejected;
      if (++consecutiveRejects >= 20) {
        sigma = std::max(1e-6, sigma / 2);
        consecutiveRejects = 0;
      }
    }
  }
  out.kernel.values = B * B.transpose();
  out.kernel.values = ((out.kernel.values + out.kernel.values.transpose()) / 2).eval();
  out.kernel.weights = VectorXd::Constant(k, 1.0 / k);
  return out;
}

}  // namespace homdens
