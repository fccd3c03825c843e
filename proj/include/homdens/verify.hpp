#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "homdens/common.hpp"
#include "homdens/density.hpp"
#include "homdens/graph.hpp"
#include "homdens/kernel.hpp"

namespace homdens {

/// One inequality evaluation: both sides, their difference, and the ratio
/// when the right side is positive.
struct MarginRecord {
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  double ratio = 0;
  bool ratioValid = false;
};

MarginRecord make_margin(double lhs, double rhs);

struct Violation {
  long instance = -1;
  std::string descriptor;
  double margin = 0;
};

/// Aggregated outcome of a batch of inequality checks. Violations are
/// exactly the recorded margins below -tolerance.
struct VerificationReport {
  std::string inequalityId;
  std::string toleranceKind;  // "absolute" or "ratio"
  double tolerance = 0;
  long instancesTested = 0;
  double minMargin = std::numeric_limits<double>::infinity();
  double minRatio = std::numeric_limits<double>::infinity();
  bool anyRatio = false;
  std::uint64_t seedLo = 0;
  std::uint64_t seedHi = 0;
  std::vector<Violation> violations;

  /// Records one margin; flags a violation when margin < -tolerance (for
  /// kind "absolute") or ratio < 1 - tolerance (for kind "ratio").
  void record(long instance, const std::string& descriptor, const MarginRecord& m);
};

// --- single-instance checkers ---------------------------------------------

/// t(G, g) against ||g||^e(G).
MarginRecord check_conjecture(const Graph& G, const StepKernel& g,
                              const EvalBudget& budget = {});

/// t(H, h) against ||h||^e(H) for nonnegative rectangular kernels.
MarginRecord check_sidorenko(const BipartiteGraph& H, const RectKernel& h,
                             const EvalBudget& budget = {});

/// Vertex-weighted density inequality; both sides from t_weighted.
MarginRecord check_extra_good(const Graph& G, const StepKernel& g,
                              const std::vector<Eigen::VectorXd>& fs,
                              const EvalBudget& budget = {});

/// (z^T A^k z)(z^T z)^{k-1} >= (z^T A z)^k with the equality flag raised when
/// z is numerically an eigenvector of A (or zero).
struct PowerMeanRecord {
  MarginRecord margin;
  bool equalityExpected = false;
  double eigenResidual = 0;
};
PowerMeanRecord check_mulholland_smith(const Eigen::MatrixXd& A, const Eigen::VectorXd& z,
                                       int power);

/// nm * s(A A^T A) >= s(A)^3 for nonnegative rectangular matrices.
MarginRecord check_awm(const Eigen::MatrixXd& A);

/// The two triangle-versus-star bounds and their corollary forms at m = 1, 2.
/// The kernel is assumed doubly nonnegative (caller's responsibility).
struct TriangleBounds {
  MarginRecord triangleStar;     // t(K3) vs t(K_{1,2})^{3/2}
  MarginRecord diamondSquare;    // t(K4-e) vs t(K_{2,2})^{5/4}
  MarginRecord productBoundM1;   // t(K3) vs t(K_{2,1}) ||g||
  MarginRecord productBoundM2;   // t(K4-e) vs t(K_{2,2}) ||g||
};
TriangleBounds check_triangle_lemma(const StepKernel& g, const EvalBudget& budget = {});

enum class BipartiteSide { Left, Right };

/// For H regular of degree a on the chosen side: t(H, h) against
/// t(star_a, h)^{e(H)/a}. The validity of the bound presumes H satisfies the
/// bipartite density inequality; that assumption is recorded by the caller,
/// not checked here.
MarginRecord check_same_degree(const BipartiteGraph& H, const RectKernel& h,
                               BipartiteSide side, const EvalBudget& budget = {});

/// |t(G, gram(h)) - t(Sub(G), h)| relative to max(1, value).
double check_sub_identity(const Graph& G, const RectKernel& h,
                          const EvalBudget& budget = {});

/// Verifies that t(C_{2k})^{1/2k} is non-increasing for k = 2..maxHalfLength;
/// the margin is the smallest consecutive difference.
MarginRecord check_schatten_chain(const StepKernel& g, int maxHalfLength);

/// Edge-decoupling bound: prod_e t(H, f_e) against (mixed density)^{e(H)}.
MarginRecord check_holder(const BipartiteGraph& H, const std::vector<RectKernel>& edgeKernels,
                          const EvalBudget& budget = {});

/// |t(G, tensor-of-h) - t(Inc(G), h)| relative to max(1, value).
double check_incidence_identity(const Hypergraph& G, const RectKernel& h,
                                const EvalBudget& budget = {});

// --- simplex quadratic program ---------------------------------------------

/// Minimum of x^T A x over the probability simplex.
struct DensityResult {
  double value = 0;
  Eigen::VectorXd argmin;
  std::vector<int> support;
  double kktResidual = 0;
  bool certified = false;  // true for the exact support-enumeration path
};

/// Exact global minimum by support enumeration for k <= 20 (singular
/// supports fall back to a least-squares stationary solve); beyond that, a
/// projected-gradient result flagged non-certified.
DensityResult min_density(const StepKernel& g);

/// Projected-gradient refinement from a starting point; used to corroborate
/// the exact path.
DensityResult refine_min_density(const Eigen::MatrixXd& A, Eigen::VectorXd x0,
                                 int iterations = 2000);

// --- catalog infimum and counterexample search ------------------------------

struct CatalogInfimum {
  double value = 0;
  Graph argmin;
  double edgeDensity = 0;  // ||g||, for the conjectured comparison
  double minDensity = 0;   // d(A)
};

/// min over the catalog of t(G, g)^{1/e(G)} (graphs without edges are
/// skipped); an upper bound on the infimum over all graphs.
CatalogInfimum c_estimate(const StepKernel& g, const std::vector<Graph>& catalog,
                          const EvalBudget& budget = {});

struct SearchResult {
  double bestRatio = 0;
  StepKernel kernel;
  long accepted = 0;
  long rejected = 0;
};

/// Hill-climbing over factor matrices B (A = B B^T, entrywise nonnegativity
/// enforced by rejection) minimizing t(G, g)/||g||^e(G). Multiplicative
/// Gaussian perturbations; the step halves after 20 consecutive rejections.
SearchResult search_counterexample(const Graph& G, int k, int rank, long iterations,
                                   std::uint64_t seed, const EvalBudget& budget = {});

}  // namespace homdens
