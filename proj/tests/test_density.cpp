#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "homdens/density.hpp"

using namespace homdens;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Test-local oracle: bipartite density by direct summation.
double bipartite_bruteforce(const BipartiteGraph& H, const RectKernel& h) {
  const int n = h.rows(), m = h.cols();
  std::vector<int> phi(H.nLeft, 0), psi(H.nRight, 0);
  double total = 0;
  auto iterate = [&](auto&& self, int pos) -> void {
    if (pos == H.nLeft + H.nRight) {
      double term = 1;
      for (int l = 0; l < H.nLeft; ++l) term *= h.rowWeights(phi[l]);
      for (int r = 0; r < H.nRight; ++r) term *= h.colWeights(psi[r]);
      for (auto [l, r] : H.edges) term *= h.values(phi[l], psi[r]);
      total += term;
      return;
    }
    if (pos < H.nLeft) {
      for (int c = 0; c < n; ++c) {
        phi[pos] = c;
        self(self, pos + 1);
      }
    } else {
      for (int c = 0; c < m; ++c) {
        psi[pos - H.nLeft] = c;
        self(self, pos + 1);
      }
    }
  };
  iterate(iterate, 0);
  return total;
}

// Test-local oracle: hypergraph density by direct summation.
double hypergraph_bruteforce(const Hypergraph& G, const TensorKernel& g) {
  std::vector<int> phi(G.n, 0);
  double total = 0;
  auto iterate = [&](auto&& self, int pos) -> void {
    if (pos == G.n) {
      double term = 1;
      for (int v = 0; v < G.n; ++v) term *= g.weights(phi[v]);
      for (const auto& e : G.edges) {
        std::vector<int> idx;
        for (int v : e) idx.push_back(phi[v]);
        term *= g.at(idx);
      }
      total += term;
      return;
    }
    for (int c = 0; c < g.cells; ++c) {
      phi[pos] = c;
      self(self, pos + 1);
    }
  };
  iterate(iterate, 0);
  return total;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges) edges.emplace_back(perm[u], perm[v]);
  return make_graph(g.n, edges);
}

}  // namespace

TEST_CASE("brute force on closed-form cases") {
  CHECK(t_bruteforce(complete_graph(3), from_matrix_d(MatrixXd::Ones(2, 2))) ==
        doctest::Approx(1.0).epsilon(1e-13));
  for (int k = 2; k <= 4; ++k)
    CHECK(t_bruteforce(complete_graph(3), from_matrix_d(MatrixXd::Identity(k, k))) ==
          doctest::Approx(std::pow(double(k), -2.0)).epsilon(1e-13));
  // equality witness: the swap kernel on the triangle
  const auto perm = permutation_kernel(1, 1);
  CHECK(t_bruteforce(complete_graph(3), perm) == doctest::Approx(1.0 / 27.0).epsilon(1e-13));
  CHECK(std::pow(edge_density(perm), 3) == doctest::Approx(1.0 / 27.0).epsilon(1e-13));

  CHECK_THROWS_AS(t_bruteforce(complete_graph(8), random_kernel(KernelKind::SymNonneg, 20, 1, 1)),
                  BudgetExceeded);
}

TEST_CASE("dp agrees with brute force") {
  const auto dnn = random_kernel(KernelKind::DoublyNonneg, 5, 5, 3);
  const double a = t_bruteforce(cycle_graph(6), dnn);
  const double b = t_dp(cycle_graph(6), dnn);
  CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));

  // chain closed form for the 4-edge path: w^T (A D)^3 A w
  const auto g = random_kernel(KernelKind::SymNonneg, 4, 4, 9);
  const MatrixXd AD = g.values * g.weights.asDiagonal();
  const double chain = g.weights.dot(AD * AD * AD * g.values * g.weights);
  CHECK(t_dp(path_graph(4), g) == doctest::Approx(chain).epsilon(1e-13));

  // multiplicative over connected components
  const Graph g1 = cycle_graph(3), g2 = path_graph(2);
  CHECK(t_dp(disjoint_union(g1, g2), g) ==
        doctest::Approx(t_dp(g1, g) * t_dp(g2, g)).epsilon(1e-12));

  // zero-edge graphs evaluate to 1
  CHECK(t_dp(make_graph(3, {}), g) == 1.0);
  CHECK(t_bruteforce(make_graph(3, {}), g) == 1.0);
}

TEST_CASE("oracle equivalence over small graphs and kernels") {
  int checked = 0;
  for (int n = 2; n <= 5; ++n) {
    const auto graphs = enumerate_connected(n);
    for (std::size_t gi = 0; gi < graphs.size(); gi += 2) {
      Rng rng(derive_seed(77, gi + 100 * n));
      const auto kind = KernelKind(rng.uniform_int(0, 2));
      const auto kern = random_kernel(kind, rng.uniform_int(2, 4), 3, rng.next());
      const double a = t_bruteforce(graphs[gi], kern);
      const double b = t_dp(graphs[gi], kern);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("isomorphism invariance and monotonicity") {
  Rng rng(5);
  const Graph g = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}});
  const auto kern = random_kernel(KernelKind::DoublyNonneg, 3, 3, 12);
  const double base = t_dp(g, kern);

  std::vector<int> perm = {0, 1, 2, 3, 4};
  for (int trial = 0; trial < 10; ++trial) {
    for (int i = 4; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
    CHECK(t_dp(relabel(g, perm), kern) == doctest::Approx(base).epsilon(1e-12));
  }
  // simultaneous cell permutation of the kernel
  std::vector<int> cperm = {2, 0, 1};
  CHECK(t_dp(g, permute_cells(kern, cperm)) == doctest::Approx(base).epsilon(1e-12));

  // raising one kernel entry weakly raises the density
  auto bumped = kern;
  bumped.values(0, 1) += 0.25;
  bumped.values(1, 0) += 0.25;
  CHECK(t_dp(g, bumped) >= base - 1e-14);
}

TEST_CASE("t_weighted") {
  const auto g = random_kernel(KernelKind::DoublyNonneg, 3, 3, 8);
  const Graph c3 = complete_graph(3);

  // all-ones factors reproduce (t, ||g||^e)
  std::vector<VectorXd> ones(3, VectorXd::Ones(3));
  const auto [lhs, rhs] = t_weighted(c3, g, ones);
  CHECK(lhs == doctest::Approx(t_dp(c3, g)).epsilon(1e-13));
  CHECK(rhs == doctest::Approx(std::pow(edge_density(g), 3)).epsilon(1e-13));

  // single edge: lhs = f1^T D A D f2, rhs with the geometric mean
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    VectorXd f1(3), f2(3);
    for (int c = 0; c < 3; ++c) {
      f1(c) = rng.uniform();
      f2(c) = rng.uniform();
    }
    const auto [l2, r2] = t_weighted(make_graph(2, {{0, 1}}), g, {f1, f2});
    const MatrixXd DAD = g.weights.asDiagonal() * g.values * g.weights.asDiagonal();
    CHECK(l2 == doctest::Approx(f1.dot(DAD * f2)).epsilon(1e-12));
    const VectorXd fm = (f1.array() * f2.array()).sqrt().matrix();
    CHECK(r2 == doctest::Approx(fm.dot(DAD * fm)).epsilon(1e-12));
    CHECK(l2 >= r2 - 1e-10);
  }

  CHECK_THROWS_AS(t_weighted(make_graph(2, {}), g, std::vector<VectorXd>(2, VectorXd::Ones(3))),
                  std::invalid_argument);
}

TEST_CASE("bipartite densities") {
  const auto h = random_rect_kernel(3, 4, 6);
  // single edge is the plain integral
  CHECK(t_bipartite(bipartite_complete(1, 1), h) ==
        doctest::Approx(edge_density(h)).epsilon(1e-13));

  // C4 equals the 4th Schatten power of the weighted operator
  const MatrixXd M = h.rowWeights.array().sqrt().matrix().asDiagonal() * h.values *
                     h.colWeights.array().sqrt().matrix().asDiagonal();
  const auto sv = M.jacobiSvd().singularValues();
  double s4 = 0;
  for (int i = 0; i < sv.size(); ++i) s4 += std::pow(sv(i), 4.0);
  CHECK(t_bipartite(bipartite_cycle(2), h) == doctest::Approx(s4).epsilon(1e-12));

  // brute-force oracle on assorted bipartite graphs
  for (const auto& H : {bipartite_cycle(3), subdivision(complete_graph(3)),
                        bipartite_complete(2, 3)}) {
    const double a = bipartite_bruteforce(H, h);
    const double b = t_bipartite(H, h);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }

  // subdivision identity: t(G, gram(h)) = t(Sub(G), h)
  const auto hs = random_rect_kernel(4, 4, 13);
  for (const auto& G : {complete_graph(2), complete_graph(3), cycle_graph(4)}) {
    const double lhs = t_dp(G, gram(hs));
    const double rhs = t_bipartite(subdivision(G), hs);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }

  // tensor power multiplies densities
  const auto hp = random_rect_kernel(2, 2, 19);
  for (const auto& H : {bipartite_complete(1, 1), bipartite_complete(1, 2), bipartite_cycle(2)}) {
    const double t1 = t_bipartite(H, hp);
    const double t2 = t_bipartite(H, tensor_power(hp, 2));
    CHECK(t2 == doctest::Approx(t1 * t1).epsilon(1e-10));
  }
}

TEST_CASE("per-edge kernels") {
  const auto H = bipartite_cycle(2);
  const auto h = random_rect_kernel(3, 3, 23, true);
  std::vector<RectKernel> same(H.edges.size(), h);
  CHECK(t_bipartite_edges(H, same) == doctest::Approx(t_bipartite(H, h)).epsilon(1e-12));

  auto other = random_rect_kernel(3, 3, 29, true);
  std::vector<RectKernel> mixed = {h, h, other, other};
  // oracle: direct sum with per-edge values
  double oracle = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          // edges of bipartite_cycle(2) in sorted order: (0,0),(0,1),(1,0),(1,1)
          double term = h.rowWeights(a) * h.rowWeights(b) * h.colWeights(c) * h.colWeights(d);
          term *= mixed[0].values(a, c) * mixed[1].values(a, d) * mixed[2].values(b, c) *
                  mixed[3].values(b, d);
          oracle += term;
        }
  CHECK(t_bipartite_edges(H, mixed) == doctest::Approx(oracle).epsilon(1e-12));

  const std::vector<RectKernel> badGeometry = {h, h, h, random_rect_kernel(2, 2, 1)};
  CHECK_THROWS_AS(t_bipartite_edges(H, badGeometry), std::invalid_argument);
}

TEST_CASE("hypergraph densities") {
  // r = 1: product of vertex integrals over edges
  {
    VectorXd w(3);
    w << 0.2, 0.3, 0.5;
    std::vector<double> vals = {0.7, 0.1, 0.4};
    const auto t1 = make_tensor<double>(1, 3, vals, w);
    const auto G = make_hypergraph(1, 2, {{0}, {1}});
    const double point = 0.2 * 0.7 + 0.3 * 0.1 + 0.5 * 0.4;
    CHECK(t_hypergraph(G, t1) == doctest::Approx(point * point).epsilon(1e-13));
  }

  // r = 2 tensor of a step kernel matches t_dp
  const auto g = random_kernel(KernelKind::DoublyNonneg, 3, 3, 37);
  const Graph c4 = cycle_graph(4);
  std::vector<std::vector<int>> edges2;
  for (auto [u, v] : c4.edges) edges2.push_back({u, v});
  CHECK(t_hypergraph(make_hypergraph(2, 4, edges2), tensor_from_step(g)) ==
        doctest::Approx(t_dp(c4, g)).epsilon(1e-12));

  // incidence identity: tensor built from h, density equals the bipartite one
  const auto h = random_rect_kernel(3, 3, 41);
  const auto G3 = make_hypergraph(3, 4, {{0, 1, 2}, {1, 2, 3}});
  const auto tens = product_tensor(h, 3);
  const double lhs = t_hypergraph(G3, tens);
  const double rhs = t_bipartite(incidence(G3), h);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  CHECK(lhs == doctest::Approx(hypergraph_bruteforce(G3, tens)).epsilon(1e-12));

  CHECK_THROWS_AS(t_hypergraph(G3, tensor_from_step(g)), std::invalid_argument);
}

TEST_CASE("hom_count") {
  CHECK(hom_count(complete_graph(2), complete_graph(3)) == 6);
  CHECK(hom_count(complete_graph(3), complete_graph(3)) == 6);
  CHECK(hom_count(cycle_graph(4), complete_graph(2)) == 2);
  CHECK(hom_count(make_graph(3, {}), complete_graph(2)) == 8);

  // consistency with the density identity hom(G,H) = t(G, g_H) v(H)^v(G)
  for (int nG = 2; nG <= 4; ++nG)
    for (const auto& G : enumerate_connected(nG))
      for (int nH = 1; nH <= 4; ++nH)
        for (const auto& H : enumerate_connected(nH)) {
          const double viaDensity =
              t_dp(G, adjacency_kernel(H)) * std::pow(double(H.n), double(G.n));
          const double exact = double(hom_count(G, H));
          CHECK(std::abs(viaDensity - exact) < 1e-6);
        }
}
