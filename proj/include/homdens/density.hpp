#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "homdens/common.hpp"
#include "homdens/graph.hpp"
#include "homdens/kernel.hpp"

namespace homdens {

namespace detail {

template <typename Scalar>
using Acc = std::conditional_t<std::is_same_v<Scalar, double>, long double, Scalar>;

/// Weighted sum-product over discrete variables by greedy min-fill variable
/// elimination. Each variable carries a unary measure; factors are dense
/// row-major tables over sorted variable lists.
template <typename Scalar>
class EliminationProblem {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int add_variable(int domain, Vector unary) {
    domain_.push_back(domain);
    unary_.push_back(std::move(unary));
    return int(domain_.size()) - 1;
  }

  void add_factor(std::vector<int> vars, std::vector<Scalar> table) {
    factors_.push_back({std::move(vars), std::move(table), false});
  }

  Scalar evaluate(const EvalBudget& budget) {
    const int n = int(domain_.size());
    const auto order = elimination_order();
    double spent = 0;
    Acc<Scalar> constant = 1;

    for (int v : order) {
      std::vector<int> touching;
      std::set<int> varSet = {v};
      for (int f = 0; f < int(factors_.size()); ++f) {
        if (factors_[f].dead) continue;
        if (std::find(factors_[f].vars.begin(), factors_[f].vars.end(), v) !=
            factors_[f].vars.end()) {
          touching.push_back(f);
          varSet.insert(factors_[f].vars.begin(), factors_[f].vars.end());
        }
      }
      std::vector<int> uvars(varSet.begin(), varSet.end());
      std::vector<int> outVars;
      for (int u : uvars)
        if (u != v) outVars.push_back(u);

      double tableSize = 1;
      for (int u : uvars) tableSize *= double(domain_[u]);
      spent += tableSize * double(touching.size() + 1);
      if (spent > budget.maxOps)
        throw BudgetExceeded("density evaluation exceeds the operation budget");

      std::size_t outSize = 1;
      for (int u : outVars) outSize *= std::size_t(domain_[u]);
      std::vector<Acc<Scalar>> out(outSize, Acc<Scalar>(0));

      // strides of each input factor and of the output w.r.t. uvars order
      std::vector<std::vector<std::size_t>> fstride(touching.size());
      for (std::size_t t = 0; t < touching.size(); ++t) {
        const auto& fv = factors_[touching[t]].vars;
        std::vector<std::size_t> stride(uvars.size(), 0);
        std::size_t s = 1;
        for (int i = int(fv.size()) - 1; i >= 0; --i) {
          const auto pos = std::lower_bound(uvars.begin(), uvars.end(), fv[i]) - uvars.begin();
          stride[std::size_t(pos)] = s;
          s *= std::size_t(domain_[fv[i]]);
        }
        fstride[t] = std::move(stride);
      }
      std::vector<std::size_t> ostride(uvars.size(), 0);
      {
        std::size_t s = 1;
        for (int i = int(outVars.size()) - 1; i >= 0; --i) {
          const auto pos =
              std::lower_bound(uvars.begin(), uvars.end(), outVars[i]) - uvars.begin();
          ostride[std::size_t(pos)] = s;
          s *= std::size_t(domain_[outVars[i]]);
        }
      }
      const std::size_t vpos =
          std::size_t(std::lower_bound(uvars.begin(), uvars.end(), v) - uvars.begin());

      std::vector<int> assign(uvars.size(), 0);
      bool done = uvars.empty();
      while (!done) {
        Acc<Scalar> prod = Acc<Scalar>(unary_[v](assign[vpos]));
        for (std::size_t t = 0; t < touching.size(); ++t) {
          std::size_t idx = 0;
          for (std::size_t i = 0; i < uvars.size(); ++i)
            idx += fstride[t][i] * std::size_t(assign[i]);
          prod *= Acc<Scalar>(factors_[touching[t]].table[idx]);
        }
        std::size_t oidx = 0;
        for (std::size_t i = 0; i < uvars.size(); ++i)
          oidx += ostride[i] * std::size_t(assign[i]);
        out[oidx] += prod;

        done = true;
        for (int i = int(uvars.size()) - 1; i >= 0; --i) {
          if (++assign[std::size_t(i)] < domain_[uvars[std::size_t(i)]]) {
            done = false;
            break;
          }
          assign[std::size_t(i)] = 0;
        }
      }

      for (int f : touching) factors_[f].dead = true;
      if (outVars.empty()) {
        constant *= out[0];
      } else {
        std::vector<Scalar> table(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) table[i] = Scalar(out[i]);
        factors_.push_back({std::move(outVars), std::move(table), false});
      }
      (void)n;
    }
    return Scalar(constant);
  }

 private:
  struct Factor {
    std::vector<int> vars;
    std::vector<Scalar> table;
    bool dead = false;
  };

  // greedy min-fill with smallest-index tie break
  std::vector<int> elimination_order() const {
    const int n = int(domain_.size());
    std::vector<std::set<int>> adj(n);
    for (const auto& f : factors_)
      for (std::size_t i = 0; i < f.vars.size(); ++i)
        for (std::size_t j = i + 1; j < f.vars.size(); ++j) {
          adj[std::size_t(f.vars[i])].insert(f.vars[j]);
          adj[std::size_t(f.vars[j])].insert(f.vars[i]);
        }
    std::vector<char> gone(n, 0);
    std::vector<int> order;
    order.reserve(std::size_t(n));
    for (int step = 0; step < n; ++step) {
      int bestV = -1;
      long bestFill = -1;
      for (int v = 0; v < n; ++v) {
        if (gone[v]) continue;
        long fill = 0;
        std::vector<int> nb(adj[std::size_t(v)].begin(), adj[std::size_t(v)].end());
        for (std::size_t i = 0; i < nb.size(); ++i)
          for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (!adj[std::size_t(nb[i])].count(nb[j])) ++fill;
        if (bestV < 0 || fill < bestFill) {
          bestV = v;
          bestFill = fill;
        }
      }
      order.push_back(bestV);
      gone[std::size_t(bestV)] = 1;
      std::vector<int> nb(adj[std::size_t(bestV)].begin(), adj[std::size_t(bestV)].end());
      for (int u : nb) adj[std::size_t(u)].erase(bestV);
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
          adj[std::size_t(nb[i])].insert(nb[j]);
          adj[std::size_t(nb[j])].insert(nb[i]);
        }
    }
    return order;
  }

  std::vector<int> domain_;
  std::vector<Vector> unary_;
  std::vector<Factor> factors_;
};

template <typename Scalar>
std::vector<Scalar> edge_table(const typename StepKernelT<Scalar>::Matrix& A) {
  const int k = int(A.rows());
  std::vector<Scalar> table(std::size_t(k) * std::size_t(A.cols()));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < A.cols(); ++b)
      table[std::size_t(a) * std::size_t(A.cols()) + std::size_t(b)] = A(a, b);
  return table;
}

}  // namespace detail

/// Homomorphism density by exhaustive summation over all cell assignments,
/// with compensated accumulation. The independent reference evaluator.
template <typename Scalar>
Scalar t_bruteforce(const Graph& G, const StepKernelT<Scalar>& g,
                    const EvalBudget& budget = {}) {
  if (G.edges.empty()) return Scalar(1);
  const int k = g.cells();
  const int n = G.n;
  if (std::pow(double(k), double(n)) > budget.maxOps)
    throw BudgetExceeded("t_bruteforce: k^v(G) exceeds the operation budget");

  std::vector<int> phi(std::size_t(n), 0);
  KahanSum sum;
  for (;;) {
    double term = 1;
    for (int v = 0; v < n; ++v) term *= double(g.weights(phi[std::size_t(v)]));
    for (auto [u, v] : G.edges)
      term *= double(g.values(phi[std::size_t(u)], phi[std::size_t(v)]));
    sum.add(term);
    int pos = n - 1;
    while (pos >= 0 && ++phi[std::size_t(pos)] == k) {
      phi[std::size_t(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return Scalar(sum.value());
}

/// Homomorphism density with optional per-vertex nonnegative cell factors,
/// evaluated by variable elimination. Agrees with t_bruteforce wherever both
/// run.
template <typename Scalar>
Scalar t_eliminate(const Graph& G, const StepKernelT<Scalar>& g,
                   const std::vector<typename StepKernelT<Scalar>::Vector>& vertexFactors,
                   const EvalBudget& budget = {}) {
  const int k = g.cells();
  detail::EliminationProblem<Scalar> prob;
  for (int v = 0; v < G.n; ++v) {
    typename StepKernelT<Scalar>::Vector unary = g.weights;
    if (!vertexFactors.empty())
      unary = unary.cwiseProduct(vertexFactors[std::size_t(v)]);
    prob.add_variable(k, std::move(unary));
  }
  const auto table = detail::edge_table<Scalar>(g.values);
  for (auto [u, v] : G.edges) prob.add_factor({u, v}, table);
  return prob.evaluate(budget);
}

template <typename Scalar>
Scalar t_dp(const Graph& G, const StepKernelT<Scalar>& g, const EvalBudget& budget = {}) {
  return t_eliminate(G, g, {}, budget);
}

/// Both sides of the vertex-weighted density inequality: the weighted
/// density on the left, and (f^T D_w A D_w f)^{e(G)} on the right with f the
/// cellwise geometric-mean composite (prod_i f_i)^{1/(2 e(G))}.
template <typename Scalar>
std::pair<Scalar, Scalar> t_weighted(
    const Graph& G, const StepKernelT<Scalar>& g,
    const std::vector<typename StepKernelT<Scalar>::Vector>& fs,
    const EvalBudget& budget = {}) {
  const int e = edge_count(G);
  if (e < 1) throw std::invalid_argument("t_weighted: graph has no edges");
  const int k = g.cells();
  if (int(fs.size()) != G.n)
    throw std::invalid_argument("t_weighted: need one factor per vertex");
  for (const auto& f : fs) {
    if (int(f.size()) != k)
      throw std::invalid_argument("t_weighted: factor length does not match cell count");
    if (f.minCoeff() < Scalar(0))
      throw std::invalid_argument("t_weighted: factors must be nonnegative");
  }
  const Scalar lhs = t_eliminate(G, g, fs, budget);

  typename StepKernelT<Scalar>::Vector f =
      StepKernelT<Scalar>::Vector::Ones(k);
  for (const auto& fi : fs) f = f.cwiseProduct(fi);
  for (int c = 0; c < k; ++c) f(c) = std::pow(f(c), Scalar(1) / Scalar(2 * e));
  const auto wf = f.cwiseProduct(g.weights);
  const Scalar base = wf.dot(g.values * wf);
  return {lhs, Scalar(std::pow(base, Scalar(e)))};
}

/// Bipartite homomorphism density, left and right parts ranging over the row
/// and column cells of h respectively.
template <typename Scalar>
Scalar t_bipartite(const BipartiteGraph& H, const RectKernelT<Scalar>& h,
                   const EvalBudget& budget = {}) {
  detail::EliminationProblem<Scalar> prob;
  for (int l = 0; l < H.nLeft; ++l) prob.add_variable(h.rows(), h.rowWeights);
  for (int r = 0; r < H.nRight; ++r) prob.add_variable(h.cols(), h.colWeights);
  const auto table = detail::edge_table<Scalar>(h.values);
  for (auto [l, r] : H.edges) prob.add_factor({l, H.nLeft + r}, table);
  return prob.evaluate(budget);
}

/// Mixed bipartite density with one kernel per edge (all kernels must share
/// the cell geometry of the first one).
template <typename Scalar>
Scalar t_bipartite_edges(const BipartiteGraph& H,
                         const std::vector<RectKernelT<Scalar>>& edgeKernels,
                         const EvalBudget& budget = {}) {
  if (edgeKernels.size() != H.edges.size())
    throw std::invalid_argument("t_bipartite_edges: need one kernel per edge");
  const auto& h0 = edgeKernels.front();
  for (const auto& h : edgeKernels) {
    if (h.rows() != h0.rows() || h.cols() != h0.cols() ||
        h.rowWeights != h0.rowWeights || h.colWeights != h0.colWeights)
      throw std::invalid_argument("t_bipartite_edges: kernels must share cell geometry");
  }
  detail::EliminationProblem<Scalar> prob;
  for (int l = 0; l < H.nLeft; ++l) prob.add_variable(h0.rows(), h0.rowWeights);
  for (int r = 0; r < H.nRight; ++r) prob.add_variable(h0.cols(), h0.colWeights);
  for (std::size_t j = 0; j < H.edges.size(); ++j)
    prob.add_factor({H.edges[j].first, H.nLeft + H.edges[j].second},
                    detail::edge_table<Scalar>(edgeKernels[j].values));
  return prob.evaluate(budget);
}

/// Homomorphism density of an r-uniform hypergraph against an arity-r
/// tensor kernel.
template <typename Scalar>
Scalar t_hypergraph(const Hypergraph& G, const TensorKernelT<Scalar>& g,
                    const EvalBudget& budget = {}) {
  if (G.r != g.arity)
    throw std::invalid_argument("t_hypergraph: hypergraph and kernel arity differ");
  const int k = g.cells;
  detail::EliminationProblem<Scalar> prob;
  for (int v = 0; v < G.n; ++v) prob.add_variable(k, g.weights);
  for (const auto& edge : G.edges) {
    // edge vertices are sorted; the tensor is symmetric so the slot order
    // does not matter
    std::size_t size = 1;
    for (std::size_t i = 0; i < edge.size(); ++i) size *= std::size_t(k);
    std::vector<Scalar> table(size);
    std::vector<int> idx(edge.size(), 0);
    for (std::size_t flat = 0; flat < size; ++flat) {
      table[flat] = g.at(idx);
      for (int pos = int(edge.size()) - 1; pos >= 0; --pos) {
        if (++idx[std::size_t(pos)] < k) break;
        idx[std::size_t(pos)] = 0;
      }
    }
    prob.add_factor(edge, std::move(table));
  }
  return prob.evaluate(budget);
}

/// Exact number of homomorphisms from G to H by integer search.
inline long long hom_count(const Graph& G, const Graph& H, const EvalBudget& budget = {}) {
  if (H.n < 1) throw std::invalid_argument("hom_count: target graph is empty");
  if (std::pow(double(H.n), double(G.n)) > budget.maxOps)
    throw BudgetExceeded("hom_count: v(H)^v(G) exceeds the operation budget");
  std::vector<std::uint32_t> adj(std::size_t(H.n), 0);
  for (auto [u, v] : H.edges) {
    adj[std::size_t(u)] |= 1u << v;
    adj[std::size_t(v)] |= 1u << u;
  }
  std::vector<std::vector<int>> earlier(std::size_t(G.n));
  for (auto [u, v] : G.edges) earlier[std::size_t(std::max(u, v))].push_back(std::min(u, v));

  std::vector<int> phi(std::size_t(G.n), 0);
  long long count = 0;
  auto dfs = [&](auto&& self, int v) -> void {
    if (v == G.n) {
      ++count;
      return;
    }
    for (int target = 0; target < H.n; ++target) {
      bool ok = true;
      for (int u : earlier[std::size_t(v)])
        if (!((adj[std::size_t(phi[std::size_t(u)])] >> target) & 1u)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      phi[std::size_t(v)] = target;
      self(self, v + 1);
    }
  };
  dfs(dfs, 0);
  return count;
}

}  // namespace homdens
