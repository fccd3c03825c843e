#include "homdens/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace homdens {

namespace {

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(g.n, 0);
  for (auto [u, v] : g.edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

void check_vertex(int v, int n, const char* what) {
  if (v < 0 || v >= n) {
    std::ostringstream os;
    os << what << ": vertex index " << v << " out of range (n=" << n << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edgeList) {
  if (n < 0) throw std::invalid_argument("make_graph: negative vertex count");
  Graph g;
  g.n = n;
  g.edges.reserve(edgeList.size());
  for (auto [u, v] : edgeList) {
    check_vertex(u, n, "make_graph");
    check_vertex(v, n, "make_graph");
    if (u == v) {
      std::ostringstream os;
      os << "make_graph: self loop at vertex " << u;
      throw std::invalid_argument(os.str());
    }
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

int edge_count(const Graph& g) { return int(g.edges.size()); }

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d(g.n, 0);
  for (auto [u, v] : g.edges) {
    ++d[u];
    ++d[v];
  }
  return d;
}

bool has_edge(const Graph& g, int u, int v) {
  if (u > v) std::swap(u, v);
  return std::binary_search(g.edges.begin(), g.edges.end(), std::make_pair(u, v));
}

std::vector<std::vector<int>> neighbor_lists(const Graph& g) {
  std::vector<std::vector<int>> nbr(g.n);
  for (auto [u, v] : g.edges) {
    nbr[u].push_back(v);
    nbr[v].push_back(u);
  }
  for (auto& list : nbr) std::sort(list.begin(), list.end());
  return nbr;
}

Graph complement(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (!has_edge(g, u, v)) edges.emplace_back(u, v);
  return make_graph(g.n, edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<std::pair<int, int>> edges = a.edges;
  for (auto [u, v] : b.edges) edges.emplace_back(a.n + u, a.n + v);
  return make_graph(a.n + b.n, edges);
}

Graph induced_subgraph(const Graph& g, std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<int> newLabel(g.n, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    check_vertex(vertices[i], g.n, "induced_subgraph");
    newLabel[vertices[i]] = int(i);
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges)
    if (newLabel[u] >= 0 && newLabel[v] >= 0)
      edges.emplace_back(newLabel[u], newLabel[v]);
  return make_graph(int(vertices.size()), edges);
}

Graph remove_vertices(const Graph& g, const std::vector<int>& vertices) {
  std::vector<char> drop(g.n, 0);
  for (int v : vertices) {
    check_vertex(v, g.n, "remove_vertices");
    drop[v] = 1;
  }
  std::vector<int> keep;
  for (int v = 0; v < g.n; ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  auto nbr = neighbor_lists(g);
  std::vector<int> comp(g.n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = int(out.size());
    out.emplace_back();
    std::queue<int> q;
    q.push(s);
    comp[s] = id;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      out[id].push_back(v);
      for (int u : nbr[v])
        if (comp[u] < 0) {
          comp[u] = id;
          q.push(u);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

std::optional<std::vector<int>> bipartition(const Graph& g) {
  auto nbr = neighbor_lists(g);
  std::vector<int> color(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : nbr[v]) {
        if (color[u] < 0) {
          color[u] = 1 - color[v];
          q.push(u);
        } else if (color[u] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

bool is_bipartite(const Graph& g) { return bipartition(g).has_value(); }

bool is_tree(const Graph& g) {
  return g.n >= 1 && edge_count(g) == g.n - 1 && is_connected(g);
}

bool is_complete(const Graph& g) {
  return edge_count(g) == g.n * (g.n - 1) / 2;
}

bool is_complete_bipartite(const Graph& g) {
  auto colors = bipartition(g);
  if (!colors) return false;
  long a = std::count(colors->begin(), colors->end(), 0);
  long b = g.n - a;
  return long(g.edges.size()) == a * b;
}

bool is_cycle(const Graph& g) {
  if (g.n < 3 || !is_connected(g)) return false;
  for (int d : degrees(g))
    if (d != 2) return false;
  return true;
}

// --- named families ------------------------------------------------------

Graph complete_graph(int n) {
  if (n < 1) throw std::invalid_argument("complete_graph: n must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return make_graph(n, edges);
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: n must be >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return make_graph(n, edges);
}

Graph path_graph(int edges) {
  if (edges < 0) throw std::invalid_argument("path_graph: negative length");
  std::vector<std::pair<int, int>> list;
  for (int v = 0; v < edges; ++v) list.emplace_back(v, v + 1);
  return make_graph(edges + 1, list);
}

Graph complete_bipartite_graph(int a, int b) {
  if (a < 1 || b < 1)
    throw std::invalid_argument("complete_bipartite_graph: parts must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  return make_graph(a + b, edges);
}

Graph complete_minus_complete(int n, int m) {
  if (m < 1 || m >= n)
    throw std::invalid_argument("complete_minus_complete: need n > m >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!(u < m && v < m)) edges.emplace_back(u, v);
  return make_graph(n, edges);
}

Graph cocktail_party_graph(int r) {
  if (r < 1) throw std::invalid_argument("cocktail_party_graph: r must be >= 1");
  const int n = 2 * r;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!(u / 2 == v / 2)) edges.emplace_back(u, v);
  return make_graph(n, edges);
}

Graph theta_graph(const std::vector<int>& lengths) {
  if (lengths.size() < 2)
    throw std::invalid_argument("theta_graph: need at least 2 paths");
  int ones = 0;
  for (int k : lengths) {
    if (k < 1) throw std::invalid_argument("theta_graph: path lengths must be >= 1");
    if (k == 1) ++ones;
  }
  if (ones > 1)
    throw std::invalid_argument("theta_graph: at most one path of length 1");
  std::vector<std::pair<int, int>> edges;
  int next = 2;  // hubs are 0 and 1
  for (int k : lengths) {
    int prev = 0;
    for (int step = 1; step < k; ++step) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, 1);
  }
  return make_graph(next, edges);
}

Graph cycles_joined(int k1, int k2, int m) {
  if (k1 < 3 || k2 < 3)
    throw std::invalid_argument("cycles_joined: cycle lengths must be >= 3");
  if (m < 0) throw std::invalid_argument("cycles_joined: path length must be >= 0");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < k1; ++v) edges.emplace_back(v, (v + 1) % k1);
  if (m == 0) {
    // second cycle through vertex 0, on fresh vertices k1..k1+k2-2
    int prev = 0;
    for (int i = 0; i < k2 - 1; ++i) {
      edges.emplace_back(prev, k1 + i);
      prev = k1 + i;
    }
    edges.emplace_back(prev, 0);
    return make_graph(k1 + k2 - 1, edges);
  }
  for (int i = 0; i < k2; ++i)
    edges.emplace_back(k1 + i, k1 + (i + 1) % k2);
  // path of length m from vertex 0 to vertex k1
  int prev = 0;
  for (int i = 0; i < m - 1; ++i) {
    edges.emplace_back(prev, k1 + k2 + i);
    prev = k1 + k2 + i;
  }
  edges.emplace_back(prev, k1);
  return make_graph(k1 + k2 + m - 1, edges);
}

Graph multitree_graph(const MultitreeSpec& spec) {
  if (!is_tree(spec.tree))
    throw std::invalid_argument("multitree_graph: base graph is not a tree");
  if (spec.copies < 1)
    throw std::invalid_argument("multitree_graph: copies must be >= 1");
  if (spec.black.empty())
    throw std::invalid_argument("multitree_graph: need at least one black vertex");
  const int t = spec.tree.n;
  std::vector<char> isBlack(t, 0);
  for (int v : spec.black) {
    check_vertex(v, t, "multitree_graph");
    isBlack[v] = 1;
  }
  std::vector<int> whiteIndex(t, -1);
  int whites = 0;
  for (int v = 0; v < t; ++v)
    if (!isBlack[v]) whiteIndex[v] = whites++;
  std::vector<std::pair<int, int>> edges;
  for (int copy = 0; copy < spec.copies; ++copy) {
    auto map = [&](int v) {
      if (copy == 0 || isBlack[v]) return v;
      return t + (copy - 1) * whites + whiteIndex[v];
    };
    for (auto [u, v] : spec.tree.edges) edges.emplace_back(map(u), map(v));
  }
  return make_graph(t + (spec.copies - 1) * whites, edges);
}

// --- bipartite structures --------------------------------------------------

BipartiteGraph make_bipartite(int nLeft, int nRight,
                              const std::vector<std::pair<int, int>>& edges) {
  if (nLeft < 0 || nRight < 0)
    throw std::invalid_argument("make_bipartite: negative part size");
  BipartiteGraph h;
  h.nLeft = nLeft;
  h.nRight = nRight;
  for (auto [l, r] : edges) {
    check_vertex(l, nLeft, "make_bipartite (left)");
    check_vertex(r, nRight, "make_bipartite (right)");
    h.edges.emplace_back(l, r);
  }
  std::sort(h.edges.begin(), h.edges.end());
  h.edges.erase(std::unique(h.edges.begin(), h.edges.end()), h.edges.end());
  return h;
}

BipartiteGraph subdivision(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t j = 0; j < g.edges.size(); ++j) {
    edges.emplace_back(g.edges[j].first, int(j));
    edges.emplace_back(g.edges[j].second, int(j));
  }
  return make_bipartite(g.n, int(g.edges.size()), edges);
}

BipartiteGraph bipartite_complete(int a, int b) {
  if (a < 1 || b < 1)
    throw std::invalid_argument("bipartite_complete: parts must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int l = 0; l < a; ++l)
    for (int r = 0; r < b; ++r) edges.emplace_back(l, r);
  return make_bipartite(a, b, edges);
}

BipartiteGraph bipartite_cycle(int n) {
  if (n < 2) throw std::invalid_argument("bipartite_cycle: need n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(i, i);
    edges.emplace_back((i + 1) % n, i);
  }
  return make_bipartite(n, n, edges);
}

Graph bipartite_as_graph(const BipartiteGraph& h) {
  std::vector<std::pair<int, int>> edges;
  for (auto [l, r] : h.edges) edges.emplace_back(l, h.nLeft + r);
  return make_graph(h.nLeft + h.nRight, edges);
}

Hypergraph make_hypergraph(int r, int n,
                           const std::vector<std::vector<int>>& edges) {
  if (r < 1) throw std::invalid_argument("make_hypergraph: uniformity must be >= 1");
  if (n < 0) throw std::invalid_argument("make_hypergraph: negative vertex count");
  Hypergraph g;
  g.r = r;
  g.n = n;
  for (auto edge : edges) {
    if (int(edge.size()) != r) {
      std::ostringstream os;
      os << "make_hypergraph: edge has " << edge.size() << " vertices, expected " << r;
      throw std::invalid_argument(os.str());
    }
    std::sort(edge.begin(), edge.end());
    for (std::size_t i = 0; i < edge.size(); ++i) {
      check_vertex(edge[i], n, "make_hypergraph");
      if (i > 0 && edge[i] == edge[i - 1])
        throw std::invalid_argument("make_hypergraph: repeated vertex within an edge");
    }
    g.edges.push_back(std::move(edge));
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

BipartiteGraph incidence(const Hypergraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t j = 0; j < g.edges.size(); ++j)
    for (int v : g.edges[j]) edges.emplace_back(v, int(j));
  return make_bipartite(g.n, int(g.edges.size()), edges);
}

// --- refinement, canonical labels, automorphisms ---------------------------

namespace {

// Iterated color refinement by neighbor color multisets. The class ids are
// functions of graph invariants only, hence stable under isomorphism.
std::vector<int> refined_colors(const Graph& g, const std::vector<int>& seed) {
  const int n = g.n;
  auto nbr = neighbor_lists(g);
  std::vector<int> color = seed;
  std::size_t classes = 0;
  for (int round = 0; round <= n; ++round) {
    std::vector<std::vector<int>> keys(n);
    for (int v = 0; v < n; ++v) {
      auto& k = keys[v];
      k.push_back(color[v]);
      std::vector<int> nc;
      nc.reserve(nbr[v].size());
      for (int u : nbr[v]) nc.push_back(color[u]);
      std::sort(nc.begin(), nc.end());
      k.insert(k.end(), nc.begin(), nc.end());
    }
    std::vector<std::vector<int>> uniq = keys;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (int v = 0; v < n; ++v)
      color[v] = int(std::lower_bound(uniq.begin(), uniq.end(), keys[v]) - uniq.begin());
    if (uniq.size() == classes) break;
    classes = uniq.size();
  }
  return color;
}

std::vector<int> refined_colors(const Graph& g) {
  return refined_colors(g, degrees(g));
}

// u and v are twins when swapping them is an automorphism: their adjacency
// rows agree outside {u, v}.
bool are_twins(const std::vector<std::uint32_t>& adj, int u, int v) {
  const std::uint32_t mask = ~((1u << u) | (1u << v));
  return (adj[u] & mask) == (adj[v] & mask);
}

// Minimizes the upper-triangle adjacency bit string over all color-class
// respecting vertex orders (optionally with a pinned identity prefix).
// Prefix-pruned DFS; twin candidates are explored only once per node.
struct CanonSearch {
  int n = 0;
  int pinned = 0;
  std::vector<std::uint32_t> adj;
  std::vector<int> classOfPos;
  std::vector<std::vector<int>> members;

  std::vector<int> vertexAt;
  std::vector<char> used;
  std::vector<std::uint8_t> cur, best;
  bool haveBest = false;
  std::uint64_t version = 0;

  std::string run() {
    vertexAt.assign(n, -1);
    used.assign(n, 0);
    cur.clear();
    cur.reserve(std::size_t(n) * (n - 1) / 2);
    dfs(0, -1, version);
    std::string label;
    label.push_back(char(n));
    std::uint8_t acc = 0;
    int bits = 0;
    for (std::size_t i = 0; i < best.size(); ++i) {
      acc = std::uint8_t(acc << 1) | best[i];
      if (++bits == 8) {
        label.push_back(char(acc));
        acc = 0;
        bits = 0;
      }
    }
    if (bits > 0) label.push_back(char(acc << (8 - bits)));
    return label;
  }

  void dfs(int p, int lessAt, std::uint64_t cmpVersion) {
    if (p == n) {
      if (!haveBest || lessAt >= 0) {
        best = cur;
        haveBest = true;
        ++version;
      }
      return;
    }
    std::vector<int> tried;
    const bool forced = p < pinned;
    for (int cand : forced ? std::vector<int>{p} : members[classOfPos[p]]) {
      if (used[cand]) continue;
      // a best update always happens inside our own subtree, so after one
      // our prefix coincides with the new best prefix
      if (haveBest && cmpVersion != version) {
        lessAt = -1;
        cmpVersion = version;
      }
      bool twinSkip = false;
      for (int t : tried)
        if (are_twins(adj, t, cand)) {
          twinSkip = true;
          break;
        }
      if (twinSkip) continue;
      tried.push_back(cand);

      const std::size_t base = cur.size();
      int newLess = lessAt;
      bool worse = false;
      for (int q = 0; q < p; ++q) {
        const std::uint8_t b = (adj[vertexAt[q]] >> cand) & 1u;
        cur.push_back(b);
        if (haveBest && newLess < 0) {
          const std::uint8_t bb = best[base + std::size_t(q)];
          if (b > bb) {
            worse = true;
            break;
          }
          if (b < bb) newLess = int(base) + q;
        }
      }
      if (!worse) {
        vertexAt[p] = cand;
        used[cand] = 1;
        dfs(p + 1, newLess, version);
        used[cand] = 0;
        vertexAt[p] = -1;
      }
      cur.resize(base);
    }
  }
};

std::string canonical_label(const Graph& g, int pinned) {
  if (g.n > kCanonicalBound)
    throw TooLarge("canonical_form: graph exceeds the vertex bound");
  if (g.n == 0) return std::string(1, '\0');

  std::vector<int> seed = degrees(g);
  for (int v = 0; v < pinned; ++v) seed[v] = -(v + 1);  // pin as singletons
  auto colors = refined_colors(g, seed);

  CanonSearch search;
  search.n = g.n;
  search.pinned = pinned;
  search.adj = adjacency_masks(g);
  const int numClasses = *std::max_element(colors.begin(), colors.end()) + 1;
  search.members.assign(numClasses, {});
  for (int v = pinned; v < g.n; ++v) search.members[colors[v]].push_back(v);
  // positions: pinned prefix, then classes in ascending color order
  search.classOfPos.assign(g.n, -1);
  int pos = pinned;
  for (int c = 0; c < numClasses; ++c)
    for (std::size_t i = 0; i < search.members[c].size(); ++i)
      search.classOfPos[pos++] = c;
  return search.run();
}

// Looks for an automorphism with pi(src) = dst by DFS over color-compatible,
// adjacency-consistent assignments.
bool automorphism_exists(const Graph& g, const std::vector<std::uint32_t>& adj,
                         const std::vector<int>& colors, int src, int dst) {
  if (colors[src] != colors[dst]) return false;
  if (src == dst || are_twins(adj, src, dst)) return true;
  const int n = g.n;
  std::vector<int> order(n);
  order[0] = src;
  int k = 1;
  for (int v = 0; v < n; ++v)
    if (v != src) order[k++] = v;
  std::vector<int> image(n, -1);
  std::vector<char> taken(n, 0);

  auto dfs = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    const int v = order[i];
    for (int w = 0; w < n; ++w) {
      if (taken[w] || colors[w] != colors[v]) continue;
      if (i == 0 && w != dst) continue;
      bool ok = true;
      for (int j = 0; j < i; ++j) {
        const int u = order[j];
        const bool e1 = (adj[u] >> v) & 1u;
        const bool e2 = (adj[image[u]] >> w) & 1u;
        if (e1 != e2) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      image[v] = w;
      taken[w] = 1;
      if (self(self, i + 1)) return true;
      taken[w] = 0;
      image[v] = -1;
    }
    return false;
  };
  return dfs(dfs, 0);
}

}  // namespace

std::string canonical_form(const Graph& g) { return canonical_label(g, 0); }

std::string canonical_form_pinned(const Graph& g, int pinned) {
  if (pinned < 0 || pinned > g.n)
    throw std::invalid_argument("canonical_form_pinned: bad pinned count");
  return canonical_label(g, pinned);
}

bool is_isomorphic(const Graph& a, const Graph& b) {
  if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

bool is_vertex_transitive(const Graph& g) {
  if (g.n > kCanonicalBound)
    throw TooLarge("is_vertex_transitive: graph exceeds the vertex bound");
  if (g.n <= 1) return true;
  const auto colors = refined_colors(g);
  const auto adj = adjacency_masks(g);
  for (int v = 1; v < g.n; ++v)
    if (!automorphism_exists(g, adj, colors, 0, v)) return false;
  return true;
}

StructureReport analyze(const Graph& g) {
  StructureReport rep;
  rep.components = connected_components(g);
  rep.connected = rep.components.size() <= 1;
  rep.bipartite = is_bipartite(g);
  const int e = edge_count(g);
  if (rep.connected && g.n >= 1) {
    if (e == g.n - 1)
      rep.cyclomaticClass = CyclomaticClass::Tree;
    else if (e == g.n)
      rep.cyclomaticClass = CyclomaticClass::Unicyclic;
    else if (e == g.n + 1)
      rep.cyclomaticClass = CyclomaticClass::Bicyclic;
  }
  const auto deg = degrees(g);
  for (int v = 0; v < g.n; ++v) {
    if (deg[v] == 1) rep.leaves.push_back(v);
    if (deg[v] == g.n - 1) rep.dominatingVertices.push_back(v);
  }
  rep.vertexTransitive = is_vertex_transitive(g);
  return rep;
}

std::vector<Graph> enumerate_connected(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_connected: n must be >= 1");
  if (n > 7) throw TooLarge("enumerate_connected: supported up to n = 7");
  std::vector<Graph> reps = {make_graph(1, {})};
  for (int m = 2; m <= n; ++m) {
    // every connected graph on m vertices arises from a connected graph on
    // m-1 vertices by adding one vertex with a nonempty neighborhood
    std::map<std::string, Graph> classes;
    for (const Graph& base : reps) {
      for (std::uint32_t mask = 1; mask < (1u << (m - 1)); ++mask) {
        auto edges = base.edges;
        for (int v = 0; v < m - 1; ++v)
          if (mask & (1u << v)) edges.emplace_back(v, m - 1);
        Graph g = make_graph(m, edges);
        classes.emplace(canonical_form(g), std::move(g));
      }
    }
    reps.clear();
    for (auto& [key, g] : classes) reps.push_back(std::move(g));
  }
  return reps;
}

std::vector<Graph> enumerate_graphs(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_graphs: n must be >= 1");
  if (n > 6) throw TooLarge("enumerate_graphs: supported up to n = 6");
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::map<std::string, Graph> classes;
  for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask & (1ull << i)) edges.push_back(slots[i]);
    Graph g = make_graph(n, edges);
    classes.emplace(canonical_form(g), std::move(g));
  }
  std::vector<Graph> out;
  for (auto& [key, g] : classes) out.push_back(std::move(g));
  return out;
}

}  // namespace homdens
