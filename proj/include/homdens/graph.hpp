#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homdens/common.hpp"

namespace homdens {

/// Simple undirected graph on vertices 0..n-1. Edges are stored normalized:
/// each pair (u, v) with u < v, sorted, without duplicates.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  bool operator==(const Graph&) const = default;
};

/// Bipartite graph with parts 0..nLeft-1 and 0..nRight-1; edges are
/// (left, right) pairs, sorted and deduplicated.
struct BipartiteGraph {
  int nLeft = 0;
  int nRight = 0;
  std::vector<std::pair<int, int>> edges;

  bool operator==(const BipartiteGraph&) const = default;
};

/// r-uniform hypergraph; each edge is a sorted r-element vertex subset.
struct Hypergraph {
  int r = 1;
  int n = 0;
  std::vector<std::vector<int>> edges;

  bool operator==(const Hypergraph&) const = default;
};

/// A tree with a black/white vertex coloring and a copy count. The derived
/// graph glues `copies` disjoint copies of the tree along the black vertices.
struct MultitreeSpec {
  Graph tree;
  std::vector<int> black;
  int copies = 1;
};

enum class CyclomaticClass { Tree, Unicyclic, Bicyclic, Other };

struct StructureReport {
  std::vector<std::vector<int>> components;  // sorted vertex lists
  bool connected = false;
  bool bipartite = false;
  CyclomaticClass cyclomaticClass = CyclomaticClass::Other;
  std::vector<int> leaves;
  std::vector<int> dominatingVertices;
  bool vertexTransitive = false;
};

/// Vertex count beyond which the isomorphism-complete operations
/// (canonical_form, analyze, certification) refuse to run.
inline constexpr int kCanonicalBound = 10;

/// Builds a normalized graph. Self-loops and out-of-range endpoints are
/// rejected; duplicate edges are merged silently.
Graph make_graph(int n, const std::vector<std::pair<int, int>>& edgeList);

int edge_count(const Graph& g);
std::vector<int> degrees(const Graph& g);
bool has_edge(const Graph& g, int u, int v);
std::vector<std::vector<int>> neighbor_lists(const Graph& g);

Graph complement(const Graph& g);
Graph disjoint_union(const Graph& a, const Graph& b);

/// Induced subgraph on the given vertices (need not be sorted); vertices are
/// relabeled 0..k-1 in ascending order of their original labels.
Graph induced_subgraph(const Graph& g, std::vector<int> vertices);
Graph remove_vertices(const Graph& g, const std::vector<int>& vertices);

std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);
/// Two-coloring of a bipartite graph (0/1 per vertex), or nullopt.
std::optional<std::vector<int>> bipartition(const Graph& g);
bool is_tree(const Graph& g);
bool is_complete(const Graph& g);
bool is_complete_bipartite(const Graph& g);
bool is_cycle(const Graph& g);

// --- named families ------------------------------------------------------

Graph complete_graph(int n);
Graph cycle_graph(int n);
/// Path with `edges` edges on edges+1 vertices 0-1-...-edges.
Graph path_graph(int edges);
/// K_{a,b} with the left part on vertices 0..a-1.
Graph complete_bipartite_graph(int a, int b);
/// Complete graph on n vertices with the edges among {0..m-1} removed.
Graph complete_minus_complete(int n, int m);
/// K_{2r} minus the perfect matching (0,1), (2,3), ...
Graph cocktail_party_graph(int r);
/// Two hub vertices 0 and 1 joined by internally disjoint paths of the given
/// lengths; internal path vertices are numbered 2, 3, ... path by path.
/// Requires >= 2 paths, every length >= 1, and at most one length equal to 1.
Graph theta_graph(const std::vector<int>& lengths);
/// Two cycles of lengths k1 >= 3 and k2 >= 3 joined by a path of length
/// m >= 0 (m = 0 means the cycles share a vertex). First cycle on 0..k1-1,
/// then the second cycle, then the connecting path vertices.
Graph cycles_joined(int k1, int k2, int m);
/// Copies of spec.tree glued along black vertices. Copy 1 keeps the tree's
/// labels; white vertices of later copies are appended in copy-major order.
Graph multitree_graph(const MultitreeSpec& spec);

// --- derived bipartite structures ----------------------------------------

BipartiteGraph make_bipartite(int nLeft, int nRight,
                              const std::vector<std::pair<int, int>>& edges);
/// 1-subdivision: left part V(G), right part E(G) in normalized edge order,
/// with (v, e) adjacent iff v is an endpoint of e.
BipartiteGraph subdivision(const Graph& g);
BipartiteGraph bipartite_complete(int a, int b);
/// Even cycle C_{2n} as a bipartite graph with parts of size n.
BipartiteGraph bipartite_cycle(int n);
/// Forgets the bipartition: left vertex i -> i, right vertex j -> nLeft + j.
Graph bipartite_as_graph(const BipartiteGraph& h);

Hypergraph make_hypergraph(int r, int n, const std::vector<std::vector<int>>& edges);
/// Incidence bipartite graph of an r-uniform hypergraph: parts V(G) and
/// E(G), a pair (v, e) adjacent iff v lies in e.
BipartiteGraph incidence(const Hypergraph& g);

// --- structure, isomorphism, enumeration ---------------------------------

/// Connectivity, bipartiteness, cyclomatic class (tree/unicyclic/bicyclic
/// for connected graphs, Other otherwise), leaves, dominating vertices, and
/// exact vertex-transitivity via automorphism search.
StructureReport analyze(const Graph& g);

/// Canonical label: equal byte strings iff the graphs are isomorphic.
/// Exhaustive color-respecting permutation search with refinement-based
/// pruning; requires n <= kCanonicalBound.
std::string canonical_form(const Graph& g);
/// Canonical label of a graph whose first `pinned` vertices are held fixed
/// pointwise; equal labels iff there is an isomorphism fixing those vertices.
std::string canonical_form_pinned(const Graph& g, int pinned);
bool is_isomorphic(const Graph& a, const Graph& b);
bool is_vertex_transitive(const Graph& g);

/// One representative per isomorphism class of connected graphs on exactly
/// n vertices, sorted by canonical label. Requires n <= 7.
std::vector<Graph> enumerate_connected(int n);
/// All isomorphism classes on exactly n vertices, including disconnected
/// graphs. Requires n <= 6.
std::vector<Graph> enumerate_graphs(int n);

}  // namespace homdens
