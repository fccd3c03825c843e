#include "homdens/certify.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace homdens {

std::string to_string(Status s) {
  switch (s) {
    case Status::Good: return "Good";
    case Status::ExtraGood: return "ExtraGood";
    default: return "Unknown";
  }
}

Status status_from_string(const std::string& s) {
  if (s == "Good") return Status::Good;
  if (s == "ExtraGood") return Status::ExtraGood;
  if (s == "Unknown") return Status::Unknown;
  throw std::invalid_argument("unknown status string: " + s);
}

namespace {

using nlohmann::ordered_json;

// --- structural detectors shared by the search and the replayer -----------

struct ThetaDecomposition {
  std::pair<int, int> hubs;
  std::vector<std::vector<int>> paths;  // internal vertices, hub0 -> hub1 order
};

bool verify_theta(const Graph& g, const std::pair<int, int>& hubs,
                  const std::vector<std::vector<int>>& paths) {
  const int u = hubs.first, v = hubs.second;
  if (u < 0 || v < 0 || u >= g.n || v >= g.n || u == v) return false;
  if (paths.size() < 2) return false;
  const auto deg = degrees(g);
  std::vector<char> seen(g.n, 0);
  seen[u] = seen[v] = 1;
  int edgesCovered = 0;
  int direct = 0;
  for (const auto& path : paths) {
    if (path.empty()) {
      if (!has_edge(g, u, v)) return false;
      ++direct;
      ++edgesCovered;
      continue;
    }
    int prev = u;
    for (int w : path) {
      if (w < 0 || w >= g.n || seen[w] || deg[w] != 2) return false;
      if (!has_edge(g, prev, w)) return false;
      seen[w] = 1;
      ++edgesCovered;
      prev = w;
    }
    if (!has_edge(g, prev, v)) return false;
    ++edgesCovered;
  }
  if (direct > 1) return false;
  if (deg[u] != int(paths.size()) || deg[v] != int(paths.size())) return false;
  for (int w = 0; w < g.n; ++w)
    if (!seen[w]) return false;
  return edgesCovered == edge_count(g);
}

std::optional<ThetaDecomposition> theta_decomposition(const Graph& g) {
  const auto deg = degrees(g);
  std::vector<int> hubs;
  for (int v = 0; v < g.n; ++v)
    if (deg[v] != 2) hubs.push_back(v);
  if (hubs.size() != 2) return std::nullopt;
  const int u = hubs[0], v = hubs[1];
  if (deg[u] != deg[v] || deg[u] < 3) return std::nullopt;

  const auto nbr = neighbor_lists(g);
  ThetaDecomposition out;
  out.hubs = {u, v};
  std::vector<char> used(g.n, 0);
  for (int w : nbr[u]) {
    if (w == v) {
      out.paths.push_back({});
      continue;
    }
    if (used[w]) return std::nullopt;
    std::vector<int> path;
    int prev = u, cur = w;
    while (cur != v) {
      if (cur == u || used[cur] || deg[cur] != 2) return std::nullopt;
      path.push_back(cur);
      used[cur] = 1;
      int next = -1;
      for (int cand : nbr[cur])
        if (cand != prev) next = cand;
      prev = cur;
      cur = next;
    }
    out.paths.push_back(std::move(path));
  }
  if (!verify_theta(g, out.hubs, out.paths)) return std::nullopt;
  return out;
}

struct PendantCycle {
  int attachment = -1;
  std::vector<int> internals;  // walk order, both ends adjacent to attachment
};

bool verify_pendant_cycle(const Graph& g, int x, const std::vector<int>& internals) {
  if (x < 0 || x >= g.n || internals.size() < 2) return false;
  const auto deg = degrees(g);
  std::vector<char> seen(g.n, 0);
  seen[x] = 1;
  for (int c : internals) {
    if (c < 0 || c >= g.n || seen[c] || deg[c] != 2) return false;
    seen[c] = 1;
  }
  if (!has_edge(g, x, internals.front())) return false;
  if (!has_edge(g, x, internals.back())) return false;
  for (std::size_t i = 0; i + 1 < internals.size(); ++i)
    if (!has_edge(g, internals[i], internals[i + 1])) return false;
  return true;
}

std::vector<PendantCycle> pendant_cycles(const Graph& g) {
  const auto deg = degrees(g);
  const auto nbr = neighbor_lists(g);
  std::vector<PendantCycle> out;
  std::set<std::vector<int>> dedupe;
  for (int x = 0; x < g.n; ++x) {
    for (int first : nbr[x]) {
      if (deg[first] != 2) continue;
      std::vector<int> walk = {first};
      int prev = x, cur = first;
      bool ok = true;
      while (true) {
        int next = -1;
        for (int cand : nbr[cur])
          if (cand != prev) next = cand;
        if (next == x) break;
        if (next < 0 || deg[next] != 2 ||
            std::find(walk.begin(), walk.end(), next) != walk.end()) {
          ok = false;
          break;
        }
        walk.push_back(next);
        prev = cur;
        cur = next;
      }
      if (!ok || walk.size() < 2) continue;
      std::vector<int> key = walk;
      std::sort(key.begin(), key.end());
      key.push_back(x);
      if (!dedupe.insert(key).second) continue;
      if (!verify_pendant_cycle(g, x, walk)) continue;
      out.push_back({x, walk});
    }
  }
  return out;
}

// Pinned-isomorphism signature of one component D of M - black: the
// canonical label of the graph on [black..., D...] with the black vertices
// held fixed pointwise.
std::string component_signature(const Graph& m, const std::vector<int>& black,
                                const std::vector<int>& component) {
  std::vector<int> order = black;
  order.insert(order.end(), component.begin(), component.end());
  std::vector<int> pos(m.n, -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = int(i);
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : m.edges)
    if (pos[a] >= 0 && pos[b] >= 0) edges.emplace_back(pos[a], pos[b]);
  return canonical_form_pinned(make_graph(int(order.size()), edges), int(black.size()));
}

// Checks that the subgraph induced on {x} + bundle consists of `copies`
// copies of one colored tree glued along the black vertex set, attached to
// the rest of g only through x.
bool verify_multitree_bundle(const Graph& g, int x, const std::vector<int>& bundle,
                             const std::vector<int>& black, int copies) {
  if (copies < 1 || x < 0 || x >= g.n) return false;
  std::vector<char> inM(g.n, 0);
  inM[x] = 1;
  for (int v : bundle) {
    if (v < 0 || v >= g.n || v == x || inM[v]) return false;
    inM[v] = 1;
  }
  // the bundle touches the rest of the graph only through x
  for (auto [a, b] : g.edges) {
    const bool ia = inM[a] && a != x, ib = inM[b] && b != x;
    if (ia && !inM[b]) return false;
    if (ib && !inM[a]) return false;
  }
  std::vector<char> isBlack(g.n, 0);
  bool xBlack = false;
  for (int v : black) {
    if (v < 0 || v >= g.n || !inM[v] || isBlack[v]) return false;
    isBlack[v] = 1;
    if (v == x) xBlack = true;
  }
  if (!xBlack) return false;

  std::vector<int> mVertices = {x};
  mVertices.insert(mVertices.end(), bundle.begin(), bundle.end());
  std::sort(mVertices.begin(), mVertices.end());
  const Graph m = induced_subgraph(g, mVertices);
  std::vector<int> newLabel(g.n, -1);
  for (std::size_t i = 0; i < mVertices.size(); ++i) newLabel[mVertices[i]] = int(i);
  std::vector<int> blackM;
  for (int v : black) blackM.push_back(newLabel[v]);
  std::sort(blackM.begin(), blackM.end());

  // components of M - black, expressed in M labels
  std::vector<int> keep;
  std::vector<char> isBlackM(m.n, 0);
  for (int v : blackM) isBlackM[v] = 1;
  for (int v = 0; v < m.n; ++v)
    if (!isBlackM[v]) keep.push_back(v);
  const Graph rest = induced_subgraph(m, keep);
  std::vector<std::vector<int>> comps;
  for (auto& comp : connected_components(rest)) {
    std::vector<int> mapped;
    for (int v : comp) mapped.push_back(keep[std::size_t(v)]);
    comps.push_back(std::move(mapped));
  }

  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < comps.size(); ++i)
    groups[component_signature(m, blackM, comps[i])].push_back(i);
  for (const auto& [sig, members] : groups)
    if (members.size() % std::size_t(copies) != 0) return false;
  if (comps.empty() && copies != 1) return false;

  // assemble one page: the black set plus count/copies components per class
  std::vector<int> pageVertices = blackM;
  for (const auto& [sig, members] : groups) {
    const std::size_t take = members.size() / std::size_t(copies);
    for (std::size_t i = 0; i < take; ++i)
      for (int v : comps[members[i]]) pageVertices.push_back(v);
  }
  return is_tree(induced_subgraph(m, pageVertices));
}

struct MultitreeWitness {
  int attachment = -1;
  std::vector<int> bundle;
  std::vector<int> black;
  int copies = 0;
};

std::vector<MultitreeWitness> multitree_witnesses(const Graph& g) {
  std::vector<MultitreeWitness> out;
  for (int x = 0; x < g.n; ++x) {
    std::vector<int> others;
    for (int v = 0; v < g.n; ++v)
      if (v != x) others.push_back(v);
    const Graph rest = induced_subgraph(g, others);
    const auto comps = connected_components(rest);
    if (comps.size() < 2) continue;  // need a proper bundle and a nonempty rest
    for (std::uint32_t mask = 1; mask + 1 < (1u << comps.size()); ++mask) {
      std::vector<int> bundle;
      for (std::size_t ci = 0; ci < comps.size(); ++ci)
        if (mask & (1u << ci))
          for (int v : comps[ci]) bundle.push_back(others[std::size_t(v)]);
      std::sort(bundle.begin(), bundle.end());
      if (int(bundle.size()) + 1 > 9) continue;

      std::vector<int> mVertices = {x};
      mVertices.insert(mVertices.end(), bundle.begin(), bundle.end());
      std::sort(mVertices.begin(), mVertices.end());
      const int mSize = int(mVertices.size());
      const int xIdx = int(std::lower_bound(mVertices.begin(), mVertices.end(), x) -
                           mVertices.begin());
      for (std::uint32_t bmask = 0; bmask < (1u << mSize); ++bmask) {
        if (!(bmask & (1u << xIdx))) continue;
        std::vector<int> black;
        for (int i = 0; i < mSize; ++i)
          if (bmask & (1u << i)) black.push_back(mVertices[std::size_t(i)]);
        // prefer more copies: smaller pages strip more structure at once
        for (int copies = mSize; copies >= 2; --copies) {
          if (verify_multitree_bundle(g, x, bundle, black, copies)) {
            out.push_back({x, bundle, black, copies});
            break;
          }
        }
      }
    }
  }
  return out;
}

std::vector<int> dominating_vertices(const Graph& g) {
  std::vector<int> out;
  const auto deg = degrees(g);
  for (int v = 0; v < g.n; ++v)
    if (deg[v] == g.n - 1) out.push_back(v);
  return out;
}

bool is_cocktail_like(const Graph& g) {
  // complement is a set of independent edges
  for (int d : degrees(complement(g)))
    if (d > 1) return false;
  return true;
}

bool is_octahedron(const Graph& g) {
  return g.n == 6 && edge_count(g) == 12 && is_isomorphic(g, cocktail_party_graph(3));
}

ordered_json vec_json(const std::vector<int>& v) {
  ordered_json j = ordered_json::array();
  for (int x : v) j.push_back(x);
  return j;
}

Certificate base_node(const Graph& g, Status status, const char* rule,
                      ordered_json data = ordered_json::object()) {
  Certificate c;
  c.graph = g;
  c.status = status;
  c.rule = rule;
  c.ruleData = std::move(data);
  return c;
}

}  // namespace

CertifyResult certify(const Graph& g, int maxDepth) {
  Certifier engine(maxDepth);
  return engine.certify(g);
}

CertifyResult Certifier::certify(const Graph& g, int depth) {
  if (g.n < 1) throw std::invalid_argument("certify: graph must have at least one vertex");
  if (g.n > kCanonicalBound) throw TooLarge("certify: graph exceeds the vertex bound");

  const auto comps = connected_components(g);
  if (comps.size() <= 1) return certify_connected(g, depth);

  // disjoint unions: every component must certify at least Good
  std::vector<Certificate> premises;
  for (const auto& comp : comps) {
    const Graph sub = induced_subgraph(g, comp);
    auto res = certify_connected(sub, depth);
    if (res.status == Status::Unknown) return {Status::Unknown, std::nullopt};
    Certificate c = *res.certificate;
    if (c.status == Status::ExtraGood) {
      Certificate coerced = base_node(sub, Status::Good, rules::kCoerce);
      coerced.premises.push_back(std::move(c));
      c = std::move(coerced);
    }
    premises.push_back(std::move(c));
  }
  ordered_json data;
  ordered_json compJson = ordered_json::array();
  for (const auto& comp : comps) compJson.push_back(vec_json(comp));
  data["components"] = std::move(compJson);
  Certificate good = base_node(g, Status::Good, rules::kComponents, std::move(data));
  good.premises = std::move(premises);

  if (edge_count(g) >= 1 && is_vertex_transitive(g)) {
    Certificate extra = base_node(g, Status::ExtraGood, rules::kVtUpgrade);
    extra.premises.push_back(std::move(good));
    return {Status::ExtraGood, std::move(extra)};
  }
  return {Status::Good, std::move(good)};
}

CertifyResult Certifier::certify_connected(const Graph& g, int depth) {
  const std::string canon = canonical_form(g);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = statusMemo_.find({canon, depth});
    if (it != statusMemo_.end() && it->second == Status::Unknown)
      return {Status::Unknown, std::nullopt};
  }

  const int n = g.n;
  const int e = edge_count(g);
  const bool hasEdges = e >= 1;
  std::optional<Certificate> good, extra;

  // base facts, in rule-catalog order
  if (is_bipartite(g)) {
    const char* reason = nullptr;
    if (n <= 9)
      reason = "small";
    else if (is_tree(g))
      reason = "tree";
    else if (is_complete_bipartite(g))
      reason = "complete-bipartite";
    if (reason)
      good = base_node(g, Status::Good, rules::kBipartiteSmall, {{"reason", reason}});
  }
  if (!good) {
    if (is_cycle(g))
      good = base_node(g, Status::Good, rules::kNormingSub, {{"family", "cycle"}});
    else if (is_octahedron(g))
      good = base_node(g, Status::Good, rules::kNormingSub, {{"family", "octahedron"}});
  }
  if (!good && is_complete(g)) good = base_node(g, Status::Good, rules::kComplete);
  if (!good && is_cocktail_like(g)) good = base_node(g, Status::Good, rules::kCocktail);

  if (hasEdges && (e == n - 1 || e == n))
    extra = base_node(g, Status::ExtraGood, rules::kTreeUnicyclic,
                      {{"class", e == n - 1 ? "tree" : "unicyclic"}});
  if (!extra) {
    if (auto theta = theta_decomposition(g)) {
      ordered_json data;
      data["hubs"] = ordered_json::array({theta->hubs.first, theta->hubs.second});
      ordered_json paths = ordered_json::array();
      for (const auto& p : theta->paths) paths.push_back(vec_json(p));
      data["paths"] = std::move(paths);
      extra = base_node(g, Status::ExtraGood, rules::kTheta, std::move(data));
    }
  }
  if (!extra && e == n + 1) extra = base_node(g, Status::ExtraGood, rules::kBicyclic);

  // a vertex-transitive graph that is already Good upgrades without search
  if (!extra && good && hasEdges && is_vertex_transitive(g)) {
    Certificate c = base_node(g, Status::ExtraGood, rules::kVtUpgrade);
    c.premises.push_back(*good);
    extra = std::move(c);
  }

  if (!extra && depth > 0) {
    const auto deg = degrees(g);

    // remove a leaf
    for (int v = 0; v < n && !extra; ++v) {
      if (deg[v] != 1) continue;
      auto sub = certify(remove_vertices(g, {v}), depth - 1);
      if (sub.status == Status::ExtraGood) {
        Certificate c = base_node(g, Status::ExtraGood, rules::kLeaf, {{"leaf", v}});
        c.premises.push_back(std::move(*sub.certificate));
        extra = std::move(c);
      }
    }

    // remove a pendant cycle
    if (!extra) {
      for (const auto& pc : pendant_cycles(g)) {
        const Graph residue = remove_vertices(g, pc.internals);
        if (edge_count(residue) < 1) continue;
        auto sub = certify(residue, depth - 1);
        if (sub.status == Status::ExtraGood) {
          ordered_json data;
          data["attachment"] = pc.attachment;
          data["cycle"] = vec_json(pc.internals);
          Certificate c =
              base_node(g, Status::ExtraGood, rules::kPendantCycle, std::move(data));
          c.premises.push_back(std::move(*sub.certificate));
          extra = std::move(c);
          break;
        }
      }
    }

    // remove one dominating vertex
    if (!extra && n >= 2) {
      for (int d : dominating_vertices(g)) {
        auto sub = certify(remove_vertices(g, {d}), depth - 1);
        if (sub.status == Status::ExtraGood) {
          ordered_json data;
          data["vertex"] = d;
          data["provenance"] = "proof-sketch";
          Certificate c = base_node(g, Status::ExtraGood, rules::kDominate1, std::move(data));
          c.premises.push_back(std::move(*sub.certificate));
          extra = std::move(c);
          break;
        }
        if (sub.status == Status::Good && !good) {
          Certificate c = base_node(g, Status::Good, rules::kDominate1, {{"vertex", d}});
          c.premises.push_back(std::move(*sub.certificate));
          good = std::move(c);
        }
      }
    }

    // remove a nonadjacent dominating pair
    if (!extra && n >= 3) {
      for (int u = 0; u < n && !extra; ++u) {
        if (deg[u] != n - 2) continue;
        for (int v = u + 1; v < n && !extra; ++v) {
          if (deg[v] != n - 2 || has_edge(g, u, v)) continue;
          auto sub = certify(remove_vertices(g, {u, v}), depth - 1);
          if (sub.status == Status::ExtraGood) {
            ordered_json data;
            data["pair"] = ordered_json::array({u, v});
            data["provenance"] = "proof-sketch";
            Certificate c =
                base_node(g, Status::ExtraGood, rules::kDominate2, std::move(data));
            c.premises.push_back(std::move(*sub.certificate));
            extra = std::move(c);
          } else if (sub.status == Status::Good && !good) {
            ordered_json data;
            data["pair"] = ordered_json::array({u, v});
            Certificate c = base_node(g, Status::Good, rules::kDominate2, std::move(data));
            c.premises.push_back(std::move(*sub.certificate));
            good = std::move(c);
          }
        }
      }
    }

    // detach a multitree bundle
    if (!extra) {
      for (const auto& w : multitree_witnesses(g)) {
        const Graph residue = remove_vertices(g, w.bundle);
        if (edge_count(residue) < 1) continue;
        auto sub = certify(residue, depth - 1);
        if (sub.status == Status::ExtraGood) {
          ordered_json data;
          data["attachment"] = w.attachment;
          data["bundle"] = vec_json(w.bundle);
          data["black"] = vec_json(w.black);
          data["copies"] = w.copies;
          data["provenance"] = "proof-sketch";
          Certificate c =
              base_node(g, Status::ExtraGood, rules::kMultitreeGlue, std::move(data));
          c.premises.push_back(std::move(*sub.certificate));
          extra = std::move(c);
          break;
        }
      }
    }
  }

  if (!extra && good && hasEdges && is_vertex_transitive(g)) {
    Certificate c = base_node(g, Status::ExtraGood, rules::kVtUpgrade);
    c.premises.push_back(*good);
    extra = std::move(c);
  }

  CertifyResult result;
  if (extra)
    result = {Status::ExtraGood, std::move(extra)};
  else if (good)
    result = {Status::Good, std::move(good)};
  else
    result = {Status::Unknown, std::nullopt};

  {
    std::lock_guard<std::mutex> lock(mutex_);
    statusMemo_[{canon, depth}] = result.status;
  }
  return result;
}

// --- replay ----------------------------------------------------------------

namespace {

ReplayResult fail(const std::string& where, const std::string& why) {
  return {false, where.empty() ? why : where + ": " + why};
}

ReplayResult replay_node(const Certificate& c, const std::string& where) {
  const Graph& g = c.graph;
  const int n = g.n;
  const int e = edge_count(g);
  const auto& rule = c.rule;

  auto premiseCount = [&](std::size_t want) -> std::optional<ReplayResult> {
    if (c.premises.size() != want)
      return fail(where, "rule " + rule + " expects " + std::to_string(want) +
                             " premises, found " + std::to_string(c.premises.size()));
    return std::nullopt;
  };
  auto residueMatches = [&](const std::vector<int>& removed, const Graph& premise) {
    return remove_vertices(g, removed) == premise;
  };

  if (c.status == Status::ExtraGood && e < 1)
    return fail(where, "an edgeless graph cannot be extra-good");

  if (rule == rules::kBipartiteSmall) {
    if (auto r = premiseCount(0)) return *r;
    if (c.status != Status::Good) return fail(where, "base rule must conclude Good");
    if (!is_bipartite(g)) return fail(where, "graph is not bipartite");
    const std::string reason = c.ruleData.value("reason", "");
    if (reason == "small") {
      if (n > 9) return fail(where, "graph has more than 9 vertices");
    } else if (reason == "tree") {
      if (!is_tree(g)) return fail(where, "graph is not a tree");
    } else if (reason == "complete-bipartite") {
      if (!is_complete_bipartite(g)) return fail(where, "graph is not complete bipartite");
    } else {
      return fail(where, "unknown reason '" + reason + "'");
    }
  } else if (rule == rules::kNormingSub) {
    if (auto r = premiseCount(0)) return *r;
    if (c.status != Status::Good) return fail(where, "base rule must conclude Good");
    const std::string family = c.ruleData.value("family", "");
    if (family == "cycle") {
      if (!is_cycle(g)) return fail(where, "graph is not a cycle");
    } else if (family == "octahedron") {
      if (!is_octahedron(g)) return fail(where, "graph is not the octahedron");
    } else {
      return fail(where, "unknown family '" + family + "'");
    }
  } else if (rule == rules::kComplete) {
    if (auto r = premiseCount(0)) return *r;
    if (c.status != Status::Good) return fail(where, "base rule must conclude Good");
    if (!is_complete(g)) return fail(where, "graph is not complete");
  } else if (rule == rules::kCocktail) {
    if (auto r = premiseCount(0)) return *r;
    if (c.status != Status::Good) return fail(where, "base rule must conclude Good");
    if (!is_cocktail_like(g))
      return fail(where, "complement is not a set of independent edges");
  } else if (rule == rules::kTreeUnicyclic) {
    if (auto r = premiseCount(0)) return *r;
    if (c.status != Status::ExtraGood) return fail(where, "rule concludes ExtraGood");
    if (!is_connected(g)) return fail(where, "graph is not connected");
    if (e != n - 1 && e != n) return fail(where, "graph is neither a tree nor unicyclic");
  } else if (rule == rules::kTheta) {
    if (auto r = premiseCount(0)) return *r;
    if (c.status != Status::ExtraGood) return fail(where, "rule concludes ExtraGood");
    std::pair<int, int> hubs;
    std::vector<std::vector<int>> paths;
    try {
      hubs = {c.ruleData.at("hubs").at(0).get<int>(),
              c.ruleData.at("hubs").at(1).get<int>()};
      for (const auto& p : c.ruleData.at("paths")) paths.push_back(p.get<std::vector<int>>());
    } catch (const nlohmann::json::exception&) {
      return fail(where, "malformed theta witness data");
    }
    if (!verify_theta(g, hubs, paths)) return fail(where, "theta decomposition invalid");
  } else if (rule == rules::kBicyclic) {
    if (auto r = premiseCount(0)) return *r;
    if (c.status != Status::ExtraGood) return fail(where, "rule concludes ExtraGood");
    if (!is_connected(g) || e != n + 1) return fail(where, "graph is not bicyclic");
  } else if (rule == rules::kComponents) {
    if (c.status != Status::Good) return fail(where, "rule concludes Good");
    std::vector<std::vector<int>> comps;
    try {
      for (const auto& comp : c.ruleData.at("components"))
        comps.push_back(comp.get<std::vector<int>>());
    } catch (const nlohmann::json::exception&) {
      return fail(where, "malformed component data");
    }
    if (comps.size() != c.premises.size())
      return fail(where, "component count does not match premise count");
    std::vector<char> seen(n, 0);
    std::vector<int> compOf(n, -1);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (int v : comps[i]) {
        if (v < 0 || v >= n || seen[v]) return fail(where, "components do not partition V");
        seen[v] = 1;
        compOf[v] = int(i);
      }
      if (induced_subgraph(g, comps[i]) != c.premises[i].graph)
        return fail(where, "premise " + std::to_string(i) + " is not the induced component");
      if (c.premises[i].status != Status::Good)
        return fail(where, "component premises must conclude Good");
    }
    for (int v = 0; v < n; ++v)
      if (!seen[v]) return fail(where, "components do not cover V");
    for (auto [a, b] : g.edges)
      if (compOf[a] != compOf[b]) return fail(where, "edge crosses listed components");
  } else if (rule == rules::kVtUpgrade) {
    if (auto r = premiseCount(1)) return *r;
    if (c.status != Status::ExtraGood) return fail(where, "rule concludes ExtraGood");
    if (!is_vertex_transitive(g)) return fail(where, "graph is not vertex-transitive");
    if (c.premises[0].graph != g) return fail(where, "premise graph differs");
    if (c.premises[0].status != Status::Good) return fail(where, "premise must be Good");
  } else if (rule == rules::kLeaf) {
    if (auto r = premiseCount(1)) return *r;
    if (c.status != Status::ExtraGood) return fail(where, "rule concludes ExtraGood");
    const int v = c.ruleData.value("leaf", -1);
    if (v < 0 || v >= n) return fail(where, "leaf vertex out of range");
    if (degrees(g)[v] != 1)
      return fail(where, "vertex " + std::to_string(v) + " is not a leaf");
    if (!residueMatches({v}, c.premises[0].graph))
      return fail(where, "premise is not the graph minus the leaf");
    if (c.premises[0].status != Status::ExtraGood)
      return fail(where, "premise must be ExtraGood");
  } else if (rule == rules::kPendantCycle) {
    if (auto r = premiseCount(1)) return *r;
    if (c.status != Status::ExtraGood) return fail(where, "rule concludes ExtraGood");
    const int x = c.ruleData.value("attachment", -1);
    std::vector<int> internals;
    try {
      internals = c.ruleData.at("cycle").get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
      return fail(where, "malformed pendant-cycle data");
    }
    if (!verify_pendant_cycle(g, x, internals))
      return fail(where, "pendant cycle structure invalid");
    if (!residueMatches(internals, c.premises[0].graph))
      return fail(where, "premise is not the graph minus the cycle");
    if (c.premises[0].status != Status::ExtraGood)
      return fail(where, "premise must be ExtraGood");
  } else if (rule == rules::kDominate1) {
    if (auto r = premiseCount(1)) return *r;
    const int d = c.ruleData.value("vertex", -1);
    if (d < 0 || d >= n) return fail(where, "vertex out of range");
    if (degrees(g)[d] != n - 1)
      return fail(where, "vertex " + std::to_string(d) + " does not dominate");
    if (!residueMatches({d}, c.premises[0].graph))
      return fail(where, "premise is not the graph minus the vertex");
    if (c.status != c.premises[0].status || c.status == Status::Unknown)
      return fail(where, "conclusion status must mirror the premise");
  } else if (rule == rules::kDominate2) {
    if (auto r = premiseCount(1)) return *r;
    int u = -1, v = -1;
    try {
      u = c.ruleData.at("pair").at(0).get<int>();
      v = c.ruleData.at("pair").at(1).get<int>();
    } catch (const nlohmann::json::exception&) {
      return fail(where, "malformed pair data");
    }
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) return fail(where, "pair out of range");
    if (has_edge(g, u, v)) return fail(where, "pair vertices are adjacent");
    const auto deg = degrees(g);
    if (deg[u] != n - 2 || deg[v] != n - 2)
      return fail(where, "pair does not dominate the rest");
    if (!residueMatches({u, v}, c.premises[0].graph))
      return fail(where, "premise is not the graph minus the pair");
    if (c.status != c.premises[0].status || c.status == Status::Unknown)
      return fail(where, "conclusion status must mirror the premise");
  } else if (rule == rules::kMultitreeGlue) {
    if (auto r = premiseCount(1)) return *r;
    if (c.status != Status::ExtraGood) return fail(where, "rule concludes ExtraGood");
    int x = -1, copies = 0;
    std::vector<int> bundle, black;
    try {
      x = c.ruleData.at("attachment").get<int>();
      copies = c.ruleData.at("copies").get<int>();
      bundle = c.ruleData.at("bundle").get<std::vector<int>>();
      black = c.ruleData.at("black").get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
      return fail(where, "malformed multitree data");
    }
    if (!verify_multitree_bundle(g, x, bundle, black, copies))
      return fail(where, "multitree bundle structure invalid");
    if (!residueMatches(bundle, c.premises[0].graph))
      return fail(where, "premise is not the graph minus the bundle");
    if (c.premises[0].status != Status::ExtraGood)
      return fail(where, "premise must be ExtraGood");
  } else if (rule == rules::kCoerce) {
    if (auto r = premiseCount(1)) return *r;
    if (c.status != Status::Good) return fail(where, "coercion concludes Good");
    if (c.premises[0].graph != g) return fail(where, "premise graph differs");
    if (c.premises[0].status != Status::ExtraGood)
      return fail(where, "premise must be ExtraGood");
  } else {
    return fail(where, "unknown rule '" + rule + "'");
  }

  for (std::size_t i = 0; i < c.premises.size(); ++i) {
    const std::string deeper =
        (where.empty() ? std::string() : where + ".") + "premises[" + std::to_string(i) + "]";
    auto r = replay_node(c.premises[i], deeper);
    if (!r.ok) return r;
  }
  return {true, ""};
}

}  // namespace

ReplayResult replay_certificate(const Certificate& c) { return replay_node(c, ""); }

std::vector<CatalogRow> classify_catalog(int maxN, int maxDepth) {
  if (maxN < 1) throw std::invalid_argument("classify_catalog: need maxN >= 1");
  if (maxN > 7) throw TooLarge("classify_catalog: supported up to 7 vertices");
  std::vector<CatalogRow> rows;
  for (int n = 1; n <= maxN; ++n)
    for (auto& g : enumerate_connected(n)) {
      CatalogRow row;
      row.canonicalLabel = canonical_form(g);
      row.graph = std::move(g);
      rows.push_back(std::move(row));
    }
  std::sort(rows.begin(), rows.end(), [](const CatalogRow& a, const CatalogRow& b) {
    return a.canonicalLabel < b.canonicalLabel;
  });
  Certifier engine(maxDepth);
  for (auto& row : rows) {
    auto res = engine.certify(row.graph);
    row.status = res.status;
    row.certificate = std::move(res.certificate);
  }
  return rows;
}

}  // namespace homdens
