#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "homdens/certify.hpp"
#include "homdens/density.hpp"

using namespace homdens;

namespace {

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges) edges.emplace_back(perm[u], perm[v]);
  return make_graph(g.n, edges);
}

Graph path_complement(int edges) { return complement(path_graph(edges)); }

}  // namespace

TEST_CASE("base facts") {
  auto res = certify(complete_graph(5));
  CHECK(res.status == Status::ExtraGood);
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->rule == rules::kVtUpgrade);
  REQUIRE(res.certificate->premises.size() == 1);
  CHECK(res.certificate->premises[0].rule == rules::kComplete);
  CHECK(replay_certificate(*res.certificate).ok);

  CHECK(certify(path_graph(2)).status == Status::ExtraGood);   // tree
  CHECK(certify(cycle_graph(5)).status == Status::ExtraGood);  // unicyclic
  CHECK(certify(complete_graph(1)).status == Status::Good);    // single vertex
  CHECK(certify(complete_graph(2)).status == Status::ExtraGood);
  CHECK(certify(theta_graph({2, 3, 3})).status == Status::ExtraGood);
  CHECK(certify(cycles_joined(3, 3, 0)).status == Status::ExtraGood);  // bicyclic
  CHECK(certify(cocktail_party_graph(3)).status == Status::ExtraGood);
}

TEST_CASE("closure rules") {
  // complete minus a triangle is a theta graph, so the base fact fires
  auto km = certify(complete_minus_complete(5, 3));
  CHECK(km.status == Status::ExtraGood);
  CHECK(replay_certificate(*km.certificate).ok);

  // wheel: dominating vertex over C4
  Graph wheel =
      make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}});
  auto wres = certify(wheel);
  CHECK(wres.status == Status::ExtraGood);
  CHECK(replay_certificate(*wres.certificate).ok);

  // K4 plus a pendant leaf strips to K4
  Graph k4leaf = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
  auto lres = certify(k4leaf);
  CHECK(lres.status == Status::ExtraGood);
  CHECK(lres.certificate->rule == rules::kLeaf);
  CHECK(replay_certificate(*lres.certificate).ok);

  // K4 with a pendant triangle: pendant-cycle removal
  Graph k4tri = make_graph(
      6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
  auto pres = certify(k4tri);
  CHECK(pres.status == Status::ExtraGood);
  CHECK(pres.certificate->rule == rules::kPendantCycle);
  CHECK(replay_certificate(*pres.certificate).ok);

  // K4 with a two-hub bundle of three 2-paths: multitree detachment
  Graph k4theta = make_graph(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                 {0, 4}, {4, 7}, {0, 5}, {5, 7}, {0, 6}, {6, 7}});
  auto mres = certify(k4theta);
  CHECK(mres.status == Status::ExtraGood);
  CHECK(mres.certificate->rule == rules::kMultitreeGlue);
  CHECK(mres.certificate->ruleData.value("provenance", "") == "proof-sketch");
  CHECK(replay_certificate(*mres.certificate).ok);

  // disjoint unions are Good via the component rule
  auto dres = certify(disjoint_union(complete_graph(3), path_graph(2)));
  CHECK(dres.status == Status::Good);
  CHECK(dres.certificate->rule == rules::kComponents);
  CHECK(replay_certificate(*dres.certificate).ok);

  // vertex-transitive disjoint union upgrades
  auto vres = certify(disjoint_union(complete_graph(3), complete_graph(3)));
  CHECK(vres.status == Status::ExtraGood);
  CHECK(replay_certificate(*vres.certificate).ok);
}

TEST_CASE("open case stays open") {
  const Graph open = path_complement(5);
  REQUIRE(open.n == 6);
  REQUIRE(edge_count(open) == 10);
  auto res = certify(open, 16);
  CHECK(res.status == Status::Unknown);
  CHECK(!res.certificate.has_value());
}

TEST_CASE("replay rejects tampered certificates") {
  auto good = certify(cycle_graph(5));
  REQUIRE(good.certificate.has_value());
  CHECK(replay_certificate(*good.certificate).ok);

  // leaf rule pointing at a degree-2 vertex
  Certificate bad;
  bad.graph = cycle_graph(4);
  bad.status = Status::ExtraGood;
  bad.rule = rules::kLeaf;
  bad.ruleData["leaf"] = 0;
  Certificate premise;
  premise.graph = path_graph(2);
  premise.status = Status::ExtraGood;
  premise.rule = rules::kTreeUnicyclic;
  premise.ruleData["class"] = "tree";
  bad.premises.push_back(premise);
  auto r1 = replay_certificate(bad);
  CHECK(!r1.ok);
  CHECK(r1.reason.find("not a leaf") != std::string::npos);

  // tampered premise graph
  Graph k4leaf = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
  auto cert = *certify(k4leaf).certificate;
  cert.premises[0].graph = cycle_graph(4);
  CHECK(!replay_certificate(cert).ok);

  // status inflation on a base fact
  Certificate inflated;
  inflated.graph = complete_bipartite_graph(2, 3);
  inflated.status = Status::ExtraGood;
  inflated.rule = rules::kBipartiteSmall;
  inflated.ruleData["reason"] = "small";
  CHECK(!replay_certificate(inflated).ok);
}

TEST_CASE("catalog") {
  const auto rows3 = classify_catalog(3);
  REQUIRE(rows3.size() == 4);  // K1, K2, the 2-edge path, K3
  for (const auto& row : rows3) {
    if (edge_count(row.graph) == 0)
      CHECK(row.status == Status::Good);
    else
      CHECK(row.status == Status::ExtraGood);
  }

  const auto rows5 = classify_catalog(5);
  REQUIRE(rows5.size() == 1 + 1 + 2 + 6 + 21);
  int extraGood = 0;
  for (const auto& row : rows5) {
    CHECK(row.status != Status::Unknown);
    REQUIRE(row.certificate.has_value());
    const auto replay = replay_certificate(*row.certificate);
    CHECK(replay.ok);
    if (row.status == Status::ExtraGood) ++extraGood;
  }
  CHECK(extraGood > 20);

  // rows are sorted by canonical label
  for (std::size_t i = 1; i < rows5.size(); ++i)
    CHECK(rows5[i - 1].canonicalLabel < rows5[i].canonicalLabel);
}

TEST_CASE("catalog at n = 6 leaves the path complement open") {
  const auto rows = classify_catalog(6);
  REQUIRE(rows.size() == 31 + 112);
  const auto openLabel = canonical_form(path_complement(5));
  int unknowns = 0;
  bool openFound = false;
  for (const auto& row : rows) {
    if (row.status == Status::Unknown) {
      ++unknowns;
      if (row.canonicalLabel == openLabel) openFound = true;
    } else {
      CHECK(replay_certificate(*row.certificate).ok);
    }
  }
  CHECK(openFound);
  CHECK(unknowns >= 1);
}

TEST_CASE("idempotence and depth monotonicity") {
  Rng rng(23);
  for (const Graph& g :
       {complete_minus_complete(5, 3), cycle_graph(6),
        make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 2}})}) {
    const auto base = certify(g).status;
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 5; ++trial) {
      for (int i = g.n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
      CHECK(certify(relabel(g, perm)).status == base);
    }
  }

  // deeper search never downgrades a status
  for (const auto& row : classify_catalog(5, 2)) {
    const auto deeper = certify(row.graph, 8).status;
    if (row.status == Status::ExtraGood) CHECK(deeper == Status::ExtraGood);
    if (row.status == Status::Good)
      CHECK((deeper == Status::Good || deeper == Status::ExtraGood));
  }
}

TEST_CASE("numerical consistency of certified statuses") {
  // sampled version of the full acceptance sweep
  const auto rows = classify_catalog(5);
  for (int seed = 0; seed < 5; ++seed) {
    const auto g = random_kernel(KernelKind::DoublyNonneg, 2 + seed % 4, 5, 500 + seed);
    const double density = edge_density(g);
    for (const auto& row : rows) {
      const int e = edge_count(row.graph);
      if (row.status == Status::Unknown || e < 1) continue;
      const double t = t_dp(row.graph, g);
      CHECK(t >= std::pow(density, double(e)) * (1.0 - 1e-9));
      if (row.status == Status::ExtraGood) {
        Rng rng(derive_seed(900, std::uint64_t(seed * 100 + e)));
        std::vector<Eigen::VectorXd> fs;
        for (int v = 0; v < row.graph.n; ++v) {
          Eigen::VectorXd f(g.cells());
          for (int c = 0; c < g.cells(); ++c) f(c) = rng.uniform();
          fs.push_back(f);
        }
        const auto [lhs, rhs] = t_weighted(row.graph, g, fs);
        CHECK(lhs >= rhs - 1e-10);
      }
    }
  }
}
