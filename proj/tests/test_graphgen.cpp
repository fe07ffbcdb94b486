#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "lexnav/graphgen.hpp"
#include "lexnav/rng.hpp"
#include "lexnav/stats.hpp"
#include "oracles.hpp"

using namespace lexnav;

namespace {

bool same_graph(const NavGraph& a, const NavGraph& b) {
  return a.kind == b.kind && a.dims == b.dims && a.side == b.side && a.alpha == b.alpha &&
         a.q == b.q && a.seed == b.seed && a.out == b.out && a.coords == b.coords &&
         a.vectors == b.vectors && a.in_degree == b.in_degree;
}

}  // namespace

TEST_CASE("lattice structure") {
  SUBCASE("1D ring without long-range links") {
    const auto g = generate_kleinberg_lattice({1, 5, 0.0, 0, 1});
    REQUIRE(g.num_nodes() == 5);
    for (int32_t u = 0; u < 5; ++u) {
      REQUIRE(g.out[u].size() == 2);
      const std::set<int32_t> nbs(g.out[u].begin(), g.out[u].end());
      CHECK(nbs == std::set<int32_t>{(u + 1) % 5, (u + 4) % 5});
    }
  }
  SUBCASE("2D lattice with one long-range link per node") {
    const auto g = generate_kleinberg_lattice({2, 10, 1.0, 1, 2});
    REQUIRE(g.num_nodes() == 100);
    for (int32_t u = 0; u < 100; ++u) {
      CHECK(g.out[u].size() == 5);  // 2D + q
      for (int32_t v : g.out[u]) CHECK(v != u);
      // local links are the four unit steps
      for (int i = 0; i < 4; ++i) CHECK(g.lattice_distance(u, g.out[u][i]) == 1);
      CHECK(g.lattice_distance(u, g.out[u][4]) >= 1);
    }
  }
  SUBCASE("lattice coordinates are row-major") {
    const auto g = generate_kleinberg_lattice({2, 4, 0.0, 0, 0});
    CHECK(g.coord(0, 0) == 0);
    CHECK(g.coord(0, 1) == 0);
    CHECK(g.coord(5, 0) == 1);
    CHECK(g.coord(5, 1) == 1);
    CHECK(g.lattice_distance(0, 5) == 2);
    CHECK(g.lattice_distance(0, 3) == 1);  // torus wrap
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(generate_kleinberg_lattice({2, 2, 0.0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_kleinberg_lattice({0, 5, 0.0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_kleinberg_lattice({2, 5, -1.0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_kleinberg_lattice({2, 5, 0.0, -1, 1}), std::invalid_argument);
  }
}

TEST_CASE("generation is deterministic by seed") {
  const LatticeConfig config{2, 8, 1.5, 2, 77};
  CHECK(same_graph(generate_kleinberg_lattice(config), generate_kleinberg_lattice(config)));
  CHECK(same_graph(generate_lexical_graph(config, 3), generate_lexical_graph(config, 3)));
  const PaMixConfig pa{50, 2, 1.0, 16, 9};
  CHECK(same_graph(generate_pa_mixture(pa), generate_pa_mixture(pa)));

  LatticeConfig other = config;
  other.seed = 78;
  CHECK(!same_graph(generate_kleinberg_lattice(config), generate_kleinberg_lattice(other)));
}

TEST_CASE("long-range endpoints follow the r^-alpha class law") {
  // side 101 gives 50 distance classes of size 2 each; q=990 yields ~1e5 draws.
  const int side = 101, q = 990;
  const double alpha = 1.0;
  const auto g = generate_kleinberg_lattice({1, side, alpha, q, 4242});

  const auto sizes = torus_distance_class_sizes(1, side);
  REQUIRE(sizes.size() == 51);
  for (int r = 1; r <= 50; ++r) CHECK(sizes[r] == 2);

  std::vector<int64_t> observed(51, 0);
  int64_t draws = 0;
  for (int32_t u = 0; u < g.num_nodes(); ++u) {
    for (size_t i = 2; i < g.out[u].size(); ++i) {  // skip the 2 local links
      ++observed[g.lattice_distance(u, g.out[u][i])];
      ++draws;
    }
  }
  CHECK(draws == int64_t{side} * q);
  CHECK(observed[0] == 0);

  double z = 0;
  for (int r = 1; r <= 50; ++r) z += sizes[r] * std::pow(r, -alpha);
  std::vector<double> expected;
  std::vector<int64_t> obs;
  for (int r = 1; r <= 50; ++r) {
    expected.push_back(draws * sizes[r] * std::pow(r, -alpha) / z);
    obs.push_back(observed[r]);
  }
  // chi-square critical value at 1% significance, 49 degrees of freedom
  CHECK(oracles::chi_square_stat(obs, expected) < 74.919);
}

TEST_CASE("lexical graphs embed lattice distance in content space") {
  const LatticeConfig config{2, 8, 2.0, 1, 5};
  const auto g = generate_lexical_graph(config, 2);

  SUBCASE("linkage matches the plain lattice with the same config") {
    const auto lattice = generate_kleinberg_lattice(config);
    CHECK(g.out == lattice.out);
    CHECK(g.coords == lattice.coords);
  }
  SUBCASE("self distance is zero") {
    CHECK(lexical_distance(g.vectors[0], g.vectors[0]).value == 0.0);
  }
  SUBCASE("content distance is strictly monotone in lattice distance") {
    // group max/min content distance by lattice distance from node 0
    const int horizon = 2 * (8 / 2);  // D * window
    std::vector<double> max_r(horizon + 1, -1), min_r(horizon + 1, 1e300);
    for (int32_t v = 0; v < g.num_nodes(); ++v) {
      const int d = g.lattice_distance(0, v);
      const auto r = lexical_distance(g.vectors[0], g.vectors[v]);
      if (d == horizon) {
        CHECK(r.is_infinite());  // antipodal nodes share no terms
        continue;
      }
      CHECK(!r.is_infinite());
      max_r[d] = std::max(max_r[d], r.value);
      min_r[d] = std::min(min_r[d], r.value);
    }
    for (int d = 1; d < horizon; ++d) {
      CHECK(max_r[d - 1] < min_r[d]);  // every closer node beats every farther one
    }
  }
  SUBCASE("adjacent nodes are closer than two-step nodes") {
    const auto r1 = lexical_distance(g.vectors[0], g.vectors[g.out[0][0]]);
    int32_t two_away = -1;
    for (int32_t v = 0; v < g.num_nodes(); ++v)
      if (g.lattice_distance(0, v) == 2) two_away = v;
    const auto r2 = lexical_distance(g.vectors[0], g.vectors[two_away]);
    CHECK(r1.value < r2.value);
  }
  SUBCASE("vocab_block validation") {
    CHECK_THROWS_AS(generate_lexical_graph(config, 1), std::invalid_argument);
  }
}

TEST_CASE("preferential attachment mixture") {
  SUBCASE("forced choice set at N = m+2") {
    const auto g = generate_pa_mixture({5, 3, 0.0, 12, 3});
    const auto& links = g.out[4];
    REQUIRE(links.size() == 3);
    const std::set<int32_t> distinct(links.begin(), links.end());
    CHECK(distinct.size() == 3);
    for (int32_t v : links) CHECK(v < 4);
  }
  SUBCASE("link count and sanity invariants") {
    const PaMixConfig config{400, 3, 1.5, 30, 11};
    const auto g = generate_pa_mixture(config);
    int64_t total = 0;
    for (int32_t u = 0; u < g.num_nodes(); ++u) {
      const auto& links = g.out[u];
      total += static_cast<int64_t>(links.size());
      const std::set<int32_t> distinct(links.begin(), links.end());
      CHECK(distinct.size() == links.size());  // no duplicates within a round
      CHECK(!distinct.contains(u));
      CHECK(!g.vectors[u].empty());
    }
    // clique links + m per later node
    CHECK(total == 4 * 3 + 3 * (400 - 4));
  }
  SUBCASE("pure degree bias yields a heavy-tailed in-degree") {
    const auto g = generate_pa_mixture({10000, 2, 0.0, 48, 21});
    std::vector<double> indeg(g.in_degree.begin(), g.in_degree.end());
    const double mx = *std::max_element(indeg.begin(), indeg.end());
    CHECK(mx >= 10.0 * std::max(1.0, median(indeg)));
  }
  SUBCASE("strong lexical bias links content-similar pages") {
    const PaMixConfig config{1500, 2, 8.0, 24, 31};
    const auto g = generate_pa_mixture(config);
    auto finite_mean = [&](auto&& pairs) {
      double sum = 0;
      int64_t n = 0;
      for (const auto& [a, b] : pairs) {
        const auto r = lexical_distance(g.vectors[a], g.vectors[b]);
        if (!r.is_infinite()) {
          sum += r.value;
          ++n;
        }
      }
      REQUIRE(n > 0);
      return sum / static_cast<double>(n);
    };
    std::vector<std::pair<int32_t, int32_t>> linked, random;
    for (int32_t u = 0; u < g.num_nodes(); ++u)
      for (int32_t v : g.out[u]) linked.emplace_back(u, v);
    Rng rng(99);
    for (int i = 0; i < 4000; ++i) {
      const auto a = static_cast<int32_t>(rng.below(g.num_nodes()));
      auto b = static_cast<int32_t>(rng.below(g.num_nodes() - 1));
      if (b >= a) ++b;
      random.emplace_back(a, b);
    }
    CHECK(finite_mean(linked) < finite_mean(random));
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(generate_pa_mixture({3, 3, 0.0, 8, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_pa_mixture({10, 0, 0.0, 8, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_pa_mixture({10, 2, -1.0, 8, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_pa_mixture({10, 2, 0.0, 0, 1}), std::invalid_argument);
  }
}

TEST_CASE("graph text format round-trips losslessly") {
  const LatticeConfig lattice{2, 5, 1.5, 2, 13};
  for (const auto& g :
       {generate_kleinberg_lattice(lattice), generate_lexical_graph({1, 7, 0.5, 1, 8}, 2),
        generate_pa_mixture({30, 2, 1.0, 12, 77})}) {
    const auto text = graph_to_text(g);
    const auto back = graph_from_text(text, "roundtrip");
    CHECK(same_graph(g, back));
    CHECK(graph_to_text(back) == text);
  }
}

TEST_CASE("graph parsing rejects malformed input") {
  const auto g = generate_kleinberg_lattice({1, 5, 0.0, 0, 1});
  std::string text = graph_to_text(g);

  CHECK_THROWS_AS(graph_from_text("", "t"), std::runtime_error);
  CHECK_THROWS_AS(graph_from_text("BOGUS 1 5 0 0 1 5\n", "t"), std::runtime_error);

  // self-loop
  std::string bad = "LATTICE 1 5 0 0 1 5\n";
  for (int i = 0; i < 5; ++i)
    bad += std::to_string(i) + "\t" + std::to_string(i) + "\t" + std::to_string(i) + "\n";
  CHECK_THROWS_WITH_AS(graph_from_text(bad, "t"), doctest::Contains("self-loop"),
                       std::runtime_error);

  // out-of-range outlink
  std::string oor = "LATTICE 1 3 0 0 1 3\n0\t0\t9\n1\t1\t\n2\t2\t\n";
  CHECK_THROWS_WITH_AS(graph_from_text(oor, "t"), doctest::Contains("out of range"),
                       std::runtime_error);

  // truncated node list
  std::string trunc = "LATTICE 1 3 0 0 1 3\n0\t0\t\n";
  CHECK_THROWS_AS(graph_from_text(trunc, "t"), std::runtime_error);
}
