#include "bftk/graph_property.hpp"

#include <cmath>
#include <numeric>

#include "bftk/polynomial.hpp"
#include "bftk/rng.hpp"
#include "bftk/spectral.hpp"
#include "doctest.h"

TEST_CASE("edge indexing is the documented row-major upper triangle") {
  CHECK(bftk::edge_index(4, 1, 2) == 0);
  CHECK(bftk::edge_index(4, 1, 3) == 1);
  CHECK(bftk::edge_index(4, 1, 4) == 2);
  CHECK(bftk::edge_index(4, 2, 3) == 3);
  CHECK(bftk::edge_index(4, 2, 4) == 4);
  CHECK(bftk::edge_index(4, 3, 4) == 5);
  CHECK_THROWS(bftk::edge_index(4, 2, 2));
  CHECK_THROWS(bftk::edge_index(4, 0, 1));
}

TEST_CASE("contains-edge is OR on the edge variables") {
  auto p = bftk::make_graph_property("contains-edge", 4);
  CHECK(p.table == bftk::from_family("or", std::vector<int>{6}));
  auto flags = bftk::check_graph_property(p);
  CHECK(flags.invariant);
  CHECK(flags.monotone);
  CHECK(flags.nontrivial);
}

TEST_CASE("connectivity flags") {
  auto p = bftk::make_graph_property("connected", 4);
  auto flags = bftk::check_graph_property(p);
  CHECK(flags.invariant);
  CHECK(flags.monotone);
  CHECK(flags.nontrivial);
  // Spot values: the empty graph is disconnected, the complete one is not.
  CHECK(!p.table.value(0));
  CHECK(p.table.value(p.table.size() - 1));
  // A spanning path 1-2-3-4 is connected.
  uint32_t path = 0;
  path |= 1u << bftk::edge_index(4, 1, 2);
  path |= 1u << bftk::edge_index(4, 2, 3);
  path |= 1u << bftk::edge_index(4, 3, 4);
  CHECK(p.table.value(path));
}

TEST_CASE("edge parity is invariant and nontrivial but not monotone") {
  auto p = bftk::make_graph_property("edge-parity", 4);
  auto flags = bftk::check_graph_property(p);
  CHECK(flags.invariant);
  CHECK(!flags.monotone);
  CHECK(flags.nontrivial);
}

TEST_CASE("all registered properties are invariant under random permutations") {
  bftk::SplitMix64 gen(9);
  for (const auto& name : bftk::graph_property_names()) {
    for (int vertices : {3, 4}) {
      auto p = bftk::make_graph_property(name, vertices);
      std::vector<int> perm(vertices);
      std::iota(perm.begin(), perm.end(), 0);
      for (int trial = 0; trial < 50; ++trial) {
        for (int i = vertices - 1; i > 0; --i)
          std::swap(perm[i], perm[gen.below(uint64_t(i) + 1)]);
        for (uint64_t x = 0; x < p.table.size(); ++x) {
          uint32_t y = bftk::permute_edge_input(vertices, perm, uint32_t(x));
          CHECK(p.table.value(x) == p.table.value(y));
        }
      }
    }
  }
}

TEST_CASE("contains-edge on 3 vertices reports the OR_3 measures") {
  auto rep = bftk::graph_property_report(bftk::make_graph_property("contains-edge", 3));
  CHECK(rep.edge_variables == 3);
  CHECK(rep.deg2 == 3);
  CHECK(rep.deg == 3);
  CHECK(std::fabs(rep.lambda - std::sqrt(3.0)) < 1e-8);
  CHECK(rep.q_lower_proxy == doctest::Approx(std::sqrt(3.0)));
  REQUIRE(rep.d.has_value());
  CHECK(*rep.d == 3);
}

TEST_CASE("contains-triangle on 4 vertices respects the degree chain") {
  auto rep =
      bftk::graph_property_report(bftk::make_graph_property("contains-triangle", 4));
  CHECK(rep.deg2 <= rep.deg);
  CHECK(rep.lambda * rep.lambda >= rep.deg - 1e-6);
  CHECK(rep.flags.monotone);
  CHECK(rep.flags.nontrivial);
}

TEST_CASE("monotone nontrivial properties satisfy the spectral chain") {
  for (const auto& name : bftk::graph_property_names()) {
    if (name == "edge-parity") continue;
    for (int vertices : {3, 4}) {
      auto rep = bftk::graph_property_report(bftk::make_graph_property(name, vertices));
      CHECK(rep.flags.invariant);
      CHECK(rep.flags.monotone);
      CHECK(rep.flags.nontrivial);
      CHECK(rep.lambda * rep.lambda >= double(rep.deg) - 1e-6);
      CHECK(rep.deg >= rep.deg2);
    }
  }
}

TEST_CASE("five-vertex properties stay within the reduced measure set") {
  auto rep = bftk::graph_property_report(bftk::make_graph_property("connected", 5));
  CHECK(rep.edge_variables == 10);
  CHECK(!rep.bs.has_value());
  CHECK(!rep.d.has_value());
  CHECK(rep.deg >= rep.deg2);
  CHECK(rep.lambda > 0.0);
  CHECK_THROWS((void)bftk::make_graph_property("connected", 6));
  CHECK_THROWS((void)bftk::make_graph_property("nosuch", 4));
}
