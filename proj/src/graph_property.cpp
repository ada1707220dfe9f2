#include "bftk/graph_property.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bftk/measures.hpp"
#include "bftk/polynomial.hpp"
#include "bftk/spectral.hpp"

namespace bftk {

int edge_index(int vertices, int i, int j) {
  if (i < 1 || j <= i || j > vertices)
    throw std::invalid_argument("edge endpoints need 1 <= i < j <= n");
  int base = 0;
  for (int k = 1; k < i; ++k) base += vertices - k;
  return base + (j - i) - 1;
}

namespace {

int edge_count(int vertices) { return vertices * (vertices - 1) / 2; }

bool has_edge(uint32_t x, int vertices, int i, int j) {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return (x >> edge_index(vertices, i, j)) & 1;
}

bool graph_connected(uint32_t x, int n) {
  std::vector<int> stack{1};
  uint32_t seen = 1u << 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u = 1; u <= n; ++u) {
      if ((seen >> u) & 1) continue;
      if (has_edge(x, n, v, u)) {
        seen |= 1u << u;
        stack.push_back(u);
      }
    }
  }
  return std::popcount(seen) == n;
}

bool graph_contains_triangle(uint32_t x, int n) {
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        if (has_edge(x, n, i, j) && has_edge(x, n, j, k) &&
            has_edge(x, n, i, k))
          return true;
  return false;
}

bool graph_min_degree_1(uint32_t x, int n) {
  for (int i = 1; i <= n; ++i) {
    bool touched = false;
    for (int j = 1; j <= n && !touched; ++j) touched = has_edge(x, n, i, j);
    if (!touched) return false;
  }
  return true;
}

bool graph_spanning_star(uint32_t x, int n) {
  for (int i = 1; i <= n; ++i) {
    bool star = true;
    for (int j = 1; j <= n && star; ++j)
      if (j != i) star = has_edge(x, n, i, j);
    if (star) return true;
  }
  return false;
}

}  // namespace

GraphProperty make_graph_property(std::string_view name, int vertices) {
  if (vertices < 2 || vertices > kGraphPropertyMaxVertices)
    throw std::invalid_argument("vertex count must be in [2, 5]");
  int m = edge_count(vertices);
  GraphProperty p;
  p.name = std::string(name);
  p.vertices = vertices;
  p.table = TruthTable(m);
  auto fill = [&](auto&& pred) {
    for (uint64_t x = 0; x < p.table.size(); ++x)
      p.table.set(x, pred(uint32_t(x), vertices));
  };
  if (name == "contains-edge")
    fill([](uint32_t x, int) { return x != 0; });
  else if (name == "contains-triangle")
    fill(graph_contains_triangle);
  else if (name == "connected")
    fill(graph_connected);
  else if (name == "min-degree-1")
    fill(graph_min_degree_1);
  else if (name == "spanning-star")
    fill(graph_spanning_star);
  else if (name == "edge-parity")
    fill([](uint32_t x, int) { return std::popcount(x) & 1; });
  else
    throw std::invalid_argument("unknown graph property '" +
                                std::string(name) + "'");
  return p;
}

std::vector<std::string> graph_property_names() {
  return {"contains-edge", "contains-triangle", "connected",
          "min-degree-1",  "spanning-star",     "edge-parity"};
}

uint32_t permute_edge_input(int vertices, const std::vector<int>& perm,
                            uint32_t x) {
  uint32_t y = 0;
  for (int i = 1; i <= vertices; ++i)
    for (int j = i + 1; j <= vertices; ++j) {
      if (!((x >> edge_index(vertices, i, j)) & 1)) continue;
      int pi = perm[i - 1] + 1, pj = perm[j - 1] + 1;
      if (pi > pj) std::swap(pi, pj);
      y |= uint32_t{1} << edge_index(vertices, pi, pj);
    }
  return y;
}

GraphPropertyFlags check_graph_property(const GraphProperty& p) {
  GraphPropertyFlags flags;
  int n = p.vertices;
  std::vector<int> transposition(n), cycle(n);
  std::iota(transposition.begin(), transposition.end(), 0);
  std::swap(transposition[0], transposition[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;

  flags.invariant = true;
  for (uint64_t x = 0; x < p.table.size() && flags.invariant; ++x) {
    uint32_t xt = permute_edge_input(n, transposition, uint32_t(x));
    uint32_t xc = permute_edge_input(n, cycle, uint32_t(x));
    flags.invariant = p.table.value(x) == p.table.value(xt) &&
                      p.table.value(x) == p.table.value(xc);
  }

  flags.monotone = true;
  int m = p.table.arity();
  for (uint64_t x = 0; x < p.table.size() && flags.monotone; ++x)
    for (int i = 0; i < m; ++i) {
      uint64_t y = x | (uint64_t{1} << i);
      if (y != x && p.table.value(x) > p.table.value(y)) {
        flags.monotone = false;
        break;
      }
    }

  flags.nontrivial = !p.table.is_constant();
  return flags;
}

GraphPropertyReport graph_property_report(const GraphProperty& p) {
  GraphPropertyReport rep;
  rep.flags = check_graph_property(p);
  rep.edge_variables = p.table.arity();
  rep.deg = degree(p.table);
  rep.deg2 = degree_gf2(p.table);
  rep.lambda = spectral_sensitivity(p.table).lambda;
  rep.s = sensitivity(p.table).s;
  if (rep.edge_variables <= kBlockSensitivityMaxArity)
    rep.bs = block_sensitivity(p.table).bs;
  if (rep.edge_variables <= kCertificateMaxArity)
    rep.c = certificate_complexity(p.table).c;
  if (rep.edge_variables <= kDecisionTreeMaxArity)
    rep.d = det_query_complexity(p.table);
  rep.q_lower_proxy = std::sqrt(double(rep.deg2));
  return rep;
}

}  // namespace bftk
