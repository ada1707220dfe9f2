#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bftk/truth_table.hpp"

namespace bftk {

inline constexpr int kGraphPropertyMaxVertices = 5;

/// Boolean function of the C(n,2) adjacency-matrix bits of an n-vertex
/// simple graph. Edge {i,j} (1 <= i < j <= n) sits at position
/// sum_{k<i}(n-k) + (j-i) - 1, zero-based.
struct GraphProperty {
  std::string name;
  int vertices = 0;
  TruthTable table{1};
};

int edge_index(int vertices, int i, int j);

/// Registered properties: contains-edge, contains-triangle, connected,
/// min-degree-1, spanning-star (all monotone), edge-parity (not monotone).
GraphProperty make_graph_property(std::string_view name, int vertices);
std::vector<std::string> graph_property_names();

/// Input restated under a vertex permutation: bit {i,j} moves to
/// {perm(i), perm(j)}. perm is 0-based of length `vertices`.
uint32_t permute_edge_input(int vertices, const std::vector<int>& perm,
                            uint32_t x);

struct GraphPropertyFlags {
  bool invariant = false;  // under the transposition (1 2) and the n-cycle
  bool monotone = false;
  bool nontrivial = false;
};

GraphPropertyFlags check_graph_property(const GraphProperty& p);

struct GraphPropertyReport {
  GraphPropertyFlags flags;
  int edge_variables = 0;
  int deg = 0, deg2 = 0;
  double lambda = 0.0;
  int s = 0;
  std::optional<int> bs, c, d;   // only within the per-measure caps
  double q_lower_proxy = 0.0;    // sqrt(deg2), the spectral route lower bound
};

GraphPropertyReport graph_property_report(const GraphProperty& p);

}  // namespace bftk
