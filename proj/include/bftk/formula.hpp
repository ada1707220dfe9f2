#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bftk/truth_table.hpp"

namespace bftk {

/// AST of a De Morgan formula. Nodes live in a pool; children of AND/OR
/// groups keep source order. Variables are 1-based.
struct FormulaAst {
  enum class Kind { kVar, kNot, kAnd, kOr };
  struct Node {
    Kind kind;
    int var = 0;                    // kVar only
    std::vector<size_t> children;   // kNot: 1, kAnd/kOr: >= 2
  };
  std::vector<Node> nodes;
  size_t root = 0;

  int leaf_count() const;
  std::vector<int> variables() const;  // leaf variables, left-to-right
};

struct FormulaError : std::invalid_argument {
  FormulaError(const std::string& message, size_t position)
      : std::invalid_argument(message + " at position " +
                              std::to_string(position)),
        position(position) {}
  size_t position;
};

/// Grammar: formula := var | '~' formula | '(' formula (op formula)+ ')'
/// with a single operator kind ('&' or '|') per parenthesised group and
/// variables written x<digits>. Whitespace is ignored. The read-once
/// condition (no variable twice) is enforced.
FormulaAst parse_formula(std::string_view text);

std::string print_formula(const FormulaAst& ast);

/// Renumbers variables to {1..n} in left-to-right leaf order.
FormulaAst normalize(const FormulaAst& ast);

/// Evaluation table of the normalized formula; n <= 24.
TruthTable formula_to_table(const FormulaAst& ast);

/// deg(f) = n for every read-once formula; checks the Moebius degree of the
/// table against the leaf count. n <= 12.
bool readonce_degree_check(const FormulaAst& ast);

struct AdegWindowReport {
  int n = 0;
  int adeg = 0;
  double lower_bracket = 0.0;  // sqrt(n)/3 at eps = 1/3
  double sqrt_n = 0.0;
  bool lower_ok = false;
};

/// Reports adeg_eps against the sqrt(n) window; asserts only the derivable
/// lower bracket adeg >= sqrt(deg)/3 = sqrt(n)/3. n <= 5 (LP cap).
AdegWindowReport readonce_adeg_window(const FormulaAst& ast, double epsilon);

/// Seeded random read-once formula on n variables (normalized by
/// construction), for sampling campaigns.
FormulaAst random_readonce(int n, uint64_t seed);

}  // namespace bftk
