#include "bftk/formula.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bftk/approx.hpp"
#include "bftk/polynomial.hpp"
#include "bftk/rng.hpp"

namespace bftk {

namespace {

void collect_leaves(const FormulaAst& ast, size_t node, std::vector<int>* out) {
  const auto& nd = ast.nodes[node];
  if (nd.kind == FormulaAst::Kind::kVar) {
    out->push_back(nd.var);
    return;
  }
  for (size_t c : nd.children) collect_leaves(ast, c, out);
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaAst parse() {
    skip_space();
    if (pos_ >= text_.size()) throw FormulaError("empty formula", 0);
    ast_.root = parse_formula();
    skip_space();
    if (pos_ < text_.size())
      throw FormulaError("trailing input after formula", pos_);
    // Read-once: every variable appears in exactly one leaf.
    std::vector<int> vars;
    collect_leaves(ast_, ast_.root, &vars);
    std::vector<int> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1])
        throw std::invalid_argument("variable x" + std::to_string(sorted[i]) +
                                    " appears more than once");
    return std::move(ast_);
  }

private:
  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  size_t parse_formula() {
    skip_space();
    if (pos_ >= text_.size()) throw FormulaError("expected a formula", pos_);
    char c = text_[pos_];
    if (c == '~') {
      ++pos_;
      size_t child = parse_formula();
      ast_.nodes.push_back({FormulaAst::Kind::kNot, 0, {child}});
      return ast_.nodes.size() - 1;
    }
    if (c == '(') return parse_group();
    if (c == 'x') return parse_var();
    throw FormulaError(std::string("unexpected character '") + c + "'", pos_);
  }

  size_t parse_var() {
    size_t start = pos_++;
    size_t digits = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
      ++pos_;
    if (digits == pos_)
      throw FormulaError("variable needs an index after 'x'", start);
    int var = 0;
    for (size_t i = digits; i < pos_; ++i) {
      var = var * 10 + (text_[i] - '0');
      if (var > 1'000'000) throw FormulaError("variable index too large", start);
    }
    if (var == 0) throw FormulaError("variable indices start at 1", start);
    ast_.nodes.push_back({FormulaAst::Kind::kVar, var, {}});
    return ast_.nodes.size() - 1;
  }

  size_t parse_group() {
    size_t open = pos_++;
    std::vector<size_t> children;
    children.push_back(parse_formula());
    skip_space();
    if (pos_ >= text_.size() || (text_[pos_] != '&' && text_[pos_] != '|'))
      throw FormulaError("group needs at least one '&' or '|'",
                         pos_ < text_.size() ? pos_ : open);
    char op = text_[pos_];
    while (true) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (pos_ >= text_.size()) throw FormulaError("unclosed '('", open);
      if (text_[pos_] != op) {
        if (text_[pos_] == '&' || text_[pos_] == '|')
          throw FormulaError("mixed operators in one group", pos_);
        throw FormulaError(std::string("expected '") + op + "' or ')'", pos_);
      }
      ++pos_;
      children.push_back(parse_formula());
    }
    ast_.nodes.push_back({op == '&' ? FormulaAst::Kind::kAnd
                                    : FormulaAst::Kind::kOr,
                          0, std::move(children)});
    return ast_.nodes.size() - 1;
  }

  std::string_view text_;
  size_t pos_ = 0;
  FormulaAst ast_;
};

void print_node(const FormulaAst& ast, size_t node, std::string* out) {
  const auto& nd = ast.nodes[node];
  switch (nd.kind) {
    case FormulaAst::Kind::kVar:
      *out += "x" + std::to_string(nd.var);
      break;
    case FormulaAst::Kind::kNot:
      *out += "~";
      print_node(ast, nd.children[0], out);
      break;
    case FormulaAst::Kind::kAnd:
    case FormulaAst::Kind::kOr: {
      char op = nd.kind == FormulaAst::Kind::kAnd ? '&' : '|';
      *out += "(";
      for (size_t i = 0; i < nd.children.size(); ++i) {
        if (i) *out += op;
        print_node(ast, nd.children[i], out);
      }
      *out += ")";
      break;
    }
  }
}

bool eval_node(const FormulaAst& ast, size_t node, uint64_t x) {
  const auto& nd = ast.nodes[node];
  switch (nd.kind) {
    case FormulaAst::Kind::kVar:
      return (x >> (nd.var - 1)) & 1;
    case FormulaAst::Kind::kNot:
      return !eval_node(ast, nd.children[0], x);
    case FormulaAst::Kind::kAnd:
      for (size_t c : nd.children)
        if (!eval_node(ast, c, x)) return false;
      return true;
    case FormulaAst::Kind::kOr:
      for (size_t c : nd.children)
        if (eval_node(ast, c, x)) return true;
      return false;
  }
  return false;
}

}  // namespace

int FormulaAst::leaf_count() const {
  std::vector<int> vars;
  collect_leaves(*this, root, &vars);
  return int(vars.size());
}

std::vector<int> FormulaAst::variables() const {
  std::vector<int> vars;
  collect_leaves(*this, root, &vars);
  return vars;
}

FormulaAst parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string print_formula(const FormulaAst& ast) {
  std::string out;
  print_node(ast, ast.root, &out);
  return out;
}

FormulaAst normalize(const FormulaAst& ast) {
  // Left-to-right leaf order, not value order.
  std::map<int, int> renumber;
  int next = 1;
  for (int v : ast.variables()) renumber[v] = next++;
  FormulaAst out = ast;
  for (auto& nd : out.nodes)
    if (nd.kind == FormulaAst::Kind::kVar) nd.var = renumber[nd.var];
  return out;
}

TruthTable formula_to_table(const FormulaAst& ast) {
  FormulaAst norm = normalize(ast);
  int n = norm.leaf_count();
  if (n > TruthTable::kMaxArity)
    throw std::invalid_argument("formula has more than 24 variables");
  TruthTable f(n);
  for (uint64_t x = 0; x < f.size(); ++x)
    f.set(x, eval_node(norm, norm.root, x));
  return f;
}

bool readonce_degree_check(const FormulaAst& ast) {
  if (ast.leaf_count() > 12)
    throw std::invalid_argument("degree check supports up to 12 leaves");
  return degree(formula_to_table(ast)) == ast.leaf_count();
}

AdegWindowReport readonce_adeg_window(const FormulaAst& ast, double epsilon) {
  AdegWindowReport rep;
  rep.n = ast.leaf_count();
  TruthTable f = formula_to_table(ast);
  rep.adeg = approx_degree(f, epsilon).degree;
  rep.sqrt_n = std::sqrt(double(rep.n));
  rep.lower_bracket = rep.sqrt_n / 3.0;
  rep.lower_ok = double(rep.adeg) >= rep.lower_bracket - 1e-9;
  return rep;
}

namespace {

size_t random_subtree(FormulaAst* ast, int leaves, int* next_var,
                      SplitMix64* rng, bool allow_not) {
  if (leaves == 1) {
    ast->nodes.push_back({FormulaAst::Kind::kVar, (*next_var)++, {}});
    size_t node = ast->nodes.size() - 1;
    if (allow_not && rng->next() % 4 == 0) {
      ast->nodes.push_back({FormulaAst::Kind::kNot, 0, {node}});
      node = ast->nodes.size() - 1;
    }
    return node;
  }
  int max_fanin = std::min(leaves, 4);
  int fanin = 2 + int(rng->next() % uint64_t(max_fanin - 1));
  // Split the leaf budget into fanin positive parts.
  std::vector<int> parts(fanin, 1);
  for (int extra = leaves - fanin; extra > 0; --extra)
    ++parts[rng->next() % uint64_t(fanin)];
  std::vector<size_t> children;
  for (int part : parts)
    children.push_back(random_subtree(ast, part, next_var, rng, true));
  bool is_and = rng->next() % 2 == 0;
  ast->nodes.push_back({is_and ? FormulaAst::Kind::kAnd : FormulaAst::Kind::kOr,
                        0, std::move(children)});
  return ast->nodes.size() - 1;
}

}  // namespace

FormulaAst random_readonce(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one variable");
  SplitMix64 rng(seed);
  FormulaAst ast;
  int next_var = 1;
  ast.root = random_subtree(&ast, n, &next_var, &rng, true);
  return ast;
}

}  // namespace bftk
