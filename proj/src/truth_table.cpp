#include "bftk/truth_table.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>

namespace bftk {

namespace {

uint64_t table_words(int n) {
  uint64_t bits = uint64_t{1} << n;
  return (bits + 63) >> 6;
}

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("invalid ") + what + ": '" +
                                std::string(s) + "'");
  return v;
}

}  // namespace

TruthTable::TruthTable(int n, bool fill) : n_(n) {
  if (n < 1 || n > kMaxArity)
    throw std::invalid_argument("truth table arity must be in [1, 24], got " +
                                std::to_string(n));
  words_.assign(table_words(n), fill ? ~uint64_t{0} : 0);
  if (fill && n_ < 6) words_[0] &= (uint64_t{1} << size()) - 1;
}

bool TruthTable::is_constant() const {
  uint64_t c = ones_count();
  return c == 0 || c == size();
}

uint64_t TruthTable::ones_count() const {
  uint64_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

TruthTable TruthTable::complement() const {
  TruthTable g(n_);
  for (size_t i = 0; i < words_.size(); ++i) g.words_[i] = ~words_[i];
  if (n_ < 6) g.words_[0] &= (uint64_t{1} << size()) - 1;
  return g;
}

TruthTable TruthTable::from_bits(int n, uint64_t bits) {
  if (n > 6) throw std::invalid_argument("from_bits supports n <= 6");
  TruthTable f(n);
  f.words_[0] = n == 6 ? bits : bits & ((uint64_t{1} << f.size()) - 1);
  return f;
}

uint64_t TruthTable::to_bits() const {
  if (n_ > 6) throw std::logic_error("to_bits supports n <= 6");
  return words_[0];
}

TruthTable TruthTable::parse(std::string_view spec) {
  if (spec.substr(0, 3) != "tt:")
    throw std::invalid_argument("expected 'tt:<n>:<hex>'");
  spec.remove_prefix(3);
  size_t colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("expected 'tt:<n>:<hex>'");
  int n = parse_int(spec.substr(0, colon), "arity");
  std::string_view hex = spec.substr(colon + 1);
  if (hex.empty()) throw std::invalid_argument("empty truth table hex");

  TruthTable f(n);
  uint64_t bit_len = uint64_t{1} << n;
  // Hex digits are most-significant-first; bit x of the value is f(x).
  // Leading zero digits beyond 2^n bits are accepted.
  uint64_t pos = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, pos += 4) {
    char c = *it;
    int v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
    uint64_t remaining = pos < bit_len ? bit_len - pos : 0;
    if (remaining < 4 && uint64_t(v) >> remaining)
      throw std::invalid_argument("hex value exceeds 2^n bits");
    if (remaining == 0) continue;
    f.words_[pos >> 6] |= uint64_t(v) << (pos & 63);
  }
  return f;
}

std::string TruthTable::to_spec() const {
  static const char* digits = "0123456789abcdef";
  uint64_t nibbles = (size() + 3) >> 2;
  std::string hex;
  hex.reserve(nibbles);
  bool leading = true;
  for (uint64_t i = nibbles; i-- > 0;) {
    int v = int((words_[(i * 4) >> 6] >> ((i * 4) & 63)) & 0xf);
    if (leading && v == 0 && i > 0) continue;
    leading = false;
    hex.push_back(digits[v]);
  }
  return "tt:" + std::to_string(n_) + ":" + hex;
}

TruthTable restrict_table(const TruthTable& f,
                          const std::vector<std::pair<int, int>>& assignment) {
  int n = f.arity();
  uint32_t fixed_mask = 0, fixed_bits = 0;
  for (auto [var, val] : assignment) {
    if (var < 1 || var > n)
      throw std::invalid_argument("restriction index out of range: x" +
                                  std::to_string(var));
    uint32_t bit = uint32_t{1} << (var - 1);
    if (fixed_mask & bit)
      throw std::invalid_argument("duplicate restriction index: x" +
                                  std::to_string(var));
    fixed_mask |= bit;
    if (val) fixed_bits |= bit;
  }
  int m = n - int(assignment.size());
  if (m < 1)
    throw std::invalid_argument("restriction must leave at least one variable");

  // Positions of free variables, ascending.
  std::vector<int> free_vars;
  for (int i = 0; i < n; ++i)
    if (!(fixed_mask & (uint32_t{1} << i))) free_vars.push_back(i);

  TruthTable g(m);
  for (uint64_t y = 0; y < g.size(); ++y) {
    uint64_t x = fixed_bits;
    for (int j = 0; j < m; ++j)
      if ((y >> j) & 1) x |= uint64_t{1} << free_vars[j];
    g.set(y, f.value(x));
  }
  return g;
}

TruthTable compose(const TruthTable& f, const TruthTable& g) {
  int n = f.arity(), m = g.arity();
  if (n * m > TruthTable::kMaxArity)
    throw std::invalid_argument("composed arity " + std::to_string(n * m) +
                                " exceeds 24");
  TruthTable h(n * m);
  uint64_t block_mask = (uint64_t{1} << m) - 1;
  for (uint64_t x = 0; x < h.size(); ++x) {
    uint64_t inner = 0;
    for (int i = 0; i < n; ++i)
      inner |= uint64_t{g.value((x >> (i * m)) & block_mask)} << i;
    h.set(x, f.value(inner));
  }
  return h;
}

namespace {

TruthTable make_or(int n) {
  TruthTable f(n, true);
  f.set(0, false);
  return f;
}

TruthTable make_and(int n) {
  TruthTable f(n);
  f.set(f.size() - 1, true);
  return f;
}

TruthTable make_parity(int n) {
  TruthTable f(n);
  for (uint64_t x = 0; x < f.size(); ++x)
    f.set(x, std::popcount(x) & 1);
  return f;
}

TruthTable make_nand_tree(int depth) {
  // Balanced binary NAND tree; depth d has 2^d leaves.
  if (depth < 1 || depth > 4)
    throw std::invalid_argument("nandtree depth must be in [1, 4]");
  TruthTable nand2 = make_and(2).complement();
  TruthTable f = nand2;
  for (int d = 1; d < depth; ++d) f = compose(f, nand2);
  return f;
}

TruthTable make_hw1(int n) {
  TruthTable f(n);
  for (uint64_t x = 0; x < f.size(); ++x)
    f.set(x, std::popcount(x) == 1);
  return f;
}

TruthTable make_xor_or(int n) {
  // x1 XOR OR(x2, ..., xn); fully sensitive on both sides.
  if (n < 2) throw std::invalid_argument("xoror needs n >= 2");
  TruthTable f(n);
  for (uint64_t x = 0; x < f.size(); ++x) {
    bool rest = (x >> 1) != 0;
    f.set(x, bool(x & 1) != rest);
  }
  return f;
}

void expect_params(std::span<const int> params, size_t count,
                   std::string_view name) {
  if (params.size() != count)
    throw std::invalid_argument("family '" + std::string(name) + "' expects " +
                                std::to_string(count) + " parameter(s)");
}

}  // namespace

TruthTable from_family(std::string_view name, std::span<const int> params) {
  auto arity1 = [&]() {
    expect_params(params, 1, name);
    return params[0];
  };
  if (name == "or") return make_or(arity1());
  if (name == "and") return make_and(arity1());
  if (name == "parity") return make_parity(arity1());
  if (name == "hw1") return make_hw1(arity1());
  if (name == "xoror") return make_xor_or(arity1());
  if (name == "nandtree") return make_nand_tree(arity1());
  if (name == "andor") {
    expect_params(params, 2, name);
    return compose(make_and(params[0]), make_or(params[1]));
  }
  if (name == "const") {
    expect_params(params, 2, name);
    if (params[1] != 0 && params[1] != 1)
      throw std::invalid_argument("const value must be 0 or 1");
    return TruthTable(params[0], params[1] == 1);
  }
  throw std::invalid_argument("unknown function family '" + std::string(name) +
                              "'");
}

std::vector<std::string> family_names() {
  return {"or", "and", "parity", "andor", "nandtree", "hw1", "xoror", "const"};
}

}  // namespace bftk
