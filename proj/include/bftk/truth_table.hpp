#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bftk {

/// Packed evaluation table of a total Boolean function on n bits.
///
/// Input strings are identified with integers: variable i (1-based) is bit
/// i-1 of the index, so x = sum_i x_i * 2^(i-1). Bit x of the table is f(x).
class TruthTable {
public:
  static constexpr int kMaxArity = 24;

  explicit TruthTable(int n, bool fill = false);

  int arity() const { return n_; }
  uint64_t size() const { return uint64_t{1} << n_; }

  bool value(uint64_t x) const {
    return (words_[x >> 6] >> (x & 63)) & 1;
  }
  void set(uint64_t x, bool v) {
    if (v)
      words_[x >> 6] |= uint64_t{1} << (x & 63);
    else
      words_[x >> 6] &= ~(uint64_t{1} << (x & 63));
  }
  void flip(uint64_t x) { words_[x >> 6] ^= uint64_t{1} << (x & 63); }

  bool is_constant() const;
  uint64_t ones_count() const;
  TruthTable complement() const;

  std::span<const uint64_t> words() const { return words_; }

  /// Fill the table from the low 2^n bits of an integer (n <= 6).
  static TruthTable from_bits(int n, uint64_t bits);
  uint64_t to_bits() const;  // n <= 6

  /// Text form "tt:<n>:<hex>" where the hex integer has bit x = f(x).
  static TruthTable parse(std::string_view spec);
  std::string to_spec() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
  int n_;
  std::vector<uint64_t> words_;
};

/// Subfunction obtained by fixing the listed variables (1-based index) to
/// the given bit values. Free variables keep their relative order.
TruthTable restrict_table(const TruthTable& f,
                          const std::vector<std::pair<int, int>>& assignment);

/// Block composition f(g, ..., g) on arity(f)*arity(g) bits; block i of the
/// input feeds copy i of g, block i = variables (i-1)m+1 .. im.
TruthTable compose(const TruthTable& f, const TruthTable& g);

/// Named function families ("fam:<name>:<p1,p2,...>").
///
/// Registered: or, and, parity, andor (k,m), nandtree (depth), hw1, xoror,
/// const (n, value).
TruthTable from_family(std::string_view name, std::span<const int> params);
std::vector<std::string> family_names();

}  // namespace bftk
