#include "bftk/measures.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "bftk/polynomial.hpp"

namespace bftk {

SensitivityProfile sensitivity(const TruthTable& f) {
  SensitivityProfile p;
  p.n = f.arity();
  p.per_input.resize(f.size());
  uint64_t total = 0;
  for (uint64_t x = 0; x < f.size(); ++x) {
    int sx = 0;
    bool fx = f.value(x);
    for (int i = 0; i < p.n; ++i)
      if (f.value(x ^ (uint64_t{1} << i)) != fx) ++sx;
    p.per_input[x] = sx;
    total += sx;
    (fx ? p.s1 : p.s0) = std::max(fx ? p.s1 : p.s0, sx);
  }
  p.s = std::max(p.s0, p.s1);
  p.average = double(total) / double(f.size());
  return p;
}

namespace {

void require_arity(const TruthTable& f, int cap, const char* what) {
  if (f.arity() > cap)
    throw std::invalid_argument(std::string(what) + " supports arity <= " +
                                std::to_string(cap) + ", got " +
                                std::to_string(f.arity()));
}

// Max disjoint packing of the given block masks, branch and bound.
int max_disjoint_packing(const std::vector<uint32_t>& blocks, size_t from,
                         uint32_t used, int depth) {
  int best = depth;
  for (size_t i = from; i < blocks.size(); ++i) {
    if (blocks[i] & used) continue;
    if (depth + 1 + int(blocks.size() - i - 1) <= best) break;
    best = std::max(
        best, max_disjoint_packing(blocks, i + 1, used | blocks[i], depth + 1));
  }
  return best;
}

}  // namespace

BlockSensitivityProfile block_sensitivity(const TruthTable& f) {
  require_arity(f, kBlockSensitivityMaxArity, "block_sensitivity");
  BlockSensitivityProfile p;
  p.n = f.arity();
  p.per_input.resize(f.size());
  uint32_t full = uint32_t((uint64_t{1} << p.n) - 1);
  std::vector<uint32_t> minimal;
  std::vector<uint8_t> sensitive(full + 1);
  for (uint64_t x = 0; x < f.size(); ++x) {
    bool fx = f.value(x);
    for (uint32_t b = 1; b <= full; ++b)
      sensitive[b] = f.value(x ^ b) != fx;
    // A block is minimal if no proper nonempty subset is itself sensitive;
    // minimal blocks suffice for the maximum packing.
    minimal.clear();
    for (uint32_t b = 1; b <= full; ++b) {
      if (!sensitive[b]) continue;
      bool is_minimal = true;
      for (uint32_t sub = (b - 1) & b; sub; sub = (sub - 1) & b) {
        if (sensitive[sub]) {
          is_minimal = false;
          break;
        }
      }
      if (is_minimal) minimal.push_back(b);
    }
    p.per_input[x] = max_disjoint_packing(minimal, 0, 0, 0);
    p.bs = std::max(p.bs, p.per_input[x]);
  }
  return p;
}

CertificateProfile certificate_complexity(const TruthTable& f) {
  require_arity(f, kCertificateMaxArity, "certificate_complexity");
  CertificateProfile p;
  p.n = f.arity();
  p.per_input.resize(f.size());

  // Subsets of [n] grouped by size, so the scan can stop at the first
  // certifying size.
  std::vector<std::vector<uint32_t>> by_size(p.n + 1);
  uint32_t full = uint32_t((uint64_t{1} << p.n) - 1);
  for (uint32_t mask = 0; mask <= full; ++mask)
    by_size[std::popcount(mask)].push_back(mask);

  for (uint64_t x = 0; x < f.size(); ++x) {
    bool fx = f.value(x);
    int cx = p.n;
    for (int size = 0; size <= p.n && cx == p.n; ++size) {
      for (uint32_t mask : by_size[size]) {
        bool certifies = true;
        // y agrees with x on mask iff y = (x & mask) | free bits.
        uint32_t freem = full & ~mask;
        for (uint32_t sub = freem;; sub = (sub - 1) & freem) {
          uint64_t y = (uint64_t(x) & mask) | sub;
          if (f.value(y) != fx) {
            certifies = false;
            break;
          }
          if (sub == 0) break;
        }
        if (certifies) {
          cx = size;
          break;
        }
      }
    }
    p.per_input[x] = cx;
    (fx ? p.c1 : p.c0) = std::max(fx ? p.c1 : p.c0, cx);
  }
  p.c = std::max(p.c0, p.c1);
  return p;
}

namespace {

struct SubFunction {
  int n;
  uint64_t bits;  // 2^n <= 64 table bits

  bool value(uint64_t x) const { return (bits >> x) & 1; }
  bool is_constant() const {
    uint64_t mask = n == 6 ? ~uint64_t{0} : (uint64_t{1} << (1 << n)) - 1;
    return (bits & mask) == 0 || (bits & mask) == mask;
  }
  SubFunction restrict_var(int i, int val) const {
    SubFunction g{n - 1, 0};
    for (uint64_t y = 0; y < (uint64_t{1} << g.n); ++y) {
      uint64_t low = y & ((uint64_t{1} << i) - 1);
      uint64_t x = low | (uint64_t(val) << i) | ((y >> i) << (i + 1));
      g.bits |= uint64_t{value(x)} << y;
    }
    return g;
  }
};

uint64_t permute_table_bits(const SubFunction& f, const std::vector<int>& perm) {
  uint64_t out = 0;
  for (uint64_t x = 0; x < (uint64_t{1} << f.n); ++x) {
    uint64_t y = 0;
    for (int i = 0; i < f.n; ++i)
      if ((x >> i) & 1) y |= uint64_t{1} << perm[i];
    out |= uint64_t{f.value(x)} << y;
  }
  return out;
}

uint64_t canonical_key_bits(const SubFunction& f) {
  std::vector<int> perm(f.n);
  std::iota(perm.begin(), perm.end(), 0);
  uint64_t best = f.bits;
  while (std::next_permutation(perm.begin(), perm.end()))
    best = std::min(best, permute_table_bits(f, perm));
  return best;
}

// One memo table per remaining arity; raw table bits are the key.
using DepthMemo = std::vector<std::unordered_map<uint64_t, int>>;

int depth_rec(const SubFunction& f, bool canonical, DepthMemo& memo) {
  if (f.is_constant()) return 0;
  if (f.n == 1) return 1;
  uint64_t key = canonical ? canonical_key_bits(f) : f.bits;
  if (auto it = memo[f.n].find(key); it != memo[f.n].end()) return it->second;
  int best = f.n;
  for (int i = 0; i < f.n && best > 1; ++i) {
    int d0 = depth_rec(f.restrict_var(i, 0), canonical, memo);
    int d1 = depth_rec(f.restrict_var(i, 1), canonical, memo);
    best = std::min(best, 1 + std::max(d0, d1));
  }
  memo[f.n].emplace(key, best);
  return best;
}

}  // namespace

int det_query_complexity(const TruthTable& f, bool canonical) {
  require_arity(f, kDecisionTreeMaxArity, "det_query_complexity");
  SubFunction root{f.arity(), 0};
  for (uint64_t x = 0; x < f.size(); ++x)
    root.bits |= uint64_t{f.value(x)} << x;
  DepthMemo memo(f.arity() + 1);
  return depth_rec(root, canonical, memo);
}

MidrijanisReport check_midrijanis(const TruthTable& f) {
  MidrijanisReport r;
  r.d = det_query_complexity(f);
  r.bs = block_sensitivity(f).bs;
  r.deg = degree(f);
  r.ok = r.d <= r.bs * r.deg;
  return r;
}

}  // namespace bftk
