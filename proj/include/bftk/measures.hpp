#pragma once

#include <optional>
#include <vector>

#include "bftk/truth_table.hpp"

namespace bftk {

inline constexpr int kBlockSensitivityMaxArity = 6;
inline constexpr int kCertificateMaxArity = 6;
inline constexpr int kDecisionTreeMaxArity = 6;

/// Per-input sensitivity profile plus the aggregates s0, s1, s.
struct SensitivityProfile {
  int n = 0;
  std::vector<int> per_input;
  int s0 = 0, s1 = 0, s = 0;
  double average = 0.0;  // E_x[s_x(f)]
};

SensitivityProfile sensitivity(const TruthTable& f);

/// Per-input block sensitivity (max number of disjoint sensitive blocks)
/// with the aggregate bs. Exact search over minimal sensitive blocks.
struct BlockSensitivityProfile {
  int n = 0;
  std::vector<int> per_input;
  int bs = 0;
};

BlockSensitivityProfile block_sensitivity(const TruthTable& f);

/// Per-input certificate complexity (smallest set of fixed positions that
/// forces f) with the aggregates C0, C1, C.
struct CertificateProfile {
  int n = 0;
  std::vector<int> per_input;
  int c0 = 0, c1 = 0, c = 0;
};

CertificateProfile certificate_complexity(const TruthTable& f);

/// Exact deterministic query complexity D(f) by memoized minimax recursion
/// over restrictions. Ties broken toward the lowest variable index. The
/// canonical flag additionally folds restriction keys under variable
/// permutation (pure optimization, same result).
int det_query_complexity(const TruthTable& f, bool canonical = false);

struct MidrijanisReport {
  bool ok = false;
  int d = 0, bs = 0, deg = 0;
};

/// Checks D(f) <= bs(f) * deg(f).
MidrijanisReport check_midrijanis(const TruthTable& f);

/// One row of the shared report schema; fields outside the per-measure
/// arity caps are left empty.
struct MeasureRecord {
  std::string fspec;
  int n = 0;
  std::optional<int> s0, s1, s, bs, c0, c1, c, d, deg, deg2, adeg;
  std::optional<double> lambda, avg_sensitivity;
};

}  // namespace bftk
