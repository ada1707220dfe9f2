#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bftk/measures.hpp"
#include "bftk/truth_table.hpp"

namespace bftk {

/// Lazily computed measures shared by the relation checks of one function.
class MeasureCache {
public:
  explicit MeasureCache(const TruthTable& f) : f_(f) {}

  const TruthTable& table() const { return f_; }
  double lambda();
  const SensitivityProfile& sens();
  int deg();
  int deg2();
  int bs();
  int cert();
  int dqc();
  int adeg_third();  // adeg_{1/3}, unit-interval convention

private:
  const TruthTable& f_;
  std::optional<double> lambda_;
  std::optional<SensitivityProfile> sens_;
  std::optional<int> deg_, deg2_, bs_, cert_, dqc_, adeg_;
};

struct RelationOutcome {
  double lhs = 0.0, rhs = 0.0;
  double margin = 0.0;  // rhs - lhs for inequalities, -|lhs-rhs| for equalities
};

struct Relation {
  std::string id;
  std::string citation;
  int max_arity = 0;                 // cap for single functions
  int max_arity_exhaustive_pair = 0; // nonzero marks a pairwise relation
  double tolerance = 1e-6;           // pass iff margin >= -tolerance
  std::function<RelationOutcome(MeasureCache&)> eval;
  std::function<RelationOutcome(MeasureCache&, MeasureCache&)> eval_pair;

  bool pairwise() const { return bool(eval_pair); }
};

const std::vector<Relation>& relation_registry();
const Relation& find_relation(const std::string& id);

/// Resolves "all" and validates ids.
std::vector<std::string> resolve_relation_ids(
    const std::vector<std::string>& requested);

}  // namespace bftk
