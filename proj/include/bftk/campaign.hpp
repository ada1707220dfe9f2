#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bftk/relations.hpp"
#include "bftk/rng.hpp"
#include "bftk/truth_table.hpp"

namespace bftk {

struct CampaignOptions {
  int n = 0;
  bool exhaustive = true;
  uint64_t count = 0;  // random campaigns
  uint64_t seed = 0;
  std::vector<std::string> relations;  // ids, already resolved
  int jobs = 1;
  double tolerance = 0.0;   // 0: per-relation defaults, else override
  bool skip_capped = false; // "all" drops relations beyond their arity cap;
                            // explicitly named ones still raise cap errors
};

struct RelationTally {
  std::string id;
  std::string citation;
  uint64_t pass = 0, fail = 0;
  double worst_margin = 0.0;
  bool any = false;
  std::string worst_case;  // fspec of the minimizer
};

struct CampaignFailure {
  std::string fspec;
  std::string relation;
  double lhs = 0.0, rhs = 0.0, margin = 0.0;
};

struct CampaignReport {
  std::string campaign;  // "exhaustive" or "random"
  int n = 0;
  uint64_t functions = 0;
  uint64_t seed = 0;
  std::vector<RelationTally> tallies;
  std::vector<CampaignFailure> failures;
  bool ok = false;
};

/// Verification sweep over all 2^(2^n) functions (n <= 4) or a seeded
/// sample. Pairwise relations run over function pairs (exhaustively only at
/// n = 2). Sharded across jobs with a reduction in shard order, so reports
/// are byte-identical for a fixed seed and flag set.
CampaignReport run_campaign(const CampaignOptions& opt);
CampaignReport verify_exhaustive(int n, const std::vector<std::string>& ids,
                                 int jobs = 1, double tolerance = 0.0);
CampaignReport verify_random(int n, uint64_t count, uint64_t seed,
                             const std::vector<std::string>& ids, int jobs = 1,
                             double tolerance = 0.0);

std::string report_json(const CampaignReport& rep);
std::string report_csv(const CampaignReport& rep);

/// Seeded table draw: words from the per-sample stream, high bits masked.
TruthTable random_table(int n, SplitMix64& gen);

}  // namespace bftk
