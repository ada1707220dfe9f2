#include "bftk/campaign.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace bftk {

namespace {

struct ShardTally {
  uint64_t pass = 0, fail = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  uint64_t worst_index = 0;
  std::string worst_case;
  bool any = false;
  std::vector<CampaignFailure> failures;
};

struct Plan {
  std::vector<const Relation*> pointwise;
  std::vector<const Relation*> pairwise;
};

Plan make_plan(int n, bool exhaustive, const std::vector<std::string>& ids,
               bool skip_capped) {
  Plan plan;
  std::vector<std::string> conflicts;
  for (const auto& id : ids) {
    const Relation& rel = find_relation(id);
    int cap = rel.pairwise() && exhaustive ? rel.max_arity_exhaustive_pair
                                           : rel.max_arity;
    if (n > cap) {
      if (!skip_capped)
        conflicts.push_back(id + " (cap " + std::to_string(cap) + ")");
      continue;
    }
    if (rel.pairwise())
      plan.pairwise.push_back(&rel);
    else
      plan.pointwise.push_back(&rel);
  }
  if (!conflicts.empty()) {
    std::string msg = "arity " + std::to_string(n) +
                      " exceeds the cap of relation(s): ";
    for (size_t i = 0; i < conflicts.size(); ++i)
      msg += (i ? ", " : "") + conflicts[i];
    throw std::invalid_argument(msg);
  }
  return plan;
}

double effective_tolerance(const Relation& rel, double override_tol) {
  return override_tol > 0 ? override_tol : rel.tolerance;
}

// Shard [0, total) across `jobs` workers; run `work(item, shard_slot)` and
// reduce slot vectors in shard order afterwards.
template <class Work>
void sharded_for(uint64_t total, int jobs, Work&& work) {
  jobs = std::max(1, jobs);
  uint64_t chunk = (total + jobs - 1) / uint64_t(jobs);
  std::vector<std::thread> workers;
  for (int j = 0; j < jobs; ++j) {
    uint64_t begin = uint64_t(j) * chunk;
    uint64_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&work, begin, end, j]() {
      for (uint64_t i = begin; i < end; ++i) work(i, j);
    });
  }
  for (auto& t : workers) t.join();
}

void fold(ShardTally& into, const ShardTally& from) {
  into.pass += from.pass;
  into.fail += from.fail;
  if (from.any &&
      (!into.any || from.worst_margin < into.worst_margin ||
       (from.worst_margin == into.worst_margin &&
        from.worst_index < into.worst_index))) {
    into.worst_margin = from.worst_margin;
    into.worst_index = from.worst_index;
    into.worst_case = from.worst_case;
    into.any = true;
  }
  into.failures.insert(into.failures.end(), from.failures.begin(),
                       from.failures.end());
}

void record(ShardTally& tally, const Relation& rel, double tol,
            const RelationOutcome& out, uint64_t index,
            const std::string& fspec) {
  bool pass = out.margin >= -tol;
  if (pass)
    ++tally.pass;
  else
    ++tally.fail;
  if (!tally.any || out.margin < tally.worst_margin ||
      (out.margin == tally.worst_margin && index < tally.worst_index)) {
    tally.any = true;
    tally.worst_margin = out.margin;
    tally.worst_index = index;
    tally.worst_case = fspec;
  }
  if (!pass)
    tally.failures.push_back({fspec, rel.id, out.lhs, out.rhs, out.margin});
}

CampaignReport run(const CampaignOptions& opt) {
  if (opt.exhaustive && opt.n > 4)
    throw std::invalid_argument("exhaustive campaigns support n <= 4");
  Plan plan = make_plan(opt.n, opt.exhaustive, opt.relations, opt.skip_capped);

  CampaignReport rep;
  rep.campaign = opt.exhaustive ? "exhaustive" : "random";
  rep.n = opt.n;
  rep.seed = opt.seed;
  uint64_t total = opt.exhaustive
                       ? (opt.n >= 5 ? 0 : uint64_t{1} << (uint64_t{1} << opt.n))
                       : opt.count;
  rep.functions = total;

  int jobs = std::max(1, opt.jobs);
  size_t num_point = plan.pointwise.size();

  // Pointwise phase.
  std::vector<std::vector<ShardTally>> point(num_point,
                                             std::vector<ShardTally>(jobs));
  if (num_point && total) {
    sharded_for(total, jobs, [&](uint64_t i, int slot) {
      TruthTable f = [&] {
        if (opt.exhaustive) return TruthTable::from_bits(opt.n, i);
        SplitMix64 gen = split_stream(opt.seed, i);
        return random_table(opt.n, gen);
      }();
      std::string fspec = f.to_spec();
      MeasureCache cache(f);
      for (size_t r = 0; r < num_point; ++r) {
        const Relation& rel = *plan.pointwise[r];
        RelationOutcome out = rel.eval(cache);
        record(point[r][slot], rel, effective_tolerance(rel, opt.tolerance),
               out, i, fspec);
      }
    });
  }

  // Pairwise phase; exhaustive campaigns run all ordered pairs.
  size_t num_pair = plan.pairwise.size();
  uint64_t pair_total = 0;
  if (num_pair) {
    pair_total = opt.exhaustive ? total * total : opt.count;
  }
  std::vector<std::vector<ShardTally>> pair(num_pair,
                                            std::vector<ShardTally>(jobs));
  if (num_pair && pair_total) {
    sharded_for(pair_total, jobs, [&](uint64_t i, int slot) {
      TruthTable f(1), g(1);
      if (opt.exhaustive) {
        f = TruthTable::from_bits(opt.n, i / total);
        g = TruthTable::from_bits(opt.n, i % total);
      } else {
        SplitMix64 gen = split_stream(opt.seed, opt.count + i);
        f = random_table(opt.n, gen);
        g = random_table(opt.n, gen);
      }
      if (f.is_constant() || g.is_constant()) return;
      std::string fspec = f.to_spec() + "|" + g.to_spec();
      MeasureCache mf(f), mg(g);
      for (size_t r = 0; r < num_pair; ++r) {
        const Relation& rel = *plan.pairwise[r];
        RelationOutcome out = rel.eval_pair(mf, mg);
        record(pair[r][slot], rel, effective_tolerance(rel, opt.tolerance),
               out, i, fspec);
      }
    });
  }

  rep.ok = true;
  auto collect = [&](const Relation& rel, std::vector<ShardTally>& slots) {
    ShardTally folded;
    folded.any = false;
    for (const auto& s : slots) fold(folded, s);
    RelationTally tally;
    tally.id = rel.id;
    tally.citation = rel.citation;
    tally.pass = folded.pass;
    tally.fail = folded.fail;
    tally.worst_margin = folded.any ? folded.worst_margin : 0.0;
    tally.any = folded.any;
    tally.worst_case = folded.worst_case;
    rep.tallies.push_back(tally);
    std::sort(folded.failures.begin(), folded.failures.end(),
              [](const CampaignFailure& a, const CampaignFailure& b) {
                return a.fspec < b.fspec;
              });
    rep.failures.insert(rep.failures.end(), folded.failures.begin(),
                        folded.failures.end());
    if (folded.fail) rep.ok = false;
  };
  for (size_t r = 0; r < num_point; ++r) collect(*plan.pointwise[r], point[r]);
  for (size_t r = 0; r < num_pair; ++r) collect(*plan.pairwise[r], pair[r]);
  return rep;
}

}  // namespace

CampaignReport run_campaign(const CampaignOptions& opt) { return run(opt); }

TruthTable random_table(int n, SplitMix64& gen) {
  TruthTable f(n);
  for (uint64_t x = 0; x < f.size(); x += 64) {
    uint64_t word = gen.next();
    int width = int(std::min<uint64_t>(64, f.size() - x));
    if (width < 64) word &= (uint64_t{1} << width) - 1;
    for (int b = 0; b < width; ++b)
      if ((word >> b) & 1) f.set(x + b, true);
  }
  return f;
}

CampaignReport verify_exhaustive(int n, const std::vector<std::string>& ids,
                                 int jobs, double tolerance) {
  CampaignOptions opt;
  opt.n = n;
  opt.exhaustive = true;
  opt.relations = ids;
  opt.jobs = jobs;
  opt.tolerance = tolerance;
  return run(opt);
}

CampaignReport verify_random(int n, uint64_t count, uint64_t seed,
                             const std::vector<std::string>& ids, int jobs,
                             double tolerance) {
  CampaignOptions opt;
  opt.n = n;
  opt.exhaustive = false;
  opt.count = count;
  opt.seed = seed;
  opt.relations = ids;
  opt.jobs = jobs;
  opt.tolerance = tolerance;
  return run(opt);
}

std::string report_json(const CampaignReport& rep) {
  nlohmann::ordered_json j;
  j["campaign"] = rep.campaign;
  j["n"] = rep.n;
  j["functions"] = rep.functions;
  j["seed"] = rep.seed;
  j["ok"] = rep.ok;
  j["relations"] = nlohmann::ordered_json::array();
  for (const auto& t : rep.tallies) {
    nlohmann::ordered_json jt;
    jt["id"] = t.id;
    jt["citation"] = t.citation;
    jt["pass"] = t.pass;
    jt["fail"] = t.fail;
    jt["worst_margin"] = t.any ? t.worst_margin : 0.0;
    jt["worst_case"] = t.worst_case;
    j["relations"].push_back(jt);
  }
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : rep.failures) {
    nlohmann::ordered_json jf;
    jf["fspec"] = f.fspec;
    jf["relation"] = f.relation;
    jf["lhs"] = f.lhs;
    jf["rhs"] = f.rhs;
    jf["margin"] = f.margin;
    j["failures"].push_back(jf);
  }
  return j.dump(2) + "\n";
}

std::string report_csv(const CampaignReport& rep) {
  std::string out =
      "campaign,n,functions,seed,relation,pass,fail,worst_margin,worst_case\n";
  for (const auto& t : rep.tallies) {
    out += rep.campaign + "," + std::to_string(rep.n) + "," +
           std::to_string(rep.functions) + "," + std::to_string(rep.seed) +
           "," + t.id + "," + std::to_string(t.pass) + "," +
           std::to_string(t.fail) + "," +
           (t.any ? std::to_string(t.worst_margin) : "0") + "," +
           t.worst_case + "\n";
  }
  return out;
}

}  // namespace bftk
