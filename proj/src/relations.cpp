#include "bftk/relations.hpp"

#include <cmath>
#include <stdexcept>

#include "bftk/adversary.hpp"
#include "bftk/approx.hpp"
#include "bftk/linalg.hpp"
#include "bftk/polynomial.hpp"
#include "bftk/spectral.hpp"

namespace bftk {

double MeasureCache::lambda() {
  if (!lambda_) {
    // The dense reference solver is exact enough and faster at harness
    // scale; the power-iteration path is cross-checked against it in tests.
    lambda_ = f_.arity() <= kDenseEigMaxArity
                  ? spectral_sensitivity_dense(f_)
                  : spectral_sensitivity(f_).lambda;
  }
  return *lambda_;
}

const SensitivityProfile& MeasureCache::sens() {
  if (!sens_) sens_ = sensitivity(f_);
  return *sens_;
}

int MeasureCache::deg() {
  if (!deg_) deg_ = degree(f_);
  return *deg_;
}

int MeasureCache::deg2() {
  if (!deg2_) deg2_ = degree_gf2(f_);
  return *deg2_;
}

int MeasureCache::bs() {
  if (!bs_) bs_ = block_sensitivity(f_).bs;
  return *bs_;
}

int MeasureCache::cert() {
  if (!cert_) cert_ = certificate_complexity(f_).c;
  return *cert_;
}

int MeasureCache::dqc() {
  if (!dqc_) dqc_ = det_query_complexity(f_);
  return *dqc_;
}

int MeasureCache::adeg_third() {
  if (!adeg_) adeg_ = approx_degree(f_, 1.0 / 3.0).degree;
  return *adeg_;
}

namespace {

RelationOutcome le(double lhs, double rhs) {
  return {lhs, rhs, rhs - lhs};
}

RelationOutcome eq(double lhs, double rhs) {
  return {lhs, rhs, -std::fabs(lhs - rhs)};
}

std::vector<Relation> build_registry() {
  std::vector<Relation> reg;

  reg.push_back({"huang",
                 "deg(f) <= lambda(f)^2 (spectral form of Huang's sensitivity "
                 "theorem)",
                 10, 0, 1e-6,
                 [](MeasureCache& m) {
                   return le(m.deg(), m.lambda() * m.lambda());
                 },
                 nullptr});
  reg.push_back({"s-le-lambda2",
                 "s(f) <= lambda(f)^2 (star subgraph lower bound)", 10, 0,
                 1e-6,
                 [](MeasureCache& m) {
                   return le(m.sens().s, m.lambda() * m.lambda());
                 },
                 nullptr});
  reg.push_back({"lambda-le-deg",
                 "lambda(f) <= deg(f) (banded Hadamard conjugation bound)", 10,
                 0, 1e-6,
                 [](MeasureCache& m) { return le(m.lambda(), m.deg()); },
                 nullptr});
  reg.push_back({"lambda-s-product",
                 "lambda(f) <= sqrt(s0(f) s1(f)) (Hoelder bound on the "
                 "bipartite block)",
                 10, 0, 1e-6,
                 [](MeasureCache& m) {
                   return le(m.lambda(),
                             std::sqrt(double(m.sens().s0) * m.sens().s1));
                 },
                 nullptr});
  reg.push_back({"avg-sensitivity",
                 "lambda(f) >= E_x[s_x(f)] (Rayleigh quotient at the uniform "
                 "vector)",
                 10, 0, 1e-6,
                 [](MeasureCache& m) {
                   return le(m.sens().average, m.lambda());
                 },
                 nullptr});
  reg.push_back({"deg-s0s1",
                 "deg(f) <= s0(f) s1(f) (composition with AND o OR)", 10, 0,
                 1e-6,
                 [](MeasureCache& m) {
                   return le(m.deg(), double(m.sens().s0) * m.sens().s1);
                 },
                 nullptr});
  reg.push_back({"midrijanis", "D(f) <= bs(f) deg(f) (Midrijanis 2004)", 6, 0,
                 1e-6,
                 [](MeasureCache& m) {
                   return le(m.dqc(), double(m.bs()) * m.deg());
                 },
                 nullptr});
  reg.push_back({"bs-ge-s",
                 "s(f) <= bs(f) <= C(f) <= D(f) (sensitivity chain)", 6, 0,
                 1e-6,
                 [](MeasureCache& m) {
                   double worst = std::min({double(m.bs()) - m.sens().s,
                                            double(m.cert()) - m.bs(),
                                            double(m.dqc()) - m.cert()});
                   return RelationOutcome{double(m.sens().s), double(m.dqc()),
                                          worst};
                 },
                 nullptr});
  reg.push_back({"deg2-le-deg",
                 "deg2(f) <= deg(f) (mod-2 lower bound on real degree)", 16, 0,
                 1e-6,
                 [](MeasureCache& m) { return le(m.deg2(), m.deg()); },
                 nullptr});
  reg.push_back({"tightadeg",
                 "lambda(f) <= adeg_eps(f)/(1-2eps) at eps = 1/3 "
                 "(gamma2-certified sign matrix)",
                 5, 0, 1e-6,
                 [](MeasureCache& m) {
                   return le(m.lambda(), 3.0 * m.adeg_third());
                 },
                 nullptr});
  reg.push_back({"deg-adeg2",
                 "deg(f) <= 9 adeg_{1/3}(f)^2 (quadratic degree vs approximate "
                 "degree)",
                 5, 0, 1e-6,
                 [](MeasureCache& m) {
                   double a = m.adeg_third();
                   return le(m.deg(), 9.0 * a * a);
                 },
                 nullptr});
  reg.push_back({"koutsoupias-eq",
                 "lambda(f) = K(f) (Koutsoupias 1993 block norm)", 10, 0, 1e-8,
                 [](MeasureCache& m) {
                   return eq(koutsoupias(m.table()), m.lambda());
                 },
                 nullptr});
  reg.push_back({"hadamard-identity",
                 "2 A_f = A_H - diag(g) A_H diag(g) and top-eig(RXR - X) = "
                 "lambda(f)",
                 8, 0, 1e-6,
                 [](MeasureCache& m) {
                   auto rep = hadamard_identities(m.table());
                   double viol = rep.identity_exact ? rep.eig_gap : 1.0;
                   viol = std::max(viol, rep.diagonalization_residual);
                   return RelationOutcome{rep.top_eigenvalue, rep.lambda,
                                          -viol};
                 },
                 nullptr});
  reg.push_back({"swa1",
                 "the eigenvector weight scheme achieves lambda(f) (SWA_1 "
                 "witness)",
                 8, 0, 1e-6,
                 [](MeasureCache& m) {
                   if (m.table().is_constant()) return eq(0.0, 0.0);
                   auto res = swa1_witness(m.table());
                   return eq(res.value, res.lambda);
                 },
                 nullptr});
  reg.push_back({"certificate-chain",
                 "lambda <= ||B_q||/(1-2eps) <= gamma2(M)/(1-2eps) <= "
                 "d/(1-2eps) at eps = 1/3",
                 5, 0, 1e-6,
                 [](MeasureCache& m) {
                   auto rep = certificate_chain(m.table(), 1.0 / 3.0);
                   double worst = 1.0;
                   for (const auto& l : rep.links)
                     worst = std::min(worst, l.rhs - l.lhs);
                   return RelationOutcome{rep.lambda, rep.bq_norm * 3.0, worst};
                 },
                 nullptr});

  Relation comp;
  comp.id = "composition-lambda";
  comp.citation =
      "lambda(f o g) = lambda(f) lambda(g) (single-bit adversary "
      "composition)";
  comp.max_arity = 3;
  comp.max_arity_exhaustive_pair = 2;
  comp.tolerance = 1e-6;
  comp.eval_pair = [](MeasureCache& mf, MeasureCache& mg) {
    TruthTable h = compose(mf.table(), mg.table());
    MeasureCache mh(h);
    return eq(mh.lambda(), mf.lambda() * mg.lambda());
  };
  reg.push_back(std::move(comp));

  return reg;
}

}  // namespace

const std::vector<Relation>& relation_registry() {
  static const std::vector<Relation> registry = build_registry();
  return registry;
}

const Relation& find_relation(const std::string& id) {
  for (const auto& r : relation_registry())
    if (r.id == id) return r;
  throw std::invalid_argument("unknown relation id '" + id + "'");
}

std::vector<std::string> resolve_relation_ids(
    const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  for (const auto& id : requested) {
    if (id == "all") {
      for (const auto& r : relation_registry()) out.push_back(r.id);
    } else {
      out.push_back(find_relation(id).id);
    }
  }
  return out;
}

}  // namespace bftk
