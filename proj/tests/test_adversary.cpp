#include "bftk/adversary.hpp"

#include <cmath>

#include "bftk/approx.hpp"
#include "bftk/linalg.hpp"
#include "bftk/polynomial.hpp"
#include "bftk/rng.hpp"
#include "doctest.h"

using bftk::Convention;
using bftk::TruthTable;

namespace {

TruthTable fam(const char* name, std::vector<int> params) {
  return bftk::from_family(name, params);
}

// Exact signed representation 2f - 1: +1 on 1-inputs, -1 on 0-inputs.
bftk::MultilinearPolynomial signed_exact(const TruthTable& f) {
  auto coeffs = bftk::mobius_coefficients(f);
  bftk::MultilinearPolynomial q;
  q.n = f.arity();
  q.terms.emplace_back(0, 2.0 * double(coeffs[0]) - 1.0);
  for (uint64_t mask = 1; mask < coeffs.size(); ++mask)
    if (coeffs[mask] != 0)
      q.terms.emplace_back(uint32_t(mask), 2.0 * double(coeffs[mask]));
  return q;
}

// Random feasible minimax scheme: every sensitive pair gets weights with
// product >= 1, everything else a small nonnegative filler.
bftk::MinimaxWeightScheme random_feasible_scheme(const TruthTable& f,
                                                 bftk::SplitMix64& gen) {
  bftk::MinimaxWeightScheme w;
  w.n = f.arity();
  w.w.assign(f.size() * uint64_t(f.arity()), 0.0);
  for (uint64_t x = 0; x < f.size(); ++x) {
    bool fx = f.value(x);
    for (int i = 0; i < f.arity(); ++i) {
      uint64_t y = x ^ (uint64_t{1} << i);
      if (y < x || f.value(y) == fx) continue;
      double t = std::exp((double(gen.below(2001)) - 1000.0) / 700.0);
      double slack = 1.0 + double(gen.below(1000)) / 1000.0;
      w.at(x, i) = t * slack;
      w.at(y, i) = 1.0 / t;
    }
  }
  for (auto& v : w.w)
    if (v == 0.0 && gen.next() % 4 == 0)
      v = double(gen.below(1000)) / 4000.0;
  return w;
}

}  // namespace

TEST_CASE("eigenvector weight scheme achieves lambda") {
  auto or2 = bftk::swa1_witness(fam("or", {2}));
  CHECK(std::fabs(or2.value - std::sqrt(2.0)) < 1e-6);
  CHECK(or2.scheme.weights.size() == 2);  // the star has two edges

  auto p2 = bftk::swa1_witness(fam("parity", {2}));
  CHECK(std::fabs(p2.value - 2.0) < 1e-6);

  CHECK_THROWS(bftk::swa1_witness(fam("const", {3, 0})));

  for (int n = 1; n <= 3; ++n) {
    uint64_t tables = uint64_t{1} << (uint64_t{1} << n);
    for (uint64_t bits = 0; bits < tables; ++bits) {
      TruthTable f = TruthTable::from_bits(n, bits);
      if (f.is_constant()) continue;
      auto res = bftk::swa1_witness(f);
      CHECK(std::fabs(res.value - res.lambda) < 1e-6);
    }
  }
}

TEST_CASE("minimax scheme verification") {
  TruthTable or2 = fam("or", {2});
  auto scheme = bftk::mm1_sensitivity_scheme(or2);
  auto rep = bftk::mm1_verify(or2, scheme);
  CHECK(rep.feasible);
  CHECK(rep.objective == doctest::Approx(std::sqrt(2.0)));
  CHECK(rep.weak_duality_ok);

  // All-ones on the sensitive pairs of PARITY_2.
  TruthTable p2 = fam("parity", {2});
  bftk::MinimaxWeightScheme ones;
  ones.n = 2;
  ones.w.assign(8, 1.0);
  auto ones_rep = bftk::mm1_verify(p2, ones);
  CHECK(ones_rep.feasible);
  CHECK(ones_rep.objective == doctest::Approx(2.0));
  CHECK(ones_rep.weak_duality_ok);

  // A zero on a sensitive pair is infeasible and names the pair.
  bftk::MinimaxWeightScheme broken = ones;
  broken.at(0, 0) = 0.0;
  auto broken_rep = bftk::mm1_verify(p2, broken);
  CHECK(!broken_rep.feasible);
  REQUIRE(broken_rep.violating_pair.has_value());
  CHECK(broken_rep.violating_pair->first == 0);
  CHECK(broken_rep.violating_pair->second == 1);
}

TEST_CASE("weak duality for random feasible schemes") {
  bftk::SplitMix64 gen(2024);
  for (int fn = 0; fn < 12; ++fn) {
    TruthTable f(1 + int(gen.below(4)));
    for (uint64_t x = 0; x < f.size(); ++x) f.set(x, gen.next() & 1);
    if (f.is_constant()) continue;
    for (int trial = 0; trial < 500; ++trial) {
      auto w = random_feasible_scheme(f, gen);
      auto rep = bftk::mm1_verify(f, w);
      REQUIRE(rep.feasible);
      CHECK(rep.objective >= rep.lambda - 1e-6);
    }
  }
}

TEST_CASE("composed minimax schemes stay feasible with product objective") {
  for (uint64_t fb = 0; fb < 16; ++fb) {
    TruthTable f = TruthTable::from_bits(2, fb);
    if (f.is_constant()) continue;
    for (uint64_t gb = 0; gb < 16; ++gb) {
      TruthTable g = TruthTable::from_bits(2, gb);
      if (g.is_constant()) continue;
      auto wf = bftk::mm1_sensitivity_scheme(f);
      auto wg = bftk::mm1_sensitivity_scheme(g);
      auto composed = bftk::mm1_compose(f, g, wf, wg);
      auto rep = bftk::mm1_verify(bftk::compose(f, g), composed);
      CHECK(rep.feasible);
      double prod = bftk::mm1_verify(f, wf).objective *
                    bftk::mm1_verify(g, wg).objective;
      CHECK(rep.objective <= prod + 1e-9);
      CHECK(rep.weak_duality_ok);
    }
  }
}

TEST_CASE("lambda is multiplicative under composition") {
  for (uint64_t fb = 0; fb < 16; ++fb) {
    TruthTable f = TruthTable::from_bits(2, fb);
    if (f.is_constant()) continue;
    for (uint64_t gb = 0; gb < 16; ++gb) {
      TruthTable g = TruthTable::from_bits(2, gb);
      if (g.is_constant()) continue;
      double lfg = bftk::spectral_sensitivity(bftk::compose(f, g)).lambda;
      double lf = bftk::spectral_sensitivity(f).lambda;
      double lg = bftk::spectral_sensitivity(g).lambda;
      CHECK(std::fabs(lfg - lf * lg) < 1e-6);
    }
  }
}

TEST_CASE("product eigenvector certifies the composition lower bound") {
  TruthTable f = fam("or", {2}), g = fam("and", {2});
  auto vf = bftk::spectral_sensitivity(f);
  auto vg = bftk::spectral_sensitivity(g);
  double quotient = bftk::composed_rayleigh_quotient(f, g, vf.principal,
                                                     vg.principal);
  CHECK(std::fabs(quotient - vf.lambda * vg.lambda) < 1e-6);
}

TEST_CASE("column-norm factorization bounds") {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  Eigen::MatrixXd product;
  CHECK(bftk::gamma2_upper(id, id, &product) == doctest::Approx(1.0));
  CHECK((product - id).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd ones_row = Eigen::MatrixXd::Ones(1, 5);
  CHECK(bftk::gamma2_upper(ones_row, ones_row) == doctest::Approx(1.0));

  Eigen::MatrixXd bad(2, 3), good(3, 3);
  CHECK_THROWS(bftk::gamma2_upper(bad, good));
}

TEST_CASE("banded distance certificate") {
  auto cert = bftk::build_gamma2_certificate(12, 3);
  CHECK(cert.value() == doctest::Approx(3.0));
  Eigen::MatrixXi m = cert.product();
  for (int s = 0; s <= 12; ++s)
    for (int t = 0; t <= 12; ++t)
      if (std::abs(s - t) <= 3) CHECK(m(s, t) == s - t);

  // Full-width band: the product equals s - t everywhere.
  auto full = bftk::build_gamma2_certificate(6, 6);
  Eigen::MatrixXi fm = full.product();
  for (int s = 0; s <= 6; ++s)
    for (int t = 0; t <= 6; ++t) CHECK(fm(s, t) == s - t);

  // Column support is exactly d for every (n, d).
  for (int n = 1; n <= 64; ++n)
    for (int d = 1; d <= n; ++d)
      CHECK_NOTHROW((void)bftk::build_gamma2_certificate(n, d));

  CHECK_THROWS((void)bftk::build_gamma2_certificate(4, 0));
  CHECK_THROWS((void)bftk::build_gamma2_certificate(4, 5));
}

TEST_CASE("finite-difference matrix of approximating polynomials") {
  auto or2 = fam("or", {2});
  auto bq = bftk::build_bq(or2, signed_exact(or2));
  CHECK(std::fabs(bq.norm - std::sqrt(2.0)) < 1e-7);
  CHECK(std::fabs(bq.norm - bq.conjugated_norm) <= 1e-7);
  // Antisymmetric pattern, zero beyond Hamming distance 1.
  for (uint32_t x = 0; x < 4; ++x)
    for (uint32_t y = 0; y < 4; ++y) {
      CHECK(bq.b(x, y) == -bq.b(y, x));
      if (std::popcount(x ^ y) != 1) CHECK(bq.b(x, y) == 0.0);
    }

  // Constant polynomial for the constant function: the zero matrix.
  bftk::MultilinearPolynomial one;
  one.n = 2;
  one.terms.emplace_back(0, 1.0);
  auto zero = bftk::build_bq(fam("const", {2, 1}), one);
  CHECK(zero.norm == doctest::Approx(0.0));

  // Signed LP witness at eps = 1/3 keeps (1 - 2eps) * lambda below the norm.
  TruthTable and2 = fam("and", {2});
  auto witness =
      bftk::approx_degree(and2, 1.0 / 3.0, Convention::kSigned).witness;
  auto wbq = bftk::build_bq(and2, witness);
  double lambda = bftk::spectral_sensitivity(and2).lambda;
  CHECK(wbq.norm >= (1.0 - 2.0 / 3.0) * lambda - 1e-7);

  // Unit-interval polynomials violate the signed convention.
  auto unit_witness = bftk::approx_degree(and2, 1.0 / 3.0).witness;
  CHECK_THROWS((void)bftk::build_bq(and2, unit_witness));
}

TEST_CASE("certificate chains") {
  auto or3 = bftk::certificate_chain(fam("or", {3}), 0.0);
  CHECK(or3.ok);
  CHECK(std::fabs(or3.lambda - std::sqrt(3.0)) < 1e-6);
  CHECK(or3.bq_norm <= 3.0 + 1e-6);
  CHECK(or3.degree == 3);

  auto and2 = bftk::certificate_chain(fam("and", {2}), 1.0 / 3.0);
  CHECK(and2.ok);
  CHECK(and2.degree == 1);
  CHECK(std::sqrt(2.0) <= 3.0 * and2.bq_norm + 1e-6);

  auto p2 = bftk::certificate_chain(fam("parity", {2}), 0.0);
  CHECK(p2.ok);
  CHECK(p2.degree == 2);
  CHECK(p2.bq_norm == doctest::Approx(2.0));  // the chain is tight here

  auto c = bftk::certificate_chain(fam("const", {3, 1}), 1.0 / 3.0);
  CHECK(c.ok);
  CHECK(c.degree == 0);
}

TEST_CASE("Hadamard product norm bound") {
  bftk::SplitMix64 gen(55);
  Eigen::MatrixXd b(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      b(i, j) = (double(gen.below(2001)) - 1000.0) / 1000.0;

  Eigen::MatrixXd ones_row = Eigen::MatrixXd::Ones(1, 4);
  CHECK(bftk::hadamard_product_bound(Eigen::MatrixXd::Ones(4, 4), b, ones_row,
                                     ones_row));
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  CHECK(bftk::hadamard_product_bound(id, b, id, id));

  // A factorization that does not reproduce A is rejected.
  CHECK_THROWS(bftk::hadamard_product_bound(Eigen::MatrixXd::Ones(4, 4), b, id,
                                            id));
}

TEST_CASE("lifted band certificate bounds the weighted conjugation") {
  // Lift M(4,3) to the cube by duplicating rows/columns per Hamming level;
  // the lifted factorization keeps the same column norms.
  bftk::SplitMix64 gen(66);
  auto cert = bftk::build_gamma2_certificate(4, 3);
  Eigen::MatrixXd s_lift(cert.s.rows(), 16), t_lift(cert.t.rows(), 16);
  for (uint32_t x = 0; x < 16; ++x) {
    s_lift.col(x) = cert.s.col(std::popcount(x)).cast<double>();
    t_lift.col(x) = cert.t.col(std::popcount(x)).cast<double>();
  }
  bftk::MultilinearPolynomial q;
  q.n = 4;
  for (uint32_t mask = 0; mask < 16; ++mask) {
    if (std::popcount(mask) > 3) continue;
    q.terms.emplace_back(mask, (double(gen.below(2001)) - 1000.0) / 1000.0);
  }
  double sup = q.sup_norm();
  for (auto& [mask, c] : q.terms) c /= sup;
  Eigen::MatrixXd rt = bftk::r_tilde(q);
  Eigen::MatrixXd v_lift = s_lift.transpose() * t_lift;
  CHECK(bftk::hadamard_product_bound(v_lift, rt, s_lift, t_lift));
  // The lifted product is the Hamming-weight difference inside the band.
  for (uint32_t x = 0; x < 16; ++x)
    for (uint32_t y = 0; y < 16; ++y) {
      int diff = std::popcount(x) - std::popcount(y);
      if (std::abs(diff) <= 3) CHECK(v_lift(x, y) == doctest::Approx(diff));
    }
}
