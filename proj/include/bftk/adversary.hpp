#pragma once

#include <Eigen/Dense>
#include <optional>

#include "bftk/polynomial.hpp"
#include "bftk/spectral.hpp"
#include "bftk/truth_table.hpp"

namespace bftk {

/// Symmetric nonnegative weights supported on sensitivity-graph edges.
struct EdgeWeightScheme {
  int n = 0;
  std::vector<std::pair<std::pair<uint32_t, uint32_t>, double>> weights;

  double weighted_degree(uint32_t x) const;
};

struct Swa1Result {
  EdgeWeightScheme scheme;
  double value = 0.0;   // min over support of sqrt(wt(x) wt(x^i)) / w(x, x^i)
  double lambda = 0.0;  // must agree within tolerance
};

/// The eigenvector weight scheme w(x,y) = v[x] v[y] on graph edges, built
/// from the principal vector; its adversary value equals lambda(f).
/// Throws for constant functions (empty support).
Swa1Result swa1_witness(const TruthTable& f);

/// Nonnegative weights per (input, bit index); feasible when
/// w(x,i) * w(x^i,i) >= 1 on every sensitive pair.
struct MinimaxWeightScheme {
  int n = 0;
  std::vector<double> w;  // index x * n + i

  double at(uint64_t x, int i) const { return w[x * uint64_t(n) + i]; }
  double& at(uint64_t x, int i) { return w[x * uint64_t(n) + i]; }
};

struct Mm1Report {
  bool feasible = false;
  double objective = 0.0;  // max_x sum_i w(x,i)
  std::optional<std::pair<uint64_t, int>> violating_pair;
  double lambda = 0.0;
  bool weak_duality_ok = false;  // objective >= lambda - 1e-6 when feasible
};

Mm1Report mm1_verify(const TruthTable& f, const MinimaxWeightScheme& w);

/// The sqrt(s0/s1) scheme on sensitive pairs only; feasible with objective
/// sqrt(s0 * s1). Requires a non-constant function.
MinimaxWeightScheme mm1_sensitivity_scheme(const TruthTable& f);

/// Product scheme for the block composition: w(x,(i,j)) =
/// w_f(g-block values of x, i) * w_g(block i of x, j). Feasible whenever the
/// component schemes are, with objective at most the product.
MinimaxWeightScheme mm1_compose(const TruthTable& f, const TruthTable& g,
                                const MinimaxWeightScheme& wf,
                                const MinimaxWeightScheme& wg);

/// Column-norm bound c(X) * c(Y) of a factorization; optionally hands back
/// X^T Y for caller-side equality checks.
double gamma2_upper(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                    Eigen::MatrixXd* product = nullptr);

/// Sign-matrix factorization certifying gamma2(M) <= d for the banded
/// distance matrix M_{st} = s - t (|s - t| <= d), M of size (n+1) x (n+1).
/// Each column of S and T carries exactly d entries of +-1, so
/// c(S) = c(T) = sqrt(d) exactly.
struct Gamma2Certificate {
  int n = 0, d = 0;
  Eigen::MatrixXi s, t;  // 2d x (n+1)

  Eigen::MatrixXi product() const { return s.transpose() * t; }
  double value() const { return double(d); }
};

Gamma2Certificate build_gamma2_certificate(int n, int d);

/// Finite-difference matrix of a signed approximating polynomial:
/// entries (q(x) - q(y)) / 2 at Hamming distance 1, zero elsewhere.
struct BqMatrix {
  int n = 0;
  Eigen::MatrixXd b;
  double norm = 0.0;            // ||B_q||
  double conjugated_norm = 0.0; // ||W o R~||, equal within 1e-7
};

/// Builds B_q and validates ||B_q|| = ||W o R~|| for W_{xy} = |x| - |y|.
/// The polynomial must follow the signed convention (positive on 1-inputs,
/// negative on 0-inputs). n <= 10.
BqMatrix build_bq(const TruthTable& f, const MultilinearPolynomial& q);

struct ChainLink {
  std::string name;
  double lhs = 0.0, rhs = 0.0;
  bool ok = false;
};

struct ChainReport {
  double epsilon = 0.0;
  int degree = 0;  // signed-convention approximate degree
  double lambda = 0.0;
  double bq_norm = 0.0;
  double gamma2_value = 0.0;
  std::vector<ChainLink> links;
  bool ok = false;
};

/// Full certificate chain lambda <= ||B_q||/(1-2eps) <= gamma2/(1-2eps)
/// <= d/(1-2eps), each link within 1e-6. n <= 5 (needs the LP witness).
ChainReport certificate_chain(const TruthTable& f, double epsilon);

/// ||A o B|| <= c(X) c(Y) * ||B|| for any factorization A = X^T Y; throws if
/// the factorization does not reproduce A to 1e-10.
bool hadamard_product_bound(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                            const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// Product eigenvector for the composed sensitivity graph, used to exhibit
/// lambda(f o g) >= lambda(f) * lambda(g): alpha[x] = 2^(n/2) v[g(x)]
/// prod_i u[x^(i)] for unit principal vectors v of f and u of g. Returns the
/// Rayleigh quotient of alpha under the composed adjacency operator.
double composed_rayleigh_quotient(const TruthTable& f, const TruthTable& g,
                                  const std::vector<double>& v,
                                  const std::vector<double>& u);

}  // namespace bftk
