#pragma once

#include <Eigen/Dense>

#include "bftk/lp.hpp"
#include "bftk/polynomial.hpp"
#include "bftk/truth_table.hpp"

namespace bftk {

inline constexpr int kApproxDegreeMaxArity = 5;
inline constexpr int kApproxDegreeExactMaxArity = 3;
inline constexpr double kLpFeasibilityTolerance = 1e-7;

/// Output range convention for approximating polynomials.
///   UnitInterval: q(x) in [0, eps] on 0-inputs, [1-eps, 1] on 1-inputs.
///   Signed:       q(x) in [-1, -1+2eps] on 0-inputs, [1-2eps, 1] on 1-inputs.
enum class Convention { kUnitInterval, kSigned };

struct ApproxDegreeResult {
  double epsilon = 0.0;
  Convention convention = Convention::kUnitInterval;
  int degree = 0;
  MultilinearPolynomial witness;
  double slack = 0.0;  // optimal constraint margin at the minimal degree
  // Evidence that degree - 1 is infeasible: the margin of the level below
  // and whether its Farkas dual re-checked. Trivially true at degree 0.
  double infeasible_margin = 0.0;
  bool minimality_certified = false;
};

/// Minimum degree of a polynomial eps-approximating f in the requested
/// convention, by ascending feasibility LPs. The ascent leaves the
/// infeasibility certificate for degree-1 behind as a by-product.
ApproxDegreeResult approx_degree(const TruthTable& f, double epsilon,
                                 Convention convention = Convention::kUnitInterval);

/// Single feasibility level, exposed for tests and the exact re-solve.
struct LevelFeasibility {
  bool feasible = false;
  double margin = 0.0;
  MultilinearPolynomial witness;
  bool farkas_verified = false;
};

LevelFeasibility approx_feasible_at(const TruthTable& f, double epsilon,
                                    Convention convention, int degree);

/// Exact-rational feasibility decision, n <= 3; epsilon given as a fraction.
bool approx_feasible_at_exact(const TruthTable& f, const Rational& epsilon,
                              Convention convention, int degree);

/// Exact-rational degree, n <= 3.
int approx_degree_exact(const TruthTable& f, const Rational& epsilon,
                        Convention convention = Convention::kUnitInterval);

/// The 2^n x 2^n matrix H diag(q) H; entries equal the Fourier coefficients
/// of q at the xor of the indices, so the matrix vanishes beyond Hamming
/// distance deg(q). Requires sup_x |q(x)| <= 1. n <= 10.
Eigen::MatrixXd r_tilde(const MultilinearPolynomial& q);

/// Verifies the band structure of H diag(q) H against independently
/// computed Fourier coefficients (1e-10 entrywise).
bool check_sparsity(const MultilinearPolynomial& q);

/// Tail inequality of the Hamming-level masses: with c_i the level masses of
/// R v and b_j those of v, sum_{i>=r} c_i <= sum_{j>=r-d} b_j for every
/// r in {d+1, ..., n}, given ||R|| <= 1 and band width d.
bool check_cibj(const Eigen::MatrixXd& r, const std::vector<double>& v, int d,
                double tol = 1e-8);

struct QuadraticFormReport {
  double top_eigenvalue = 0.0;  // of R X R - X
  double degree_bound = 0.0;    // deg(q)
  double lambda = 0.0;
  double eps_slack = 0.0;       // 3 * eps * n
  bool ok = false;
};

/// Checks top-eig(R X R - X) <= deg(q) and lambda(f) <= top-eig + 3 eps n,
/// both within 1e-6. n <= 8.
QuadraticFormReport check_quadratic_form_bound(const TruthTable& f,
                                               const MultilinearPolynomial& q,
                                               double epsilon);

/// Monomial masks with popcount <= degree in (size, value) order; the LP
/// variable layout shared by both conventions.
std::vector<uint32_t> monomials_up_to(int n, int degree);

}  // namespace bftk
