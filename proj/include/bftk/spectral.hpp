#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bftk/linalg.hpp"
#include "bftk/truth_table.hpp"

namespace bftk {

inline constexpr int kDenseGraphMaxArity = 16;
inline constexpr int kSigningMatrixMaxArity = 12;
inline constexpr int kHadamardIdentityMaxArity = 10;
inline constexpr int kDenseEigMaxArity = 10;  // 2^n <= 1024 reference path

/// Subgraph of the hypercube keeping only edges whose endpoints differ in
/// f-value. The degree of x equals s_x(f); the graph is bipartite between
/// even and odd Hamming weights.
struct SensitivityGraph {
  int n = 0;
  std::vector<std::pair<uint32_t, uint32_t>> edges;  // (x, x^e_i), x < x^e_i

  Eigen::MatrixXd adjacency_dense() const;
};

SensitivityGraph sensitivity_graph(const TruthTable& f);

struct SpectralResult {
  double lambda = 0.0;
  std::vector<double> principal;  // unit norm, entrywise nonnegative
  uint64_t iterations = 0;
  double residual = 0.0;
};

/// Spectral sensitivity lambda(f) = ||A_f||, the top eigenvalue of the
/// sensitivity-graph adjacency matrix (bipartite, so the spectrum is
/// symmetric about 0). Power iteration on A_f + n*I; empty graphs give 0.
SpectralResult spectral_sensitivity(const TruthTable& f,
                                    double tol = kPowerIterTolerance,
                                    uint64_t max_steps = kPowerIterMaxSteps);

/// Reference path: dense symmetric eigensolve, 2^n <= 1024.
double spectral_sensitivity_dense(const TruthTable& f);

/// Spectral norm of the bipartite 0-inputs x 1-inputs block with 1-entries
/// at Hamming distance 1; equals lambda(f).
double koutsoupias(const TruthTable& f);

/// Signed hypercube adjacency matrix defined by B_1 = (0 1; 1 0) and
/// B_i = (B_{i-1} I; I -B_{i-1}); satisfies B_n^2 = n*I and tr B_n = 0,
/// validated on construction.
class SigningMatrix {
public:
  explicit SigningMatrix(int n);

  int arity() const { return n_; }
  uint64_t dim() const { return uint64_t{1} << n_; }

  /// Entry at (x, y); zero unless |x xor y| = 1.
  int entry(uint32_t x, uint32_t y) const;

  /// Sign of the edge x -> x^e_j, i.e. (-1)^(popcount of x above bit j).
  static int edge_sign(uint32_t x, int j);

  Eigen::MatrixXd dense() const;

private:
  int n_;
};

struct HuangWitness {
  uint64_t v0_size = 0, v1_size = 0;  // inputs with f = parity / f != parity
  bool vanishes_on_v1 = false;        // eigenvector zeroed on the smaller side
  std::vector<double> witness;        // v' = |v|, nonzero
  double ratio = 0.0;                 // ||A_f v'|| / ||v'|| >= sqrt(n)
  bool exact_path = false;            // rational elimination vs least squares
};

/// For f of full degree (deg(f) = n), constructs a nonzero vector supported
/// on the majority side of the parity split with ||A_f v'|| >= sqrt(n)||v'||.
/// Callers handling deg(f) < n restrict to a full-degree subcube first.
HuangWitness huang_witness(const TruthTable& f);

/// Restriction to a subcube on which the degree stays deg(f): picks a top
/// Moebius monomial and fixes every other variable to 0.
TruthTable restrict_to_full_degree_subcube(const TruthTable& f);

struct HadamardIdentityReport {
  bool identity_exact = false;     // 2 A_f = A_H - diag(g) A_H diag(g)
  double diagonalization_residual = 0.0;  // || H A_H H - (n 1 - 2X) ||_max
  double top_eigenvalue = 0.0;     // of R X R - X with R = H diag(g) H
  double lambda = 0.0;
  double eig_gap = 0.0;            // |top - lambda|
  bool ok = false;
};

/// Checks the exact sensitivity-adjacency identity, the Hadamard
/// diagonalization of the hypercube, and that the extremal quadratic form of
/// R X R - X recovers lambda(f). n <= 10.
HadamardIdentityReport hadamard_identities(const TruthTable& f);

/// Every direction slice of the adjacency matrix is a partial matching:
/// each row of A_f restricted to direction i has at most one 1.
bool direction_slices_are_matchings(const TruthTable& f);

}  // namespace bftk
