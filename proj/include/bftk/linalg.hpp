#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

namespace bftk {

inline constexpr double kPowerIterTolerance = 1e-10;
inline constexpr uint64_t kPowerIterMaxSteps = 1'000'000;

struct PowerIterationResult {
  double eigenvalue = 0.0;
  std::vector<double> vector;  // unit norm
  uint64_t iterations = 0;
  double residual = 0.0;  // ||A v - eigenvalue v||
  bool converged = false;
};

/// Power iteration for the top eigenvalue of a symmetric operator with
/// spectrum contained in [-shift, shift]. Iterates on A + shift*I so the
/// dominant eigenvalue is the most positive one; with a nonnegative operator
/// and nonnegative start the limit vector stays entrywise nonnegative.
///
/// Apply: void(const double* in, double* out) writing out = A * in.
/// start_seed varies the (strictly positive) starting vector; restart
/// helpers below use it to rule out starts orthogonal to the top eigenspace.
template <class Apply>
PowerIterationResult power_iteration(uint64_t dim, double shift, Apply&& apply,
                                     double tol = kPowerIterTolerance,
                                     uint64_t max_steps = kPowerIterMaxSteps,
                                     uint64_t start_seed = 0) {
  PowerIterationResult res;
  std::vector<double> v(dim), w(dim);
  // All-ones start plus a seeded positive perturbation so symmetric
  // configurations cannot stall the iteration.
  uint64_t state = start_seed * 0x9e3779b97f4a7c15ULL + 0x1234567 + dim;
  for (uint64_t i = 0; i < dim; ++i) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    v[i] = 1.0 + 0.5 * (double(z >> 11) / 9007199254740992.0);
  }
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;

  for (res.iterations = 1; res.iterations <= max_steps; ++res.iterations) {
    apply(v.data(), w.data());
    double rayleigh = 0;
    for (uint64_t i = 0; i < dim; ++i) rayleigh += v[i] * w[i];
    double resid = 0;
    for (uint64_t i = 0; i < dim; ++i) {
      double r = w[i] - rayleigh * v[i];
      resid += r * r;
    }
    res.residual = std::sqrt(resid);
    res.eigenvalue = rayleigh;
    if (res.residual <= tol * std::max(1.0, std::fabs(rayleigh))) {
      res.converged = true;
      break;
    }
    double wnorm = 0;
    for (uint64_t i = 0; i < dim; ++i) wnorm += w[i] * w[i];
    wnorm = std::sqrt(wnorm);
    if (wnorm == 0.0) {  // operator annihilated the iterate
      res.eigenvalue = shift;
      res.converged = true;
      break;
    }
    for (uint64_t i = 0; i < dim; ++i) v[i] = w[i] / wnorm;
  }
  res.vector = std::move(v);
  res.eigenvalue -= shift;
  return res;
}

/// Top eigenvalue of a sign-indefinite symmetric operator: power iteration
/// restarted from distinct seeded starts until two of them agree. A single
/// positive start can sit orthogonal to the top eigenspace and the residual
/// test cannot tell; independent restarts can not all miss it.
template <class Apply>
PowerIterationResult power_iteration_confirmed(uint64_t dim, double shift,
                                               Apply&& apply,
                                               double tol = kPowerIterTolerance,
                                               uint64_t max_steps = kPowerIterMaxSteps) {
  PowerIterationResult best;
  constexpr int kRestarts = 4;
  for (int r = 0; r < kRestarts; ++r) {
    auto res = power_iteration(dim, shift, apply, tol, max_steps,
                               uint64_t(r));
    if (r > 0 &&
        std::fabs(res.eigenvalue - best.eigenvalue) <=
            1e-9 * std::max(1.0, std::fabs(best.eigenvalue)))
      return res.eigenvalue > best.eigenvalue ? res : best;
    if (r == 0 || res.eigenvalue > best.eigenvalue) best = std::move(res);
  }
  return best;
}

/// Largest eigenvalue of a dense symmetric matrix (reference path).
double top_eigenvalue_dense(const Eigen::MatrixXd& a);

/// Spectral norm (largest singular value) of a general matrix via power
/// iteration on A^T A.
double spectral_norm(const Eigen::MatrixXd& a, double tol = 1e-12);

/// Reference spectral norm from a dense SVD.
double spectral_norm_dense(const Eigen::MatrixXd& a);

}  // namespace bftk
