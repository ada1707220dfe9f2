#include "bftk/approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "bftk/linalg.hpp"
#include "bftk/spectral.hpp"

namespace bftk {

namespace {

void require_arity(const TruthTable& f, int cap, const char* what) {
  if (f.arity() > cap)
    throw std::invalid_argument(std::string(what) + " supports arity <= " +
                                std::to_string(cap) + ", got " +
                                std::to_string(f.arity()));
}

template <class T>
void output_bounds(bool fx, const T& eps, Convention conv, T* lo, T* hi) {
  if (conv == Convention::kUnitInterval) {
    *lo = fx ? T(1) - eps : T(0);
    *hi = fx ? T(1) : eps;
  } else {
    *lo = fx ? T(1) - T(2) * eps : T(-1);
    *hi = fx ? T(1) : T(-1) + T(2) * eps;
  }
}

// Rows: q(x) + t <= hi(x) and -q(x) + t <= -lo(x), one pair per input.
template <class T>
MarginLp<T> build_margin_lp(const TruthTable& f, const T& eps, Convention conv,
                            const std::vector<uint32_t>& monomials) {
  MarginLp<T> lp;
  size_t k = monomials.size();
  lp.a.reserve(2 * f.size());
  lp.b.reserve(2 * f.size());
  for (uint64_t x = 0; x < f.size(); ++x) {
    T lo, hi;
    output_bounds(f.value(x), eps, conv, &lo, &hi);
    std::vector<T> up(k), down(k);
    for (size_t j = 0; j < k; ++j) {
      bool in = (monomials[j] & x) == monomials[j];
      up[j] = in ? T(1) : T(0);
      down[j] = in ? T(-1) : T(0);
    }
    lp.a.push_back(std::move(up));
    lp.b.push_back(hi);
    lp.a.push_back(std::move(down));
    lp.b.push_back(-lo);
  }
  return lp;
}

}  // namespace

std::vector<uint32_t> monomials_up_to(int n, int degree) {
  std::vector<uint32_t> masks;
  for (uint32_t m = 0; m < (uint32_t{1} << n); ++m)
    if (std::popcount(m) <= degree) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return masks;
}

LevelFeasibility approx_feasible_at(const TruthTable& f, double epsilon,
                                    Convention convention, int degree) {
  auto monomials = monomials_up_to(f.arity(), degree);
  auto lp = build_margin_lp<double>(f, epsilon, convention, monomials);
  auto sol = solve_margin_lp(lp);
  if (!sol.bounded) throw std::runtime_error("margin program unbounded");

  LevelFeasibility lev;
  lev.margin = sol.margin;
  lev.feasible = sol.margin >= -kLpFeasibilityTolerance;
  if (lev.feasible) {
    lev.witness.n = f.arity();
    for (size_t j = 0; j < monomials.size(); ++j)
      if (sol.x[j] != 0.0) lev.witness.terms.emplace_back(monomials[j], sol.x[j]);
  } else {
    lev.farkas_verified = verify_farkas_witness(lp, sol.dual, 1e-8);
  }
  return lev;
}

bool approx_feasible_at_exact(const TruthTable& f, const Rational& epsilon,
                              Convention convention, int degree) {
  require_arity(f, kApproxDegreeExactMaxArity, "approx_feasible_at_exact");
  auto monomials = monomials_up_to(f.arity(), degree);
  auto lp = build_margin_lp<Rational>(f, epsilon, convention, monomials);
  auto sol = solve_margin_lp(lp);
  if (!sol.bounded) throw std::runtime_error("margin program unbounded");
  return sol.margin >= 0;
}

int approx_degree_exact(const TruthTable& f, const Rational& epsilon,
                        Convention convention) {
  if (epsilon < 0 || epsilon >= Rational(1, 2))
    throw std::invalid_argument("epsilon must lie in [0, 1/2)");
  for (int d = 0;; ++d)
    if (approx_feasible_at_exact(f, epsilon, convention, d)) return d;
}

ApproxDegreeResult approx_degree(const TruthTable& f, double epsilon,
                                 Convention convention) {
  require_arity(f, kApproxDegreeMaxArity, "approx_degree");
  if (epsilon < 0 || epsilon >= 0.5)
    throw std::invalid_argument("epsilon must lie in [0, 1/2)");

  ApproxDegreeResult res;
  res.epsilon = epsilon;
  res.convention = convention;
  LevelFeasibility below;
  for (int d = 0; d <= f.arity(); ++d) {
    auto lev = approx_feasible_at(f, epsilon, convention, d);
    if (lev.feasible) {
      res.degree = d;
      res.witness = std::move(lev.witness);
      res.slack = lev.margin;
      if (d == 0) {
        res.minimality_certified = true;  // nothing below degree 0
        res.infeasible_margin = 0.0;
      } else {
        res.minimality_certified = below.farkas_verified;
        res.infeasible_margin = below.margin;
      }
      return res;
    }
    below = std::move(lev);
  }
  throw std::logic_error("full-degree level must be feasible");
}

Eigen::MatrixXd r_tilde(const MultilinearPolynomial& q) {
  if (q.n > 10)
    throw std::invalid_argument("r_tilde supports arity <= 10");
  uint64_t dim = uint64_t{1} << q.n;
  std::vector<double> values(dim);
  double sup = 0;
  for (uint64_t x = 0; x < dim; ++x) {
    values[x] = q.evaluate(uint32_t(x));
    sup = std::max(sup, std::fabs(values[x]));
  }
  if (sup > 1.0 + 1e-9)
    throw std::invalid_argument("sup-norm of q exceeds 1: " +
                                std::to_string(sup));

  // Conjugate diag(values) by the scaled Hadamard via one transform per side.
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(dim, dim);
  for (uint64_t x = 0; x < dim; ++x) r(x, x) = values[x];
  std::vector<double> buf(dim);
  for (uint64_t col = 0; col < dim; ++col) {
    for (uint64_t x = 0; x < dim; ++x) buf[x] = r(x, col);
    fwht_inplace(std::span<double>(buf));
    for (uint64_t x = 0; x < dim; ++x) r(x, col) = buf[x];
  }
  for (uint64_t row = 0; row < dim; ++row) {
    for (uint64_t x = 0; x < dim; ++x) buf[x] = r(row, x);
    fwht_inplace(std::span<double>(buf));
    for (uint64_t x = 0; x < dim; ++x) r(row, x) = buf[x] / double(dim);
  }
  return r;
}

bool check_sparsity(const MultilinearPolynomial& q) {
  Eigen::MatrixXd r = r_tilde(q);
  uint64_t dim = uint64_t{1} << q.n;
  int d = q.degree();
  // Independent route: Fourier coefficients of q from its point values.
  std::vector<double> ghat(dim);
  for (uint64_t x = 0; x < dim; ++x) ghat[x] = q.evaluate(uint32_t(x));
  fwht_inplace(std::span<double>(ghat));
  for (double& v : ghat) v /= double(dim);

  for (uint64_t x = 0; x < dim; ++x) {
    for (uint64_t y = 0; y < dim; ++y) {
      uint64_t z = x ^ y;
      if (std::popcount(z) > d) {
        if (std::fabs(r(x, y)) > 1e-10) return false;
      } else if (std::fabs(r(x, y) - ghat[z]) > 1e-10) {
        return false;
      }
    }
  }
  return true;
}

bool check_cibj(const Eigen::MatrixXd& r, const std::vector<double>& v, int d,
                double tol) {
  uint64_t dim = uint64_t(r.rows());
  int n = std::countr_zero(dim);
  if (spectral_norm(r) > 1.0 + 1e-9)
    throw std::invalid_argument("operator norm exceeds 1");
  for (uint64_t x = 0; x < dim; ++x)
    for (uint64_t y = 0; y < dim; ++y)
      if (std::popcount(x ^ y) > d && std::fabs(r(x, y)) > 1e-10)
        throw std::invalid_argument("matrix is not band-limited to degree d");

  Eigen::Map<const Eigen::VectorXd> vin(v.data(), dim);
  Eigen::VectorXd rv = r * vin;
  std::vector<double> c(n + 1, 0.0), b(n + 1, 0.0);
  for (uint64_t x = 0; x < dim; ++x) {
    c[std::popcount(x)] += rv(x) * rv(x);
    b[std::popcount(x)] += v[x] * v[x];
  }
  for (int rr = d + 1; rr <= n; ++rr) {
    double ctail = 0, btail = 0;
    for (int i = rr; i <= n; ++i) ctail += c[i];
    for (int j = rr - d; j <= n; ++j) btail += b[j];
    if (ctail > btail + tol) return false;
  }
  return true;
}

QuadraticFormReport check_quadratic_form_bound(const TruthTable& f,
                                               const MultilinearPolynomial& q,
                                               double epsilon) {
  require_arity(f, 8, "check_quadratic_form_bound");
  QuadraticFormReport rep;
  Eigen::MatrixXd r = r_tilde(q);
  uint64_t dim = uint64_t(r.rows());
  Eigen::VectorXd weights(dim);
  for (uint64_t x = 0; x < dim; ++x) weights(x) = double(std::popcount(x));
  Eigen::MatrixXd m = r * weights.asDiagonal() * r;
  m -= Eigen::MatrixXd(weights.asDiagonal());
  rep.top_eigenvalue = top_eigenvalue_dense(m);
  rep.degree_bound = q.degree();
  rep.lambda = spectral_sensitivity(f).lambda;
  rep.eps_slack = 3.0 * epsilon * f.arity();
  rep.ok = rep.top_eigenvalue <= rep.degree_bound + 1e-6 &&
           rep.lambda <= rep.top_eigenvalue + rep.eps_slack + 1e-6;
  return rep;
}

}  // namespace bftk
