#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bftk {

using Rational = boost::multiprecision::cpp_rational;

/// Margin feasibility program: maximize t subject to
///   sum_j a[i][j] * x_j + t <= b[i]   for every row i,
/// with x and t free. Always feasible (push t down), so no phase-1 pass is
/// needed: the t-variable is pivoted onto the most violated row to obtain a
/// starting basis.
template <class T>
struct MarginLp {
  std::vector<std::vector<T>> a;
  std::vector<T> b;
};

/// At optimality the dual vector y satisfies y >= 0, sum_i y_i = 1 and
/// A^T y = 0; when margin < 0 it is a Farkas witness that no x attains
/// nonnegative margin.
template <class T>
struct MarginLpResult {
  T margin{};
  std::vector<T> x;
  std::vector<T> dual;
  bool bounded = true;
  uint64_t pivots = 0;
};

namespace lp_detail {

inline bool is_negative(double v, double tol) { return v < -tol; }
inline bool is_negative(const Rational& v, double) { return v < 0; }
inline bool is_positive(double v, double tol) { return v > tol; }
inline bool is_positive(const Rational& v, double) { return v > 0; }

}  // namespace lp_detail

/// Dense tableau simplex. Dantzig pricing with a Bland fallback once
/// degenerate pivots stall progress; exact types use Bland throughout.
template <class T>
MarginLpResult<T> solve_margin_lp(const MarginLp<T>& lp) {
  constexpr bool exact = !std::is_floating_point_v<T>;
  const double tol = exact ? 0.0 : 1e-11;
  const size_t m = lp.b.size();
  const size_t k = m ? lp.a[0].size() : 0;
  // Columns: split x (2k), split t (2), slacks (m), rhs.
  const size_t t_plus = 2 * k, t_minus = 2 * k + 1;
  const size_t slack0 = 2 * k + 2;
  const size_t cols = slack0 + m + 1;
  const size_t rhs = cols - 1;

  std::vector<std::vector<T>> tab(m + 1, std::vector<T>(cols, T(0)));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < k; ++j) {
      tab[i][2 * j] = lp.a[i][j];
      tab[i][2 * j + 1] = -lp.a[i][j];
    }
    tab[i][t_plus] = T(1);
    tab[i][t_minus] = T(-1);
    tab[i][slack0 + i] = T(1);
    tab[i][rhs] = lp.b[i];
  }
  // Objective row holds reduced costs z_j - c_j for maximize t.
  auto& obj = tab[m];
  obj[t_plus] = T(-1);
  obj[t_minus] = T(1);

  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = slack0 + i;

  auto pivot = [&](size_t row, size_t col) {
    T inv = tab[row][col];
    for (size_t c = 0; c < cols; ++c) tab[row][c] /= inv;
    for (size_t r = 0; r <= m; ++r) {
      if (r == row) continue;
      T factor = tab[r][col];
      if (factor == T(0)) continue;
      for (size_t c = 0; c < cols; ++c) tab[r][c] -= factor * tab[row][c];
    }
    basis[row] = col;
  };

  MarginLpResult<T> res;
  if (m == 0) {  // nothing bounds t
    res.bounded = false;
    return res;
  }

  // Starting basis: bring t_minus in on the row with the smallest rhs.
  size_t worst = 0;
  for (size_t i = 1; i < m; ++i)
    if (tab[i][rhs] < tab[worst][rhs]) worst = i;
  if (lp_detail::is_negative(tab[worst][rhs], tol)) {
    pivot(worst, t_minus);
    ++res.pivots;
  }

  const uint64_t max_pivots = 200000;
  uint64_t stall = 0;
  bool bland = exact;
  T last_obj = obj[rhs];
  while (true) {
    if (res.pivots > max_pivots)
      throw std::runtime_error("simplex pivot limit exceeded");
    // Entering column: most negative reduced cost (Dantzig) or first
    // negative (Bland).
    size_t enter = cols;
    for (size_t c = 0; c + 1 < cols; ++c) {
      if (!lp_detail::is_negative(obj[c], exact ? 0.0 : 1e-9)) continue;
      if (bland) {
        enter = c;
        break;
      }
      if (enter == cols || obj[c] < obj[enter]) enter = c;
    }
    if (enter == cols) break;  // optimal

    // Ratio test; Bland breaks ties by basis index.
    size_t leave = m;
    for (size_t i = 0; i < m; ++i) {
      if (!lp_detail::is_positive(tab[i][enter], tol)) continue;
      if (leave == m) {
        leave = i;
        continue;
      }
      T lhs = tab[i][rhs] * tab[leave][enter];
      T rhs_v = tab[leave][rhs] * tab[i][enter];
      if (lhs < rhs_v ||
          (lhs == rhs_v && basis[i] < basis[leave]))
        leave = i;
    }
    if (leave == m) {
      res.bounded = false;
      return res;
    }
    pivot(leave, enter);
    ++res.pivots;

    if (!exact) {
      if (obj[rhs] == last_obj) {
        if (++stall > 64) bland = true;  // anti-cycling fallback
      } else {
        stall = 0;
        last_obj = obj[rhs];
      }
    }
  }

  res.x.assign(k, T(0));
  std::vector<T> value(cols, T(0));
  for (size_t i = 0; i < m; ++i) value[basis[i]] = tab[i][rhs];
  for (size_t j = 0; j < k; ++j) res.x[j] = value[2 * j] - value[2 * j + 1];
  res.margin = value[t_plus] - value[t_minus];
  res.dual.assign(m, T(0));
  for (size_t i = 0; i < m; ++i) res.dual[i] = obj[slack0 + i];
  return res;
}

/// Independent re-check of a Farkas infeasibility witness for the margin
/// program: y >= 0, y^T A ~ 0, sum y ~ 1 and y^T b < 0 together imply no x
/// attains margin >= 0.
template <class T>
bool verify_farkas_witness(const MarginLp<T>& lp, const std::vector<T>& y,
                           double tol) {
  const size_t m = lp.b.size();
  if (y.size() != m) return false;
  const size_t k = m ? lp.a[0].size() : 0;
  T ysum(0), yb(0);
  for (size_t i = 0; i < m; ++i) {
    if (lp_detail::is_negative(y[i], tol)) return false;
    ysum += y[i];
    yb += y[i] * lp.b[i];
  }
  T dev = ysum - T(1);
  if (lp_detail::is_positive(dev, tol) || lp_detail::is_negative(dev, tol))
    return false;
  for (size_t j = 0; j < k; ++j) {
    T dot(0);
    for (size_t i = 0; i < m; ++i) dot += y[i] * lp.a[i][j];
    if (lp_detail::is_positive(dot, tol) || lp_detail::is_negative(dot, tol))
      return false;
  }
  return lp_detail::is_negative(yb, 0.0);
}

}  // namespace bftk
