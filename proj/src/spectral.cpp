#include "bftk/spectral.hpp"

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "bftk/polynomial.hpp"

namespace bftk {

namespace {

using Rational = boost::multiprecision::cpp_rational;

void require_arity(const TruthTable& f, int cap, const char* what) {
  if (f.arity() > cap)
    throw std::invalid_argument(std::string(what) + " supports arity <= " +
                                std::to_string(cap) + ", got " +
                                std::to_string(f.arity()));
}

// Direction bitmask of sensitive edges per input.
std::vector<uint32_t> sensitive_directions(const TruthTable& f) {
  std::vector<uint32_t> dirs(f.size());
  for (uint64_t x = 0; x < f.size(); ++x) {
    bool fx = f.value(x);
    uint32_t m = 0;
    for (int i = 0; i < f.arity(); ++i)
      if (f.value(x ^ (uint64_t{1} << i)) != fx) m |= uint32_t{1} << i;
    dirs[x] = m;
  }
  return dirs;
}

}  // namespace

SensitivityGraph sensitivity_graph(const TruthTable& f) {
  SensitivityGraph g;
  g.n = f.arity();
  for (uint64_t x = 0; x < f.size(); ++x) {
    bool fx = f.value(x);
    for (int i = 0; i < g.n; ++i) {
      uint64_t y = x ^ (uint64_t{1} << i);
      if (y > x && f.value(y) != fx)
        g.edges.emplace_back(uint32_t(x), uint32_t(y));
    }
  }
  return g;
}

Eigen::MatrixXd SensitivityGraph::adjacency_dense() const {
  if (n > kDenseGraphMaxArity)
    throw std::invalid_argument("dense adjacency supports arity <= 16");
  uint64_t dim = uint64_t{1} << n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (auto [x, y] : edges) {
    a(x, y) = 1.0;
    a(y, x) = 1.0;
  }
  return a;
}

SpectralResult spectral_sensitivity(const TruthTable& f, double tol,
                                    uint64_t max_steps) {
  SpectralResult out;
  auto dirs = sensitive_directions(f);
  uint64_t dim = f.size();
  bool empty = true;
  for (uint32_t m : dirs)
    if (m) {
      empty = false;
      break;
    }
  if (empty) {  // constant function: lambda = 0 by definition
    out.principal.assign(dim, 1.0 / std::sqrt(double(dim)));
    return out;
  }

  double shift = double(f.arity());
  auto apply = [&](const double* in, double* outv) {
    for (uint64_t x = 0; x < dim; ++x) {
      double acc = shift * in[x];
      uint32_t m = dirs[x];
      while (m) {
        int i = std::countr_zero(m);
        m &= m - 1;
        acc += in[x ^ (uint64_t{1} << i)];
      }
      outv[x] = acc;
    }
  };
  auto res = power_iteration(dim, shift, apply, tol, max_steps);
  out.lambda = res.eigenvalue;
  out.iterations = res.iterations;
  out.residual = res.residual;
  out.principal = std::move(res.vector);
  for (double& v : out.principal)
    if (v < 0 && v > -1e-12) v = 0.0;  // clamp convergence dust
  return out;
}

double spectral_sensitivity_dense(const TruthTable& f) {
  require_arity(f, kDenseEigMaxArity, "spectral_sensitivity_dense");
  auto g = sensitivity_graph(f);
  if (g.edges.empty()) return 0.0;
  return top_eigenvalue_dense(g.adjacency_dense());
}

double koutsoupias(const TruthTable& f) {
  // Bipartite block between 0-inputs and 1-inputs at Hamming distance 1.
  // Its spectral norm is computed independently of the A_f route, by power
  // iteration on Q^T Q over the 1-input coordinates.
  std::vector<int64_t> col_of(f.size(), -1);
  std::vector<uint64_t> ones;
  for (uint64_t x = 0; x < f.size(); ++x)
    if (f.value(x)) {
      col_of[x] = int64_t(ones.size());
      ones.push_back(x);
    }
  if (ones.empty() || ones.size() == f.size()) return 0.0;

  auto dirs = sensitive_directions(f);
  uint64_t dim = ones.size();
  std::vector<double> through(f.size());  // Q v, indexed by 0-inputs
  auto apply = [&](const double* in, double* outv) {
    for (uint64_t x = 0; x < f.size(); ++x) {
      if (f.value(x)) continue;
      double acc = 0;
      uint32_t m = dirs[x];
      while (m) {
        int i = std::countr_zero(m);
        m &= m - 1;
        acc += in[col_of[x ^ (uint64_t{1} << i)]];
      }
      through[x] = acc;
    }
    for (uint64_t k = 0; k < dim; ++k) {
      uint64_t y = ones[k];
      double acc = 0;
      uint32_t m = dirs[y];
      while (m) {
        int i = std::countr_zero(m);
        m &= m - 1;
        acc += through[y ^ (uint64_t{1} << i)];
      }
      outv[k] = acc;
    }
  };
  auto res = power_iteration(dim, 0.0, apply);
  return std::sqrt(std::max(0.0, res.eigenvalue));
}

int SigningMatrix::edge_sign(uint32_t x, int j) {
  return (std::popcount(x >> (j + 1)) & 1) ? -1 : 1;
}

SigningMatrix::SigningMatrix(int n) : n_(n) {
  if (n < 1 || n > kSigningMatrixMaxArity)
    throw std::invalid_argument("signing matrix arity must be in [1, 12]");
  // B_n^2 = n*I: diagonal entries are sums of n squared signs; the (x, y)
  // entries at distance 2 must cancel pairwise. Trace is 0 structurally.
  uint64_t dim = this->dim();
  for (uint64_t x = 0; x < dim; ++x) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        uint32_t xj = uint32_t(x) ^ (uint32_t{1} << j);
        uint32_t xk = uint32_t(x) ^ (uint32_t{1} << k);
        int via_j = edge_sign(uint32_t(x), j) * edge_sign(xj, k);
        int via_k = edge_sign(uint32_t(x), k) * edge_sign(xk, j);
        if (via_j + via_k != 0)
          throw std::logic_error("signing recursion violates B^2 = n*I");
      }
    }
  }
}

int SigningMatrix::entry(uint32_t x, uint32_t y) const {
  uint32_t diff = x ^ y;
  if (std::popcount(diff) != 1) return 0;
  return edge_sign(x, std::countr_zero(diff));
}

Eigen::MatrixXd SigningMatrix::dense() const {
  uint64_t d = dim();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
  for (uint64_t x = 0; x < d; ++x)
    for (int j = 0; j < n_; ++j) {
      uint64_t y = x ^ (uint64_t{1} << j);
      b(x, y) = edge_sign(uint32_t(x), j);
    }
  return b;
}

TruthTable restrict_to_full_degree_subcube(const TruthTable& f) {
  auto coeffs = mobius_coefficients(f);
  int d = 0;
  uint32_t top_mask = 0;
  for (uint64_t mask = 0; mask < coeffs.size(); ++mask) {
    if (coeffs[mask] != 0 && std::popcount(mask) > d) {
      d = std::popcount(mask);
      top_mask = uint32_t(mask);
    }
  }
  if (d == f.arity()) return f;
  if (d == 0)
    throw std::invalid_argument("constant function has no degree subcube");
  std::vector<std::pair<int, int>> fix;
  for (int i = 0; i < f.arity(); ++i)
    if (!(top_mask & (uint32_t{1} << i))) fix.emplace_back(i + 1, 0);
  return restrict_table(f, fix);
}

namespace {

// Kernel basis over Q of an integer matrix (rows x cols), via rational RREF.
std::vector<std::vector<Rational>> rational_kernel_basis(
    const std::vector<std::vector<int64_t>>& rows, size_t cols) {
  std::vector<std::vector<Rational>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());

  std::vector<size_t> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < m.size(); ++col) {
    size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    Rational inv = m[rank][col];
    for (size_t c = col; c < cols; ++c) m[rank][c] /= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rational factor = m[r][col];
      for (size_t c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

constexpr int kExactWitnessMaxArity = 6;

bool is_perfect_square(int n, int* root) {
  int r = int(std::lround(std::sqrt(double(n))));
  if (r * r == n) {
    *root = r;
    return true;
  }
  return false;
}

// Eigenvector of B_n with eigenvalue +sqrt(n) vanishing on `zero_side`,
// found by exact rational elimination. For non-square n a rational c with
// c|_S = 0 and (B c)|_S = 0 gives the eigenvector v = B c + sqrt(n) c, which
// is automatically nonzero and vanishes on S. For square n the eigenspace
// itself is rational and we eliminate on rows of P = B + sqrt(n) I directly.
std::vector<double> plus_eigenvector_exact(const SigningMatrix& b,
                                           const std::vector<uint32_t>& zero_side) {
  int n = b.arity();
  size_t dim = size_t(b.dim());
  int root = 0;
  bool square = is_perfect_square(n, &root);
  double sqrt_n = std::sqrt(double(n));

  std::vector<std::vector<int64_t>> rows;
  for (uint32_t x : zero_side) {
    std::vector<int64_t> brow(dim, 0);
    for (int j = 0; j < n; ++j)
      brow[x ^ (uint32_t{1} << j)] = SigningMatrix::edge_sign(x, j);
    if (square) {
      brow[x] += root;
      rows.push_back(std::move(brow));
    } else {
      rows.push_back(std::move(brow));
      std::vector<int64_t> irow(dim, 0);
      irow[x] = 1;
      rows.push_back(std::move(irow));
    }
  }
  auto basis = rational_kernel_basis(rows, dim);

  for (const auto& c : basis) {
    // v = (B + sqrt(n) I) c; for square n this is exact and the nonzero test
    // below is exact as well.
    std::vector<Rational> bc(dim, Rational(0));
    for (size_t x = 0; x < dim; ++x) {
      if (c[x] == 0) continue;
      for (int j = 0; j < n; ++j) {
        size_t y = x ^ (size_t{1} << j);
        bc[y] += Rational(SigningMatrix::edge_sign(uint32_t(y), j)) * c[x];
      }
    }
    bool nonzero = false;
    if (square) {
      for (size_t x = 0; x < dim && !nonzero; ++x)
        nonzero = (bc[x] + Rational(root) * c[x]) != 0;
    } else {
      // c != 0 already forces v != 0 when sqrt(n) is irrational.
      for (size_t x = 0; x < dim && !nonzero; ++x) nonzero = c[x] != 0;
    }
    if (!nonzero) continue;
    std::vector<double> v(dim);
    for (size_t x = 0; x < dim; ++x)
      v[x] = double(bc[x]) + sqrt_n * double(c[x]);
    return v;
  }
  throw std::logic_error("no +sqrt(n) eigenvector vanishes on the given side");
}

// Floating-point fallback: kernel of the stacked vanishing constraints.
std::vector<double> plus_eigenvector_least_squares(
    const SigningMatrix& b, const std::vector<uint32_t>& zero_side) {
  int n = b.arity();
  uint64_t dim = b.dim();
  double sqrt_n = std::sqrt(double(n));
  Eigen::MatrixXd p = b.dense();
  p.diagonal().array() += sqrt_n;

  if (zero_side.empty()) {
    Eigen::VectorXd v = p.col(0) / p.col(0).norm();
    return std::vector<double>(v.data(), v.data() + v.size());
  }
  Eigen::MatrixXd constraints(zero_side.size(), dim);
  for (size_t r = 0; r < zero_side.size(); ++r)
    constraints.row(r) = p.row(zero_side[r]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(constraints);
  lu.setThreshold(1e-9);
  Eigen::MatrixXd kernel = lu.kernel();
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
    Eigen::VectorXd v = p * kernel.col(k);
    double norm = v.norm();
    if (norm < 1e-8) continue;
    v /= norm;
    double resid = (p * v - 2.0 * sqrt_n * v).norm();  // ||B v - sqrt(n) v||
    if (resid > 1e-8 * sqrt_n) continue;
    return std::vector<double>(v.data(), v.data() + v.size());
  }
  throw std::runtime_error("numerical rank failure extracting the witness");
}

}  // namespace

HuangWitness huang_witness(const TruthTable& f) {
  int n = f.arity();
  if (degree(f) != n)
    throw std::invalid_argument(
        "huang_witness requires deg(f) = n; restrict to a full-degree "
        "subcube first");
  HuangWitness w;
  std::vector<uint32_t> v0, v1;
  for (uint64_t x = 0; x < f.size(); ++x) {
    bool parity = std::popcount(x) & 1;
    if (f.value(x) == parity)
      v0.push_back(uint32_t(x));
    else
      v1.push_back(uint32_t(x));
  }
  w.v0_size = v0.size();
  w.v1_size = v1.size();
  if (v0.size() == v1.size())
    throw std::logic_error(
        "parity split is balanced although deg(f) = n; top Fourier "
        "coefficient cannot vanish");
  w.vanishes_on_v1 = v0.size() > v1.size();
  const auto& zero_side = w.vanishes_on_v1 ? v1 : v0;

  SigningMatrix b(n);
  std::vector<double> v;
  if (n <= kExactWitnessMaxArity) {
    v = plus_eigenvector_exact(b, zero_side);
    w.exact_path = true;
  } else {
    v = plus_eigenvector_least_squares(b, zero_side);
  }

  w.witness.resize(v.size());
  for (size_t i = 0; i < v.size(); ++i) w.witness[i] = std::fabs(v[i]);
  double wnorm = 0;
  for (double x : w.witness) wnorm += x * x;
  wnorm = std::sqrt(wnorm);
  for (double& x : w.witness) x /= wnorm;

  auto dirs = sensitive_directions(f);
  double image = 0;
  for (uint64_t x = 0; x < f.size(); ++x) {
    double acc = 0;
    uint32_t m = dirs[x];
    while (m) {
      int i = std::countr_zero(m);
      m &= m - 1;
      acc += w.witness[x ^ (uint64_t{1} << i)];
    }
    image += acc * acc;
  }
  w.ratio = std::sqrt(image);
  return w;
}

HadamardIdentityReport hadamard_identities(const TruthTable& f) {
  require_arity(f, kHadamardIdentityMaxArity, "hadamard_identities");
  int n = f.arity();
  uint64_t dim = f.size();
  HadamardIdentityReport rep;

  // (a) 2 A_f = A_H - diag(g) A_H diag(g) with g = 1 - 2f, exact integers.
  rep.identity_exact = true;
  for (uint64_t x = 0; x < dim && rep.identity_exact; ++x) {
    int gx = f.value(x) ? -1 : 1;
    for (int i = 0; i < n; ++i) {
      uint64_t y = x ^ (uint64_t{1} << i);
      int gy = f.value(y) ? -1 : 1;
      int lhs = f.value(x) != f.value(y) ? 2 : 0;
      if (lhs != 1 - gx * gy) {
        rep.identity_exact = false;
        break;
      }
    }
  }

  // (b) H A_H H = n*1 - 2X via two rounds of transforms.
  {
    std::vector<double> col(dim);
    double max_resid = 0;
    // Column y of A_H transformed on both sides: conjugating by H amounts to
    // one transform per side; do it column-by-column to stay O(4^n) space
    // free. (H A_H H) e_y = H A_H (H e_y): start from the Hadamard column.
    std::vector<double> hcol(dim);
    for (uint64_t y = 0; y < dim; ++y) {
      for (uint64_t z = 0; z < dim; ++z)
        hcol[z] = ((std::popcount(z & y) & 1) ? -1.0 : 1.0);
      // A_H * hcol
      for (uint64_t z = 0; z < dim; ++z) {
        double acc = 0;
        for (int i = 0; i < n; ++i) acc += hcol[z ^ (uint64_t{1} << i)];
        col[z] = acc;
      }
      fwht_inplace(std::span<double>(col));
      for (uint64_t x = 0; x < dim; ++x) {
        double expected = x == y ? double(n) - 2.0 * std::popcount(x) : 0.0;
        max_resid = std::max(max_resid, std::fabs(col[x] / double(dim) - expected));
      }
    }
    rep.diagonalization_residual = max_resid;
  }

  // (c) top eigenvalue of R X R - X with R = H diag(g) H.
  {
    std::vector<double> g(dim);
    for (uint64_t x = 0; x < dim; ++x) g[x] = f.value(x) ? -1.0 : 1.0;
    double shift = double(n);
    std::vector<double> buf(dim);
    auto apply = [&](const double* in, double* outv) {
      std::copy(in, in + dim, buf.begin());
      fwht_inplace(std::span<double>(buf));
      for (uint64_t x = 0; x < dim; ++x) buf[x] *= g[x];
      fwht_inplace(std::span<double>(buf));
      for (uint64_t x = 0; x < dim; ++x) buf[x] *= double(std::popcount(x));
      fwht_inplace(std::span<double>(buf));
      for (uint64_t x = 0; x < dim; ++x) buf[x] *= g[x];
      fwht_inplace(std::span<double>(buf));
      double scale = 1.0 / double(dim * dim);
      for (uint64_t x = 0; x < dim; ++x)
        outv[x] = buf[x] * scale - double(std::popcount(x)) * in[x] +
                  shift * in[x];
    };
    auto res = power_iteration_confirmed(dim, shift, apply);
    rep.top_eigenvalue = res.eigenvalue;
  }

  rep.lambda = spectral_sensitivity(f).lambda;
  rep.eig_gap = std::fabs(rep.top_eigenvalue - rep.lambda);
  rep.ok = rep.identity_exact && rep.diagonalization_residual <= 1e-9 &&
           rep.eig_gap <= 1e-6;
  return rep;
}

bool direction_slices_are_matchings(const TruthTable& f) {
  // A_f restricted to direction i pairs x with x^e_i only; every row must
  // carry at most a single 1.
  for (int i = 0; i < f.arity(); ++i) {
    for (uint64_t x = 0; x < f.size(); ++x) {
      int nonzeros = 0;
      uint64_t y = x ^ (uint64_t{1} << i);
      if (f.value(x) != f.value(y)) ++nonzeros;
      if (nonzeros > 1) return false;
    }
  }
  return true;
}

}  // namespace bftk
