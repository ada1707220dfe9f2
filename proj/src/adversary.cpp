#include "bftk/adversary.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "bftk/approx.hpp"
#include "bftk/linalg.hpp"
#include "bftk/measures.hpp"

namespace bftk {

double EdgeWeightScheme::weighted_degree(uint32_t x) const {
  double wt = 0;
  for (const auto& [edge, w] : weights)
    if (edge.first == x || edge.second == x) wt += w;
  return wt;
}

Swa1Result swa1_witness(const TruthTable& f) {
  auto spectral = spectral_sensitivity(f);
  if (spectral.lambda <= 0.0)
    throw std::invalid_argument(
        "swa1_witness needs a nonempty sensitivity graph");
  auto graph = sensitivity_graph(f);

  Swa1Result res;
  res.lambda = spectral.lambda;
  res.scheme.n = f.arity();
  // The limit vector vanishes exactly on components below the top
  // eigenvalue; iteration dust there never shrinks the weight RATIOS, so
  // the reconstructed support drops weights far below the maximum.
  double max_w = 0.0;
  for (auto [x, y] : graph.edges)
    max_w = std::max(max_w, spectral.principal[x] * spectral.principal[y]);
  double floor = max_w * 1e-9;
  std::vector<double> wt(f.size(), 0.0);
  for (auto [x, y] : graph.edges) {
    double w = spectral.principal[x] * spectral.principal[y];
    if (w <= floor) continue;
    res.scheme.weights.push_back({{x, y}, w});
    wt[x] += w;
    wt[y] += w;
  }
  if (res.scheme.weights.empty())
    throw std::logic_error("principal vector vanished on every edge");

  double value = std::numeric_limits<double>::infinity();
  for (const auto& [edge, w] : res.scheme.weights)
    value = std::min(value, std::sqrt(wt[edge.first] * wt[edge.second]) / w);
  res.value = value;
  return res;
}

Mm1Report mm1_verify(const TruthTable& f, const MinimaxWeightScheme& w) {
  if (w.n != f.arity())
    throw std::invalid_argument("scheme arity does not match the function");
  Mm1Report rep;
  rep.feasible = true;
  for (uint64_t x = 0; x < f.size() && rep.feasible; ++x) {
    bool fx = f.value(x);
    for (int i = 0; i < f.arity(); ++i) {
      uint64_t y = x ^ (uint64_t{1} << i);
      if (f.value(y) == fx) continue;
      if (w.at(x, i) * w.at(y, i) < 1.0 - 1e-9) {
        rep.feasible = false;
        rep.violating_pair = {x, i + 1};
        break;
      }
    }
  }
  double objective = 0;
  for (uint64_t x = 0; x < f.size(); ++x) {
    double row = 0;
    for (int i = 0; i < f.arity(); ++i) row += w.at(x, i);
    objective = std::max(objective, row);
  }
  rep.objective = objective;
  rep.lambda = spectral_sensitivity(f).lambda;
  rep.weak_duality_ok = rep.feasible && rep.objective >= rep.lambda - 1e-6;
  return rep;
}

MinimaxWeightScheme mm1_sensitivity_scheme(const TruthTable& f) {
  auto prof = sensitivity(f);
  if (prof.s0 == 0 || prof.s1 == 0)
    throw std::invalid_argument(
        "sensitivity scheme needs a non-constant function");
  double one_side = std::sqrt(double(prof.s0) / double(prof.s1));
  double zero_side = std::sqrt(double(prof.s1) / double(prof.s0));
  MinimaxWeightScheme w;
  w.n = f.arity();
  w.w.assign(f.size() * uint64_t(f.arity()), 0.0);
  // Weight only the sensitive pairs; the objective bound
  // s_x * sqrt(s0/s1) <= sqrt(s0 s1) needs the zero elsewhere.
  for (uint64_t x = 0; x < f.size(); ++x) {
    bool fx = f.value(x);
    for (int i = 0; i < f.arity(); ++i) {
      uint64_t y = x ^ (uint64_t{1} << i);
      if (f.value(y) != fx) w.at(x, i) = fx ? one_side : zero_side;
    }
  }
  return w;
}

MinimaxWeightScheme mm1_compose(const TruthTable& f, const TruthTable& g,
                                const MinimaxWeightScheme& wf,
                                const MinimaxWeightScheme& wg) {
  int n = f.arity(), m = g.arity();
  MinimaxWeightScheme w;
  w.n = n * m;
  uint64_t size = uint64_t{1} << (n * m);
  w.w.assign(size * uint64_t(n * m), 0.0);
  uint64_t block_mask = (uint64_t{1} << m) - 1;
  for (uint64_t x = 0; x < size; ++x) {
    uint64_t inner = 0;
    for (int i = 0; i < n; ++i)
      inner |= uint64_t{g.value((x >> (i * m)) & block_mask)} << i;
    for (int i = 0; i < n; ++i) {
      uint64_t block = (x >> (i * m)) & block_mask;
      for (int j = 0; j < m; ++j)
        w.at(x, i * m + j) = wf.at(inner, i) * wg.at(block, j);
    }
  }
  return w;
}

double gamma2_upper(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                    Eigen::MatrixXd* product) {
  if (x.rows() != y.rows())
    throw std::invalid_argument("factor inner dimensions do not agree");
  if (product) *product = x.transpose() * y;
  double cx = 0, cy = 0;
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    cx = std::max(cx, x.col(c).norm());
  for (Eigen::Index c = 0; c < y.cols(); ++c)
    cy = std::max(cy, y.col(c).norm());
  return cx * cy;
}

Gamma2Certificate build_gamma2_certificate(int n, int d) {
  if (d < 1 || d > n)
    throw std::invalid_argument("need 1 <= d <= n");
  Gamma2Certificate cert;
  cert.n = n;
  cert.d = d;
  cert.s = Eigen::MatrixXi::Zero(2 * d, n + 1);
  cert.t = Eigen::MatrixXi::Zero(2 * d, n + 1);
  // Residue rule: write s + j = a + 2d*b; the first d residues put a signed
  // 1 into S, the rest into T.
  for (int j = 0; j < 2 * d; ++j) {
    for (int s = 0; s <= n; ++s) {
      int a = (s + j) % (2 * d);
      int b = (s + j) / (2 * d);
      int sign = (b & 1) ? -1 : 1;
      if (a < d)
        cert.s(j, s) = sign;
      else
        cert.t(j, s) = -sign;
    }
  }
  for (int col = 0; col <= n; ++col) {
    int s_nonzero = 0, t_nonzero = 0;
    for (int j = 0; j < 2 * d; ++j) {
      s_nonzero += cert.s(j, col) != 0;
      t_nonzero += cert.t(j, col) != 0;
    }
    if (s_nonzero != d || t_nonzero != d)
      throw std::logic_error("certificate column support must be exactly d");
  }
  Eigen::MatrixXi m = cert.product();
  for (int s = 0; s <= n; ++s)
    for (int t = 0; t <= n; ++t)
      if (std::abs(s - t) <= d && m(s, t) != s - t)
        throw std::logic_error("certificate product misses the band values");
  return cert;
}

BqMatrix build_bq(const TruthTable& f, const MultilinearPolynomial& q) {
  if (f.arity() > 10)
    throw std::invalid_argument("build_bq supports arity <= 10");
  if (q.n != f.arity())
    throw std::invalid_argument("polynomial arity does not match the function");
  uint64_t dim = f.size();
  std::vector<double> values(dim);
  for (uint64_t x = 0; x < dim; ++x) {
    values[x] = q.evaluate(uint32_t(x));
    // Signed convention: strictly positive on 1-inputs, negative on
    // 0-inputs, magnitudes at most 1.
    if (std::fabs(values[x]) > 1.0 + 1e-9 ||
        (f.value(x) ? values[x] <= 0.0 : values[x] >= 0.0))
      throw std::invalid_argument(
          "polynomial does not follow the signed convention");
  }

  BqMatrix out;
  out.n = f.arity();
  out.b = Eigen::MatrixXd::Zero(dim, dim);
  for (uint64_t x = 0; x < dim; ++x)
    for (int i = 0; i < f.arity(); ++i) {
      uint64_t y = x ^ (uint64_t{1} << i);
      out.b(x, y) = 0.5 * (values[x] - values[y]);
    }
  out.norm = spectral_norm(out.b);

  Eigen::MatrixXd r = r_tilde(q);
  for (uint64_t x = 0; x < dim; ++x)
    for (uint64_t y = 0; y < dim; ++y)
      r(x, y) *= double(std::popcount(x)) - double(std::popcount(y));
  out.conjugated_norm = spectral_norm(r);
  if (std::fabs(out.norm - out.conjugated_norm) > 1e-7)
    throw std::logic_error("||B_q|| and ||W o R~|| disagree beyond 1e-7");
  return out;
}

ChainReport certificate_chain(const TruthTable& f, double epsilon) {
  if (f.arity() > kApproxDegreeMaxArity)
    throw std::invalid_argument("certificate_chain supports arity <= 5");
  ChainReport rep;
  rep.epsilon = epsilon;
  auto adeg = approx_degree(f, epsilon, Convention::kSigned);
  rep.degree = adeg.degree;
  rep.lambda = spectral_sensitivity(f).lambda;

  if (adeg.degree == 0) {  // constant-representable: every link is 0
    rep.bq_norm = 0.0;
    rep.gamma2_value = 0.0;
    rep.links.push_back({"lambda<=bq/(1-2e)", rep.lambda, 0.0, rep.lambda <= 1e-6});
    rep.ok = rep.links.back().ok;
    return rep;
  }

  auto bq = build_bq(f, adeg.witness);
  rep.bq_norm = bq.norm;
  auto cert = build_gamma2_certificate(f.arity(), adeg.degree);
  rep.gamma2_value = cert.value();

  double scale = 1.0 / (1.0 - 2.0 * epsilon);
  auto link = [&](std::string name, double lhs, double rhs) {
    rep.links.push_back({std::move(name), lhs, rhs, lhs <= rhs + 1e-6});
  };
  link("lambda<=bq/(1-2e)", rep.lambda, bq.norm * scale);
  link("bq/(1-2e)<=gamma2/(1-2e)", bq.norm * scale, rep.gamma2_value * scale);
  link("gamma2/(1-2e)<=d/(1-2e)", rep.gamma2_value * scale,
       double(adeg.degree) * scale);
  rep.ok = true;
  for (const auto& l : rep.links) rep.ok = rep.ok && l.ok;
  return rep;
}

bool hadamard_product_bound(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                            const Eigen::MatrixXd& x,
                            const Eigen::MatrixXd& y) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("Hadamard product needs equal shapes");
  Eigen::MatrixXd product;
  double bound = gamma2_upper(x, y, &product);
  if (product.rows() != a.rows() || product.cols() != a.cols() ||
      (product - a).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("factorization does not reproduce A");
  Eigen::MatrixXd had = a.cwiseProduct(b);
  return spectral_norm(had) <= bound * spectral_norm(b) + 1e-7;
}

double composed_rayleigh_quotient(const TruthTable& f, const TruthTable& g,
                                  const std::vector<double>& v,
                                  const std::vector<double>& u) {
  int n = f.arity(), m = g.arity();
  TruthTable h = compose(f, g);
  uint64_t size = h.size();
  uint64_t block_mask = (uint64_t{1} << m) - 1;
  std::vector<double> alpha(size);
  double scale = std::pow(2.0, double(n) / 2.0);
  for (uint64_t x = 0; x < size; ++x) {
    uint64_t inner = 0;
    double prod = scale;
    for (int i = 0; i < n; ++i) {
      uint64_t block = (x >> (i * m)) & block_mask;
      inner |= uint64_t{g.value(block)} << i;
      prod *= u[block];
    }
    alpha[x] = prod * v[inner];
  }
  double norm2 = 0, quad = 0;
  for (uint64_t x = 0; x < size; ++x) norm2 += alpha[x] * alpha[x];
  for (uint64_t x = 0; x < size; ++x) {
    bool hx = h.value(x);
    for (int k = 0; k < n * m; ++k) {
      uint64_t y = x ^ (uint64_t{1} << k);
      if (h.value(y) != hx) quad += alpha[x] * alpha[y];
    }
  }
  if (norm2 == 0.0) throw std::invalid_argument("zero product vector");
  return quad / norm2;
}

}  // namespace bftk
