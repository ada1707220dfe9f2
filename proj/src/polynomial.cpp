#include "bftk/polynomial.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace bftk {

double MultilinearPolynomial::evaluate(uint32_t x) const {
  double v = 0;
  for (auto [mask, c] : terms)
    if ((mask & x) == mask) v += c;
  return v;
}

int MultilinearPolynomial::degree() const {
  int d = 0;
  for (auto [mask, c] : terms)
    if (c != 0.0) d = std::max(d, std::popcount(mask));
  return d;
}

double MultilinearPolynomial::coefficient(uint32_t mask) const {
  for (auto [m, c] : terms)
    if (m == mask) return c;
  return 0.0;
}

double MultilinearPolynomial::sup_norm() const {
  double best = 0;
  for (uint64_t x = 0; x < (uint64_t{1} << n); ++x)
    best = std::max(best, std::fabs(evaluate(uint32_t(x))));
  return best;
}

std::vector<int64_t> mobius_coefficients(const TruthTable& f) {
  uint64_t size = f.size();
  std::vector<int64_t> c(size);
  for (uint64_t x = 0; x < size; ++x) c[x] = f.value(x);
  // Subset Moebius transform, one variable at a time.
  for (int i = 0; i < f.arity(); ++i) {
    uint64_t bit = uint64_t{1} << i;
    for (uint64_t x = 0; x < size; ++x)
      if (x & bit) c[x] -= c[x ^ bit];
  }
  return c;
}

MultilinearPolynomial mobius(const TruthTable& f) {
  auto coeffs = mobius_coefficients(f);
  MultilinearPolynomial p;
  p.n = f.arity();
  for (uint64_t mask = 0; mask < coeffs.size(); ++mask)
    if (coeffs[mask] != 0) p.terms.emplace_back(uint32_t(mask), double(coeffs[mask]));
  return p;
}

int degree(const TruthTable& f) {
  auto coeffs = mobius_coefficients(f);
  int d = 0;
  for (uint64_t mask = 0; mask < coeffs.size(); ++mask)
    if (coeffs[mask] != 0) d = std::max(d, std::popcount(mask));
  return d;
}

std::vector<uint8_t> reed_muller_coefficients(const TruthTable& f) {
  uint64_t size = f.size();
  std::vector<uint8_t> c(size);
  for (uint64_t x = 0; x < size; ++x) c[x] = f.value(x);
  for (int i = 0; i < f.arity(); ++i) {
    uint64_t bit = uint64_t{1} << i;
    for (uint64_t x = 0; x < size; ++x)
      if (x & bit) c[x] ^= c[x ^ bit];
  }
  return c;
}

int degree_gf2(const TruthTable& f) {
  auto c = reed_muller_coefficients(f);
  int d = 0;
  for (uint64_t mask = 0; mask < c.size(); ++mask)
    if (c[mask]) d = std::max(d, std::popcount(mask));
  return d;
}

namespace {

template <class T>
void fwht_impl(std::span<T> data) {
  size_t size = data.size();
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("fwht length must be a power of two");
  for (size_t half = 1; half < size; half <<= 1) {
    for (size_t block = 0; block < size; block += 2 * half) {
      for (size_t i = block; i < block + half; ++i) {
        T a = data[i], b = data[i + half];
        data[i] = a + b;
        data[i + half] = a - b;
      }
    }
  }
}

}  // namespace

void fwht_inplace(std::span<int64_t> data) { fwht_impl(data); }
void fwht_inplace(std::span<double> data) { fwht_impl(data); }

int FourierSpectrum::degree() const {
  int d = 0;
  for (uint64_t s = 0; s < numerators.size(); ++s)
    if (numerators[s] != 0) d = std::max(d, std::popcount(s));
  return d;
}

FourierSpectrum fourier(const TruthTable& f) {
  FourierSpectrum spec;
  spec.n = f.arity();
  spec.numerators.resize(f.size());
  for (uint64_t x = 0; x < f.size(); ++x)
    spec.numerators[x] = f.value(x);
  fwht_inplace(std::span<int64_t>(spec.numerators));
  return spec;
}

}  // namespace bftk
