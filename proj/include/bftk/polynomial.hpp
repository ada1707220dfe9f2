#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bftk/truth_table.hpp"

namespace bftk {

/// Sparse multilinear polynomial sum_S c_S * prod_{i in S} x_i over the
/// 0/1 cube. Terms are keyed by the variable-set bitmask and kept sorted.
struct MultilinearPolynomial {
  int n = 0;
  std::vector<std::pair<uint32_t, double>> terms;

  double evaluate(uint32_t x) const;
  int degree() const;  // max |S| over nonzero terms; 0 for the zero polynomial
  double coefficient(uint32_t mask) const;
  double sup_norm() const;  // max_x |p(x)| over the cube
};

/// Exact Moebius coefficients, dense over subset masks:
/// c_S = sum_{T subseteq S} (-1)^{|S|-|T|} f(T). Integer-valued by
/// construction; evaluating at any 0/1 point reproduces f exactly.
std::vector<int64_t> mobius_coefficients(const TruthTable& f);

/// The unique multilinear polynomial agreeing with f on {0,1}^n.
MultilinearPolynomial mobius(const TruthTable& f);

/// Real degree deg(f), read off the Moebius coefficients. Constants have
/// degree 0.
int degree(const TruthTable& f);

/// Algebraic normal form over GF(2): c_S = XOR_{T subseteq S} f(T).
std::vector<uint8_t> reed_muller_coefficients(const TruthTable& f);

/// GF(2) degree deg2(f) <= deg(f).
int degree_gf2(const TruthTable& f);

/// In-place unnormalized Walsh-Hadamard transform:
/// out[s] = sum_x (-1)^<s,x> in[x]. Involution up to the factor 2^n.
void fwht_inplace(std::span<int64_t> data);
void fwht_inplace(std::span<double> data);

/// Fourier coefficients of the {0,1}-valued function:
/// fhat(S) = E_x[f(x) * (-1)^{sum_{i in S} x_i}], stored exactly as
/// numerator / 2^n.
struct FourierSpectrum {
  int n = 0;
  std::vector<int64_t> numerators;

  double value(uint32_t s) const {
    return double(numerators[s]) / double(uint64_t{1} << n);
  }
  int degree() const;  // max |S| with fhat(S) != 0
};

FourierSpectrum fourier(const TruthTable& f);

}  // namespace bftk
