#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rmpa/f2m.hpp"

// RM(m,r) code construction, encoding and membership testing, plus the
// optimal first-order decoder (fast Hadamard transform) and a brute-force
// maximum-likelihood oracle for tests.

namespace rmpa {

using BitVec = std::vector<std::uint8_t>;
using Codeword = BitVec;
using LlrVec = std::vector<double>;

// The r-th order Reed-Muller code of blocklength 2^m. Generator rows are
// incidence vectors of the degree-<=r monomials, ordered by degree
// ascending and then lexicographically on the sorted variable subsets.
// Monomial masks use the element bit convention: variable z_j is bit j-1,
// and the monomial evaluates to 1 at z iff (z & mask) == mask.
struct RmCode {
  int m = 0;
  int r = 0;
  int n = 0;  // 2^m
  int k = 0;  // sum_{i<=r} C(m, i)
  std::vector<Element> monomials;  // one mask per generator row
  std::vector<BitVec> generator;   // k rows of length n
  std::vector<BitVec> echelon;     // row basis reduced for membership tests
};

/// Builds RM(m,r). Requires m >= 1 and 0 <= r <= m.
RmCode build_code(int m, int r);

/// c = u G over GF(2). Requires |u| = k.
Codeword encode(const RmCode& code, const BitVec& u);

/// Membership in the row space, by elimination against the echelon basis.
bool is_codeword(const RmCode& code, const BitVec& c);

// XOR-folds a codeword over the cosets of an s-dimensional subspace with
// s <= r; the result is a codeword of RM(m-s, r-s), indexed by the
// quotient's coset rule.
BitVec project_codeword(const RmCode& code, const BitVec& c, const Subspace& b);

/// In-place Walsh-Hadamard transform: W_k = sum_z (-1)^{<k,z>} L(z).
/// Requires a power-of-two length.
void fht(std::span<double> values);

// ML decoding of RM(m,1): picks k* maximizing |W_k| over the transform of
// L (ties: smallest k; a zero maximum counts as non-negative) and returns
// bits c(z) = <k*,z> xor (W_{k*} < 0).
Codeword fht_decode_first_order(const LlrVec& llr);

// Correlation-maximizing search over all 2^k codewords; ties broken by
// smallest message value (message bit j weighted 2^j). Refuses k > 20.
Codeword brute_force_ml(const LlrVec& llr, const RmCode& code);

}  // namespace rmpa
