#include "rmpa/rm_code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace rmpa {

namespace {

// Degree-ascending, then lexicographic on the sorted variable subset.
// {z_1,z_4} precedes {z_2,z_3}, which plain mask order would get wrong.
std::vector<Element> monomials_in_order(int m, int r) {
  std::vector<Element> masks;
  for (Element mask = 0; mask < (Element{1} << m); ++mask) {
    if (std::popcount(mask) <= r) masks.push_back(mask);
  }
  auto variables = [m](Element mask) {
    std::vector<int> vars;
    for (int j = 0; j < m; ++j) {
      if (mask & (Element{1} << j)) vars.push_back(j);
    }
    return vars;
  };
  std::sort(masks.begin(), masks.end(), [&](Element a, Element b) {
    const int da = std::popcount(a), db = std::popcount(b);
    if (da != db) return da < db;
    return variables(a) < variables(b);
  });
  return masks;
}

int first_set(const BitVec& v) {
  for (std::size_t z = 0; z < v.size(); ++z) {
    if (v[z]) return static_cast<int>(z);
  }
  return -1;
}

// Row-echelon basis with leading columns ascending. A vector is in the row
// space iff reduce_against leaves it zero.
std::vector<BitVec> echelon_basis(std::vector<BitVec> rows) {
  std::vector<BitVec> basis;
  std::vector<int> leads;
  for (BitVec& row : rows) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (first_set(row) == leads[j]) {
        for (std::size_t z = 0; z < row.size(); ++z) row[z] ^= basis[j][z];
      }
    }
    const int lead = first_set(row);
    if (lead < 0) continue;
    basis.push_back(std::move(row));
    leads.push_back(lead);
    for (std::size_t j = basis.size() - 1; j > 0 && leads[j] < leads[j - 1]; --j) {
      std::swap(basis[j], basis[j - 1]);
      std::swap(leads[j], leads[j - 1]);
    }
  }
  return basis;
}

void reduce_against(const std::vector<BitVec>& basis, BitVec& v) {
  for (const BitVec& b : basis) {
    const int lead = first_set(b);
    if (lead >= 0 && v[lead]) {
      for (std::size_t z = 0; z < v.size(); ++z) v[z] ^= b[z];
    }
  }
}

}  // namespace

RmCode build_code(int m, int r) {
  if (m < 1 || m > kMaxAmbientDim || r < 0 || r > m) {
    throw std::invalid_argument("build_code requires 1 <= m and 0 <= r <= m");
  }
  RmCode code;
  code.m = m;
  code.r = r;
  code.n = 1 << m;
  code.monomials = monomials_in_order(m, r);
  code.k = static_cast<int>(code.monomials.size());
  code.generator.reserve(code.k);
  for (Element mask : code.monomials) {
    BitVec row(code.n);
    for (Element z = 0; z < static_cast<Element>(code.n); ++z) {
      row[z] = ((z & mask) == mask) ? 1 : 0;
    }
    code.generator.push_back(std::move(row));
  }
  code.echelon = echelon_basis(code.generator);
  return code;
}

Codeword encode(const RmCode& code, const BitVec& u) {
  if (static_cast<int>(u.size()) != code.k) {
    throw std::invalid_argument("message length must equal k");
  }
  Codeword c(code.n, 0);
  for (int j = 0; j < code.k; ++j) {
    if (!u[j]) continue;
    for (int z = 0; z < code.n; ++z) c[z] ^= code.generator[j][z];
  }
  return c;
}

bool is_codeword(const RmCode& code, const BitVec& c) {
  if (static_cast<int>(c.size()) != code.n) {
    throw std::invalid_argument("vector length must equal n");
  }
  BitVec v = c;
  reduce_against(code.echelon, v);
  return std::all_of(v.begin(), v.end(), [](std::uint8_t b) { return b == 0; });
}

BitVec project_codeword(const RmCode& code, const BitVec& c, const Subspace& b) {
  if (static_cast<int>(c.size()) != code.n) {
    throw std::invalid_argument("vector length must equal n");
  }
  if (b.ambient_dim() != code.m) {
    throw std::invalid_argument("subspace ambient dimension mismatch");
  }
  if (b.dim() > code.r) {
    throw std::invalid_argument(
        "projection dimension exceeds code order; no RM structure remains");
  }
  const QuotientMap q(b);
  BitVec out(q.coset_count(), 0);
  for (Element z = 0; z < static_cast<Element>(code.n); ++z) {
    out[q.coset_index(z)] ^= c[z];
  }
  return out;
}

void fht(std::span<double> values) {
  const std::size_t n = values.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("transform length must be a power of two");
  }
  for (std::size_t h = 1; h < n; h *= 2) {
    for (std::size_t base = 0; base < n; base += 2 * h) {
      for (std::size_t j = base; j < base + h; ++j) {
        const double a = values[j];
        const double b = values[j + h];
        values[j] = a + b;
        values[j + h] = a - b;
      }
    }
  }
}

Codeword fht_decode_first_order(const LlrVec& llr) {
  const std::size_t n = llr.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("LLR length must be a power of two");
  }
  std::vector<double> w(llr.begin(), llr.end());
  fht(w);
  std::size_t best = 0;
  double best_mag = std::abs(w[0]);
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(w[k]) > best_mag) {
      best_mag = std::abs(w[k]);
      best = k;
    }
  }
  const std::uint8_t flip = w[best] < 0.0 ? 1 : 0;
  Codeword c(n);
  for (std::size_t z = 0; z < n; ++z) {
    c[z] = (std::popcount(best & z) & 1) ^ flip;
  }
  return c;
}

Codeword brute_force_ml(const LlrVec& llr, const RmCode& code) {
  if (static_cast<int>(llr.size()) != code.n) {
    throw std::invalid_argument("LLR length must equal n");
  }
  if (code.k > 20) {
    throw std::invalid_argument("brute_force_ml refuses k > 20");
  }
  BitVec u(code.k, 0);
  Codeword best;
  double best_corr = 0.0;
  for (std::uint32_t msg = 0; msg < (std::uint32_t{1} << code.k); ++msg) {
    for (int j = 0; j < code.k; ++j) u[j] = (msg >> j) & 1;
    const Codeword c = encode(code, u);
    double corr = 0.0;
    for (int z = 0; z < code.n; ++z) corr += (1.0 - 2.0 * c[z]) * llr[z];
    if (msg == 0 || corr > best_corr) {
      best_corr = corr;
      best = c;
    }
  }
  return best;
}

}  // namespace rmpa
