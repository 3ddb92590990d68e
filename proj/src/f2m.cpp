#include "rmpa/f2m.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

namespace rmpa {

namespace {

void check_ambient_dim(int m) {
  if (m < 1 || m > kMaxAmbientDim) {
    throw std::invalid_argument("ambient dimension must be in [1, " +
                                std::to_string(kMaxAmbientDim) + "], got " +
                                std::to_string(m));
  }
}

// Gaussian elimination to reduced row-echelon form, pivots descending.
// Returns false if the input vectors were dependent (or zero).
bool rref(std::vector<Element>& rows) {
  std::vector<Element> out;
  out.reserve(rows.size());
  for (Element v : rows) {
    // Eliminate every existing pivot from v, then clear v's fresh pivot
    // from the rows already placed. Rows stay mutually reduced throughout.
    for (Element b : out) {
      if (v & (Element{1} << top_bit(b))) v ^= b;
    }
    if (v == 0) return false;
    for (Element& b : out) {
      if (b & (Element{1} << top_bit(v))) b ^= v;
    }
    out.push_back(v);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  rows = std::move(out);
  return true;
}

}  // namespace

int top_bit(Element v) { return std::bit_width(v) - 1; }

Element insert_zero_bit(Element w, int pos) {
  const Element low = w & ((Element{1} << pos) - 1);
  return ((w >> pos) << (pos + 1)) | low;
}

Element remove_bit(Element v, int pos) {
  const Element low = v & ((Element{1} << pos) - 1);
  return ((v >> (pos + 1)) << pos) | low;
}

Element lift(Element w, Element i, int m) {
  if (i == 0) throw std::invalid_argument("lift: subspace index must be nonzero");
  check_ambient_dim(m);
  if (i >> m) throw std::invalid_argument("lift: index out of range");
  if (w >> (m - 1)) throw std::invalid_argument("lift: coset index out of range");
  return insert_zero_bit(w, top_bit(i));
}

Element onedim_coset_index(Element z, Element i) {
  const int h = top_bit(i);
  const Element rep = (z & (Element{1} << h)) ? (z ^ i) : z;
  return remove_bit(rep, h);
}

Subspace::Subspace(int ambient_dim, std::vector<Element> vectors)
    : ambient_dim_(ambient_dim), basis_(std::move(vectors)) {
  check_ambient_dim(ambient_dim_);
  if (basis_.empty() || static_cast<int>(basis_.size()) > ambient_dim_) {
    throw std::invalid_argument("subspace dimension must be in [1, m]");
  }
  for (Element v : basis_) {
    if (v == 0 || (v >> ambient_dim_)) {
      throw std::invalid_argument("basis vector out of range");
    }
  }
  if (!rref(basis_)) {
    throw std::invalid_argument("basis vectors are linearly dependent");
  }
}

bool Subspace::contains(Element v) const {
  for (Element b : basis_) {
    if (v == 0) break;
    if (top_bit(v) == top_bit(b)) v ^= b;
  }
  return v == 0;
}

std::vector<Element> Subspace::elements() const {
  std::vector<Element> out(std::size_t{1} << dim(), 0);
  std::size_t filled = 1;
  for (Element b : basis_) {
    for (std::size_t j = 0; j < filled; ++j) out[filled + j] = out[j] ^ b;
    filled *= 2;
  }
  std::sort(out.begin(), out.end());
  return out;
}

QuotientMap::QuotientMap(Subspace b) : subspace_(std::move(b)) {
  const std::size_t n = std::size_t{1} << subspace_.ambient_dim();
  const std::vector<Element> sub = subspace_.elements();
  index_of_.assign(n, UINT32_MAX);
  members_.reserve(n);
  std::uint32_t next = 0;
  // Ascending scan: the first unassigned element is its coset's minimum,
  // so indices come out sorted by coset minimum and coset 0 is B itself.
  for (Element z = 0; z < n; ++z) {
    if (index_of_[z] != UINT32_MAX) continue;
    for (Element s : sub) {
      index_of_[z ^ s] = next;
      members_.push_back(z ^ s);
    }
    std::sort(members_.end() - sub.size(), members_.end());
    ++next;
  }
}

std::uint32_t QuotientMap::coset_count() const {
  return std::uint32_t{1}
         << (subspace_.ambient_dim() - subspace_.dim());
}

std::uint32_t QuotientMap::coset_size() const {
  return std::uint32_t{1} << subspace_.dim();
}

std::span<const Element> QuotientMap::coset_members(std::uint32_t coset) const {
  const std::size_t sz = coset_size();
  return {members_.data() + std::size_t{coset} * sz, sz};
}

std::uint64_t q_binomial(int m, int s) {
  if (m < 0 || s < 0 || s > m) {
    throw std::invalid_argument("q_binomial requires 0 <= s <= m");
  }
  std::uint64_t result = 1;
  for (int i = 0; i < s; ++i) {
    const std::uint64_t num = (std::uint64_t{1} << (m - i)) - 1;
    const std::uint64_t den = (std::uint64_t{1} << (i + 1)) - 1;
    std::uint64_t prod;
    if (__builtin_mul_overflow(result, num, &prod)) {
      throw std::overflow_error("q_binomial overflows 64 bits");
    }
    result = prod / den;  // partial products are exact integers
  }
  return result;
}

std::vector<Subspace> enumerate_one_dim(int m) {
  check_ambient_dim(m);
  std::vector<Subspace> out;
  out.reserve((std::size_t{1} << m) - 1);
  for (Element i = 1; i < (Element{1} << m); ++i) {
    out.emplace_back(m, std::vector<Element>{i});
  }
  return out;
}

std::vector<Subspace> enumerate_subspaces(int m, int s) {
  check_ambient_dim(m);
  if (s < 1 || s > m) {
    throw std::invalid_argument("enumerate_subspaces requires 1 <= s <= m");
  }

  std::vector<Subspace> out;
  std::vector<int> pivots(s);  // descending bit positions

  // One RREF matrix per (pivot set, free-entry assignment): row j carries
  // pivot bit pivots[j] plus arbitrary bits at non-pivot positions below it.
  auto emit_for_pivots = [&]() {
    Element pivot_mask = 0;
    for (int p : pivots) pivot_mask |= Element{1} << p;

    std::vector<std::vector<int>> free_bits(s);
    std::size_t total = 0;
    for (int j = 0; j < s; ++j) {
      for (int q = 0; q < pivots[j]; ++q) {
        if (!(pivot_mask & (Element{1} << q))) free_bits[j].push_back(q);
      }
      total += free_bits[j].size();
    }

    for (std::uint64_t assign = 0; assign < (std::uint64_t{1} << total); ++assign) {
      std::vector<Element> rows(s);
      std::uint64_t bits = assign;
      for (int j = 0; j < s; ++j) {
        Element row = Element{1} << pivots[j];
        for (int q : free_bits[j]) {
          if (bits & 1) row |= Element{1} << q;
          bits >>= 1;
        }
        rows[j] = row;
      }
      out.emplace_back(m, std::move(rows));
    }
  };

  // Walk all s-subsets of bit positions (ascending odometer).
  std::vector<int> comb(s);
  for (int j = 0; j < s; ++j) comb[j] = j;
  while (true) {
    for (int j = 0; j < s; ++j) pivots[j] = comb[s - 1 - j];
    emit_for_pivots();
    int j = s - 1;
    while (j >= 0 && comb[j] == m - s + j) --j;
    if (j < 0) break;
    ++comb[j];
    for (int l = j + 1; l < s; ++l) comb[l] = comb[l - 1] + 1;
  }

  std::sort(out.begin(), out.end());
  return out;
}

Subspace induced_subspace(std::span<const std::pair<Element, int>> path) {
  if (path.empty()) throw std::invalid_argument("empty projection path");
  const int m = path[0].second;
  check_ambient_dim(m);
  std::vector<Element> vectors;
  vectors.reserve(path.size());
  for (std::size_t d = 0; d < path.size(); ++d) {
    const auto [idx, dim] = path[d];
    if (dim != m - static_cast<int>(d)) {
      throw std::invalid_argument("path ambient dimensions must descend by one");
    }
    if (idx == 0 || (idx >> dim)) {
      throw std::invalid_argument("path index out of range");
    }
    Element v = idx;
    for (std::size_t l = d; l-- > 0;) {
      v = lift(v, path[l].first, path[l].second);
    }
    vectors.push_back(v);
  }
  return Subspace(m, std::move(vectors));
}

namespace {

void walk_rupa(int m, int r, Element branch,
               std::vector<std::pair<Element, int>>& path,
               std::vector<SchedulePath>& out) {
  if (r == 1) {
    std::vector<Element> levels;
    levels.reserve(path.size());
    for (const auto& [idx, dim] : path) levels.push_back(idx);
    out.push_back({std::move(levels), induced_subspace(path)});
    return;
  }
  const Element fp = std::bit_floor(branch);
  const Element lp = (Element{1} << (m - r + 2)) - 1;
  for (Element i = fp; i <= lp; ++i) {
    path.emplace_back(i, m);
    walk_rupa(m - 1, r - 1, i, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<SchedulePath> enumerate_rupa_paths(int m, int r) {
  check_ambient_dim(m);
  if (r < 2 || r > m) {
    throw std::invalid_argument("schedule enumeration requires 2 <= r <= m");
  }
  std::vector<SchedulePath> out;
  std::vector<std::pair<Element, int>> path;
  walk_rupa(m, r, 1, path, out);
  return out;
}

ScheduleReport verify_unique_schedule(int m, int r) {
  const std::vector<SchedulePath> paths = enumerate_rupa_paths(m, r);
  std::set<Subspace> distinct;
  for (const SchedulePath& p : paths) distinct.insert(p.induced);
  ScheduleReport report;
  report.leaf_count = paths.size();
  report.distinct_count = distinct.size();
  report.complete = report.leaf_count == report.distinct_count &&
                    report.distinct_count == q_binomial(m, r - 1);
  return report;
}

}  // namespace rmpa
