#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

// Binary vector-space algebra over F_2^m: subspaces in canonical (reduced
// row-echelon) form, quotient maps with deterministic coset indexing,
// subspace enumeration and counting, and the unique-projection schedule
// walker used by the RUPA/IUPA decoders.

namespace rmpa {

// An element of F_2^m is an integer in [0, 2^m); bit (j-1) holds the j-th
// coordinate, so z_1 is the least-significant bit.
using Element = std::uint32_t;

// Largest supported ambient dimension. Keeps 2^m tables and shifts sane.
inline constexpr int kMaxAmbientDim = 20;

/// Index of the highest set bit. Requires v != 0.
int top_bit(Element v);

/// Inserts a zero bit at position `pos`, shifting higher bits up.
Element insert_zero_bit(Element w, int pos);

/// Removes the bit at position `pos`, shifting higher bits down.
Element remove_bit(Element v, int pos);

// Canonical section of the quotient by the one-dimensional subspace {0, i}:
// lift(w, i, m) inserts a 0 at i's highest bit position, producing the coset
// representative whose index is w. Inverse of onedim_coset_index.
Element lift(Element w, Element i, int m);

/// Coset index of z under {0, i}: the coset's representative (the member
/// with i's highest bit clear) with that bit deleted.
Element onedim_coset_index(Element z, Element i);

// An s-dimensional subspace of F_2^m, held as a reduced row-echelon basis:
// pivots strictly descending, each pivot bit clear in every other basis
// vector. The RREF basis is unique per subspace, so equality and ordering
// are plain tuple comparisons.
class Subspace {
 public:
  // Canonicalizes `vectors` to RREF. Throws std::invalid_argument if the
  // vectors are linearly dependent, zero, out of range, or s is not in
  // [1, m].
  Subspace(int ambient_dim, std::vector<Element> vectors);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  std::span<const Element> basis() const { return basis_; }

  bool contains(Element v) const;

  /// All 2^dim members, ascending. Index 0 is always 0.
  std::vector<Element> elements() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace&, const Subspace&) = default;

 private:
  int ambient_dim_;
  std::vector<Element> basis_;
};

// The quotient E/B: a total map from elements to coset indices plus the
// member list of every coset. Cosets are indexed by ascending minimum
// element, so coset 0 is the subspace itself. For one-dimensional
// subspaces this coincides with the bit-deletion rule of
// onedim_coset_index.
class QuotientMap {
 public:
  explicit QuotientMap(Subspace b);

  const Subspace& subspace() const { return subspace_; }
  int ambient_dim() const { return subspace_.ambient_dim(); }
  std::uint32_t coset_count() const;
  std::uint32_t coset_size() const;

  std::uint32_t coset_index(Element z) const { return index_of_[z]; }
  std::span<const Element> coset_members(std::uint32_t coset) const;

 private:
  Subspace subspace_;
  std::vector<std::uint32_t> index_of_;  // 2^m entries
  std::vector<Element> members_;         // grouped by coset, ascending
};

inline QuotientMap quotient_map(const Subspace& b) { return QuotientMap(b); }

// Number of s-dimensional subspaces of F_2^m, computed exactly:
// prod_{i=0}^{s-1} (2^{m-i}-1)/(2^{i+1}-1). Throws std::invalid_argument
// for s > m or negative inputs, std::overflow_error if the result does not
// fit in 64 bits.
std::uint64_t q_binomial(int m, int s);

/// The one-dimensional subspaces B_1..B_{2^m-1}, B_i = {0, i}, in index order.
std::vector<Subspace> enumerate_one_dim(int m);

/// Every s-dimensional subspace of F_2^m exactly once, sorted
/// lexicographically on the RREF basis tuple.
std::vector<Subspace> enumerate_subspaces(int m, int s);

// Composes a chain of one-dimensional projections back into the original
// space: given per-level choices (i_d, ambient dim at that level, which
// must descend by one), returns the subspace of F_2^m spanned by i_0 and
// the successive lifts of i_1, i_2, ... through each level's canonical
// section. Projecting once through this subspace is equivalent to the
// chain of one-dimensional projections.
Subspace induced_subspace(std::span<const std::pair<Element, int>> path);

// One leaf of the unique-projection schedule tree: the chosen index per
// recursion level and the (r-1)-dimensional subspace the chain induces.
struct SchedulePath {
  std::vector<Element> levels;
  Subspace induced;
};

// Enumerates every leaf path of the unique-projection schedule for an
// RM(m,r) decode: at each level the index i runs over [fp, lp] with
// fp = 2^floor(log2 b) (b = parent's chosen index, 1 at the root) and
// lp = 2^{m-r+2}-1. Requires 2 <= r <= m.
std::vector<SchedulePath> enumerate_rupa_paths(int m, int r);

struct ScheduleReport {
  std::uint64_t leaf_count = 0;
  std::uint64_t distinct_count = 0;
  bool complete = false;  // leaf_count == distinct_count == q_binomial(m, r-1)
};

/// Certifies, by exhaustive enumeration, that the unique-projection
/// schedule for RM(m,r) induces every (r-1)-dimensional subspace exactly
/// once.
ScheduleReport verify_unique_schedule(int m, int r);

}  // namespace rmpa
