#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmpa/f2m.hpp"
#include "rmpa/rm_code.hpp"

// The four projection-aggregation decoders for RM(m,r) over LLR input:
//
//   rpa   - recursive projection-aggregation over all one-dimensional
//           subspaces, with internal iterations at every recursion level.
//   cpa   - collapsed: one projection level onto all (r-1)-dimensional
//           subspaces, leave-one-out soft aggregation.
//   rupa  - rpa restricted to the unique-projection schedule; each level
//           projects onto B_i for i in [2^floor(log2 b), 2^{m-r+2}-1].
//   iupa  - rupa without internal iterations below the top level.
//
// Soft projections come in two rules: the exact tanh-product form and the
// hardware-style min-sum approximation.

namespace rmpa {

enum class Algorithm { kRpa, kCpa, kRupa, kIupa };
enum class ProjectionRule { kExactTanh, kMinSum };

// CLI/CSV token names: "rpa", "cpa", "rupa", "iupa" and "tanh", "minsum".
const char* algorithm_name(Algorithm algorithm);
const char* rule_name(ProjectionRule rule);
Algorithm parse_algorithm(const std::string& name);
ProjectionRule parse_rule(const std::string& name);

struct DecoderConfig {
  Algorithm algorithm = Algorithm::kRupa;
  ProjectionRule rule = ProjectionRule::kMinSum;
  int max_iters = 3;    // N_max, outer (and internal) iteration cap
  double theta = 0.05;  // early-stop threshold, in [0, 1)
  double clamp = 40.0;  // magnitude cap for exact-tanh outputs
};

struct DecodeOutcome {
  Codeword codeword;
  int iterations_used = 0;
  bool converged = false;
  std::int64_t first_order_decodes = 0;
  std::int64_t projection_ops = 0;  // coset-combine evaluations
};

/// 2 atanh(prod tanh(x/2)) over a set, with the atanh argument kept away
/// from +-1 and the result magnitude capped at `clamp`.
double combine_exact(std::span<const double> values, double clamp);

/// min |x| times the product of signs over a set; sign(0) counts as +1 and
/// a zero magnitude yields exactly +0.0.
double combine_minsum(std::span<const double> values);

/// Soft projection of an LLR vector onto the cosets of q, exact rule.
LlrVec project_exact(const LlrVec& llr, const QuotientMap& q, double clamp);

/// Soft projection, min-sum rule.
LlrVec project_minsum(const LlrVec& llr, const QuotientMap& q);

// One-dimensional fast paths: projection onto {0, i} without a quotient
// table. Output is identical to the general versions on quotient_map(B_i).
LlrVec project_exact_1d(const LlrVec& llr, Element i, double clamp);
LlrVec project_minsum_1d(const LlrVec& llr, Element i);

/// True iff sum |L - Lhat| <= theta * sum |L|.
bool early_stop(const LlrVec& llr, const LlrVec& llr_hat, double theta);

// One level of recursive aggregation: for decisions (i, y_i) on the
// one-dimensional subspaces {0, i},
//   Lhat(z) = (1/divisor) sum_i (1 - 2 y_i(coset of z)) L(z xor i).
// divisor must equal the number of decisions (n-1 for rpa, lp-fp+1 for the
// unique schedule).
LlrVec aggregate_rpa(const LlrVec& llr,
                     std::span<const std::pair<Element, Codeword>> decisions,
                     std::size_t divisor);

// Collapsed aggregation: for each z and each decided subspace,
//   Lhat(z) = (1/n_P) sum_i (-1)^{y_i(T_z)} p(L over T_z minus z),
// where p is the configured combine rule applied to the remaining coset
// members. maps and decisions are parallel arrays.
LlrVec aggregate_cpa(const LlrVec& llr, std::span<const QuotientMap> maps,
                     std::span<const Codeword> decisions, ProjectionRule rule,
                     double clamp);

// One-shot decoders. rupa_decode's branch is the schedule context inherited
// from the parent level; top-level calls use 1.
DecodeOutcome rpa_decode(const LlrVec& llr, int m, int r, const DecoderConfig& cfg);
DecodeOutcome rupa_decode(const LlrVec& llr, int m, int r, Element branch,
                          const DecoderConfig& cfg);
DecodeOutcome iupa_decode(const LlrVec& llr, int m, int r, const DecoderConfig& cfg);
DecodeOutcome cpa_decode(const LlrVec& llr, int m, int r, const DecoderConfig& cfg);

// Reusable decoder front end. Construction precomputes the (r-1)-dimensional
// quotient tables for cpa; decode() is const and safe to share across
// threads decoding different frames.
class Decoder {
 public:
  Decoder(int m, int r, DecoderConfig cfg);

  DecodeOutcome decode(const LlrVec& llr) const;

  int m() const { return m_; }
  int r() const { return r_; }
  const DecoderConfig& config() const { return cfg_; }

 private:
  int m_;
  int r_;
  DecoderConfig cfg_;
  std::vector<QuotientMap> cpa_maps_;
};

struct ProjectionCounts {
  std::uint64_t total = 0;       // N_T: leaves of the unpruned recursion tree
  std::uint64_t unique = 0;      // N_U: distinct (r-1)-dimensional subspaces
  std::uint64_t duplicates = 0;  // N_D = N_T - N_U
};

/// Exact first-order projection counts for an RM(m,r) decode, 2 <= r <= m.
ProjectionCounts duplicate_count(int m, int r);

// The first-order LLR vectors produced by a single projection pass of the
// configured algorithm, each paired with the subspace of the original
// F_2^m it projects through. Diagnostic surface for schedule tests.
std::vector<std::pair<Subspace, LlrVec>> first_order_inputs(
    const LlrVec& llr, int m, int r, const DecoderConfig& cfg);

}  // namespace rmpa
