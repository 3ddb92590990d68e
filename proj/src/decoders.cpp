#include "rmpa/decoders.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmpa {

namespace {

constexpr double kAtanhGuard = 1.0 - 1e-12;

double clamp_llr(double t, double clamp) {
  t = std::clamp(t, -kAtanhGuard, kAtanhGuard);
  return std::clamp(2.0 * std::atanh(t), -clamp, clamp);
}

double combine2_exact(double a, double b, double clamp) {
  return clamp_llr(std::tanh(0.5 * a) * std::tanh(0.5 * b), clamp);
}

double combine2_minsum(double a, double b) {
  const double mag = std::min(std::abs(a), std::abs(b));
  if (mag == 0.0) return 0.0;
  return ((a < 0.0) != (b < 0.0)) ? -mag : mag;
}

void check_llr(const LlrVec& llr, int m) {
  if (llr.size() != (std::size_t{1} << m)) {
    throw std::invalid_argument("LLR length must equal 2^m");
  }
  for (double v : llr) {
    if (!std::isfinite(v)) throw std::invalid_argument("LLR entries must be finite");
  }
}

void check_config(const DecoderConfig& cfg) {
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(cfg.theta >= 0.0 && cfg.theta < 1.0)) {
    throw std::invalid_argument("theta must be in [0, 1)");
  }
  if (!(cfg.clamp > 0.0)) throw std::invalid_argument("clamp must be positive");
}

void check_code_dims(int m, int r) {
  if (m < 1 || m > kMaxAmbientDim || r < 1 || r > m) {
    throw std::invalid_argument("decoder requires 1 <= r <= m");
  }
}

// Projection index range at one recursion level: [fp, lp] with
// fp = 2^floor(log2 branch) under the unique schedule (1 otherwise) and
// lp = 2^{m-r+2}-1 under the unique schedule (2^m - 1 otherwise).
std::pair<Element, Element> schedule_range(int m, int r, Element branch,
                                           bool unique) {
  const Element fp = unique ? std::bit_floor(branch) : 1;
  const Element lp =
      unique ? (Element{1} << (m - r + 2)) - 1 : (Element{1} << m) - 1;
  return {fp, lp};
}

struct Counters {
  std::int64_t first_order = 0;
  std::int64_t projections = 0;
};

struct RecursionMode {
  bool unique_schedule = false;
  bool internal_iters = true;
};

struct RecResult {
  Codeword bits;
  int iterations = 0;
  bool converged = false;
};

LlrVec project_1d(const LlrVec& llr, Element i, ProjectionRule rule,
                  double clamp) {
  return rule == ProjectionRule::kMinSum ? project_minsum_1d(llr, i)
                                         : project_exact_1d(llr, i, clamp);
}

RecResult recursive_decode(const LlrVec& input, int m, int r, Element branch,
                           const DecoderConfig& cfg, RecursionMode mode,
                           int depth, Counters& counters) {
  if (r == 1) {
    ++counters.first_order;
    return {fht_decode_first_order(input), 1, true};
  }

  const auto [fp, lp] = schedule_range(m, r, branch, mode.unique_schedule);
  if (fp > lp) throw std::invalid_argument("branch number outside schedule");

  const bool iterate = mode.internal_iters || depth == 0;
  const int max_iters = iterate ? cfg.max_iters : 1;

  LlrVec llr = input;
  std::vector<std::pair<Element, Codeword>> decisions;
  decisions.reserve(lp - fp + 1);

  int used = 0;
  bool converged = false;
  for (int it = 0; it < max_iters; ++it) {
    ++used;
    decisions.clear();
    for (Element i = fp; i <= lp; ++i) {
      LlrVec proj = project_1d(llr, i, cfg.rule, cfg.clamp);
      counters.projections += static_cast<std::int64_t>(proj.size());
      decisions.emplace_back(
          i, recursive_decode(proj, m - 1, r - 1, i, cfg, mode, depth + 1,
                              counters)
                 .bits);
    }
    LlrVec llr_hat = aggregate_rpa(llr, decisions, decisions.size());
    const bool stop = iterate && early_stop(llr, llr_hat, cfg.theta);
    llr = std::move(llr_hat);
    if (stop) {
      converged = true;
      break;
    }
  }

  Codeword bits(llr.size());
  for (std::size_t z = 0; z < llr.size(); ++z) bits[z] = llr[z] < 0.0 ? 1 : 0;
  return {std::move(bits), used, converged};
}

DecodeOutcome run_recursive(const LlrVec& llr, int m, int r, Element branch,
                            const DecoderConfig& cfg, RecursionMode mode) {
  check_code_dims(m, r);
  check_config(cfg);
  check_llr(llr, m);
  if (branch < 1) throw std::invalid_argument("branch number must be >= 1");
  Counters counters;
  RecResult res = recursive_decode(llr, m, r, branch, cfg, mode, 0, counters);
  DecodeOutcome out;
  out.codeword = std::move(res.bits);
  out.iterations_used = res.iterations;
  out.converged = res.converged;
  out.first_order_decodes = counters.first_order;
  out.projection_ops = counters.projections;
  return out;
}

DecodeOutcome run_cpa(const LlrVec& llr, int m, const DecoderConfig& cfg,
                      std::span<const QuotientMap> maps) {
  check_config(cfg);
  check_llr(llr, m);

  Counters counters;
  LlrVec cur = llr;
  std::vector<Codeword> decisions(maps.size());

  int used = 0;
  bool converged = false;
  for (int it = 0; it < cfg.max_iters; ++it) {
    ++used;
    for (std::size_t j = 0; j < maps.size(); ++j) {
      LlrVec proj = cfg.rule == ProjectionRule::kMinSum
                        ? project_minsum(cur, maps[j])
                        : project_exact(cur, maps[j], cfg.clamp);
      counters.projections += static_cast<std::int64_t>(proj.size());
      decisions[j] = fht_decode_first_order(proj);
      ++counters.first_order;
    }
    LlrVec hat = aggregate_cpa(cur, maps, decisions, cfg.rule, cfg.clamp);
    const bool stop = early_stop(cur, hat, cfg.theta);
    cur = std::move(hat);
    if (stop) {
      converged = true;
      break;
    }
  }

  DecodeOutcome out;
  out.codeword.resize(cur.size());
  for (std::size_t z = 0; z < cur.size(); ++z) {
    out.codeword[z] = cur[z] < 0.0 ? 1 : 0;
  }
  out.iterations_used = used;
  out.converged = converged;
  out.first_order_decodes = counters.first_order;
  out.projection_ops = counters.projections;
  return out;
}

}  // namespace

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRpa: return "rpa";
    case Algorithm::kCpa: return "cpa";
    case Algorithm::kRupa: return "rupa";
    case Algorithm::kIupa: return "iupa";
  }
  throw std::logic_error("unknown algorithm");
}

const char* rule_name(ProjectionRule rule) {
  return rule == ProjectionRule::kMinSum ? "minsum" : "tanh";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "rpa") return Algorithm::kRpa;
  if (name == "cpa") return Algorithm::kCpa;
  if (name == "rupa") return Algorithm::kRupa;
  if (name == "iupa") return Algorithm::kIupa;
  throw std::invalid_argument("unknown decoder '" + name +
                              "' (expected rpa, cpa, rupa, or iupa)");
}

ProjectionRule parse_rule(const std::string& name) {
  if (name == "tanh") return ProjectionRule::kExactTanh;
  if (name == "minsum") return ProjectionRule::kMinSum;
  throw std::invalid_argument("unknown rule '" + name +
                              "' (expected tanh or minsum)");
}

double combine_exact(std::span<const double> values, double clamp) {
  double t = 1.0;
  for (double v : values) t *= std::tanh(0.5 * v);
  return clamp_llr(t, clamp);
}

double combine_minsum(std::span<const double> values) {
  double mag = std::numeric_limits<double>::infinity();
  bool negative = false;
  for (double v : values) {
    mag = std::min(mag, std::abs(v));
    negative ^= (v < 0.0);
  }
  if (mag == 0.0) return 0.0;
  return negative ? -mag : mag;
}

LlrVec project_exact(const LlrVec& llr, const QuotientMap& q, double clamp) {
  check_llr(llr, q.ambient_dim());
  LlrVec out(q.coset_count());
  for (std::uint32_t c = 0; c < q.coset_count(); ++c) {
    double t = 1.0;
    for (Element z : q.coset_members(c)) t *= std::tanh(0.5 * llr[z]);
    out[c] = clamp_llr(t, clamp);
  }
  return out;
}

LlrVec project_minsum(const LlrVec& llr, const QuotientMap& q) {
  check_llr(llr, q.ambient_dim());
  LlrVec out(q.coset_count());
  for (std::uint32_t c = 0; c < q.coset_count(); ++c) {
    double mag = std::numeric_limits<double>::infinity();
    bool negative = false;
    for (Element z : q.coset_members(c)) {
      mag = std::min(mag, std::abs(llr[z]));
      negative ^= (llr[z] < 0.0);
    }
    out[c] = (mag == 0.0) ? 0.0 : (negative ? -mag : mag);
  }
  return out;
}

LlrVec project_exact_1d(const LlrVec& llr, Element i, double clamp) {
  if (i == 0 || i >= llr.size()) {
    throw std::invalid_argument("subspace index out of range");
  }
  const int h = top_bit(i);
  const std::size_t half = llr.size() / 2;
  LlrVec out(half);
  for (std::size_t w = 0; w < half; ++w) {
    const Element z = insert_zero_bit(static_cast<Element>(w), h);
    out[w] = combine2_exact(llr[z], llr[z ^ i], clamp);
  }
  return out;
}

LlrVec project_minsum_1d(const LlrVec& llr, Element i) {
  if (i == 0 || i >= llr.size()) {
    throw std::invalid_argument("subspace index out of range");
  }
  const int h = top_bit(i);
  const std::size_t half = llr.size() / 2;
  LlrVec out(half);
  for (std::size_t w = 0; w < half; ++w) {
    const Element z = insert_zero_bit(static_cast<Element>(w), h);
    out[w] = combine2_minsum(llr[z], llr[z ^ i]);
  }
  return out;
}

bool early_stop(const LlrVec& llr, const LlrVec& llr_hat, double theta) {
  if (llr.size() != llr_hat.size()) {
    throw std::invalid_argument("early_stop requires equal lengths");
  }
  double diff = 0.0;
  double total = 0.0;
  for (std::size_t z = 0; z < llr.size(); ++z) {
    diff += std::abs(llr[z] - llr_hat[z]);
    total += std::abs(llr[z]);
  }
  return diff <= theta * total;
}

LlrVec aggregate_rpa(const LlrVec& llr,
                     std::span<const std::pair<Element, Codeword>> decisions,
                     std::size_t divisor) {
  if (divisor != decisions.size()) {
    throw std::invalid_argument("divisor must equal the number of decisions");
  }
  const std::size_t n = llr.size();
  LlrVec out(n, 0.0);
  for (const auto& [i, bits] : decisions) {
    if (i == 0 || i >= n || bits.size() != n / 2) {
      throw std::invalid_argument("bad aggregation decision");
    }
    const int h = top_bit(i);
    for (std::size_t w = 0; w < n / 2; ++w) {
      const Element z = insert_zero_bit(static_cast<Element>(w), h);
      const Element zi = z ^ i;
      const double vote = 1.0 - 2.0 * bits[w];
      out[z] += vote * llr[zi];
      out[zi] += vote * llr[z];
    }
  }
  const double scale = 1.0 / static_cast<double>(divisor);
  for (double& v : out) v *= scale;
  return out;
}

LlrVec aggregate_cpa(const LlrVec& llr, std::span<const QuotientMap> maps,
                     std::span<const Codeword> decisions, ProjectionRule rule,
                     double clamp) {
  if (maps.size() != decisions.size() || maps.empty()) {
    throw std::invalid_argument("maps and decisions must pair up");
  }
  const std::size_t n = llr.size();
  LlrVec out(n, 0.0);
  for (std::size_t j = 0; j < maps.size(); ++j) {
    const QuotientMap& q = maps[j];
    if (llr.size() != (std::size_t{1} << q.ambient_dim()) ||
        decisions[j].size() != q.coset_count()) {
      throw std::invalid_argument("aggregation dimension mismatch");
    }
    for (Element z = 0; z < n; ++z) {
      const std::uint32_t t = q.coset_index(z);
      double p;
      if (rule == ProjectionRule::kMinSum) {
        double mag = std::numeric_limits<double>::infinity();
        bool negative = false;
        for (Element member : q.coset_members(t)) {
          if (member == z) continue;
          mag = std::min(mag, std::abs(llr[member]));
          negative ^= (llr[member] < 0.0);
        }
        p = (mag == 0.0) ? 0.0 : (negative ? -mag : mag);
      } else {
        double prod = 1.0;
        for (Element member : q.coset_members(t)) {
          if (member == z) continue;
          prod *= std::tanh(0.5 * llr[member]);
        }
        p = clamp_llr(prod, clamp);
      }
      out[z] += decisions[j][t] ? -p : p;
    }
  }
  const double scale = 1.0 / static_cast<double>(maps.size());
  for (double& v : out) v *= scale;
  return out;
}

DecodeOutcome rpa_decode(const LlrVec& llr, int m, int r,
                         const DecoderConfig& cfg) {
  return run_recursive(llr, m, r, 1, cfg, {/*unique=*/false, /*internal=*/true});
}

DecodeOutcome rupa_decode(const LlrVec& llr, int m, int r, Element branch,
                          const DecoderConfig& cfg) {
  return run_recursive(llr, m, r, branch,
                       cfg, {/*unique=*/true, /*internal=*/true});
}

DecodeOutcome iupa_decode(const LlrVec& llr, int m, int r,
                          const DecoderConfig& cfg) {
  return run_recursive(llr, m, r, 1, cfg, {/*unique=*/true, /*internal=*/false});
}

DecodeOutcome cpa_decode(const LlrVec& llr, int m, int r,
                         const DecoderConfig& cfg) {
  check_code_dims(m, r);
  if (r < 2) throw std::invalid_argument("cpa requires r >= 2");
  std::vector<QuotientMap> maps;
  const std::vector<Subspace> subspaces = enumerate_subspaces(m, r - 1);
  maps.reserve(subspaces.size());
  for (const Subspace& b : subspaces) maps.emplace_back(b);
  return run_cpa(llr, m, cfg, maps);
}

Decoder::Decoder(int m, int r, DecoderConfig cfg) : m_(m), r_(r), cfg_(cfg) {
  check_code_dims(m, r);
  check_config(cfg);
  if (cfg.algorithm == Algorithm::kCpa) {
    if (r < 2) throw std::invalid_argument("cpa requires r >= 2");
    const std::vector<Subspace> subspaces = enumerate_subspaces(m, r - 1);
    cpa_maps_.reserve(subspaces.size());
    for (const Subspace& b : subspaces) cpa_maps_.emplace_back(b);
  }
}

DecodeOutcome Decoder::decode(const LlrVec& llr) const {
  switch (cfg_.algorithm) {
    case Algorithm::kRpa:
      return rpa_decode(llr, m_, r_, cfg_);
    case Algorithm::kRupa:
      return rupa_decode(llr, m_, r_, 1, cfg_);
    case Algorithm::kIupa:
      return iupa_decode(llr, m_, r_, cfg_);
    case Algorithm::kCpa:
      return run_cpa(llr, m_, cfg_, cpa_maps_);
  }
  throw std::logic_error("unknown algorithm");
}

ProjectionCounts duplicate_count(int m, int r) {
  check_code_dims(m, r);
  if (r < 2) throw std::invalid_argument("duplicate_count requires r >= 2");
  ProjectionCounts counts;
  counts.total = 1;
  for (int i = 0; i <= r - 2; ++i) {
    const std::uint64_t factor = (std::uint64_t{1} << (m - i)) - 1;
    if (__builtin_mul_overflow(counts.total, factor, &counts.total)) {
      throw std::overflow_error("projection count overflows 64 bits");
    }
  }
  counts.unique = q_binomial(m, r - 1);
  counts.duplicates = counts.total - counts.unique;
  return counts;
}

namespace {

void walk_first_order(const LlrVec& llr, int m, int r,
                      std::vector<std::pair<Element, int>>& path,
                      Element branch, const DecoderConfig& cfg, bool unique,
                      std::vector<std::pair<Subspace, LlrVec>>& out) {
  if (r == 1) {
    out.emplace_back(induced_subspace(path), llr);
    return;
  }
  const auto [fp, lp] = schedule_range(m, r, branch, unique);
  for (Element i = fp; i <= lp; ++i) {
    LlrVec proj = project_1d(llr, i, cfg.rule, cfg.clamp);
    path.emplace_back(i, m);
    walk_first_order(proj, m - 1, r - 1, path, i, cfg, unique, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<std::pair<Subspace, LlrVec>> first_order_inputs(
    const LlrVec& llr, int m, int r, const DecoderConfig& cfg) {
  check_code_dims(m, r);
  if (r < 2) throw std::invalid_argument("first_order_inputs requires r >= 2");
  check_llr(llr, m);
  std::vector<std::pair<Subspace, LlrVec>> out;
  if (cfg.algorithm == Algorithm::kCpa) {
    for (const Subspace& b : enumerate_subspaces(m, r - 1)) {
      const QuotientMap q(b);
      out.emplace_back(b, cfg.rule == ProjectionRule::kMinSum
                              ? project_minsum(llr, q)
                              : project_exact(llr, q, cfg.clamp));
    }
    return out;
  }
  const bool unique = cfg.algorithm != Algorithm::kRpa;
  std::vector<std::pair<Element, int>> path;
  walk_first_order(llr, m, r, path, 1, cfg, unique, out);
  return out;
}

}  // namespace rmpa
