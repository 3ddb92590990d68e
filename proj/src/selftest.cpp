#include "rmpa/selftest.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "rmpa/decoders.hpp"
#include "rmpa/f2m.hpp"
#include "rmpa/rm_code.hpp"

namespace rmpa {

namespace {

constexpr double kClamp = 40.0;

// p(X) computed directly must equal the combine of per-part results for any
// partition of X: exactly for min-sum, to rounding for the tanh rule.
bool partition_identity_suite(std::ostream& out, int trials) {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    std::uniform_int_distribution<int> size_dist(1, 16);
    const int n = size_dist(rng);
    std::vector<double> x(n);
    for (double& v : x) v = value(rng);

    std::uniform_int_distribution<int> part_count(1, n);
    const int parts = part_count(rng);
    std::uniform_int_distribution<int> assign(0, parts - 1);
    std::vector<std::vector<double>> partition(parts);
    for (double v : x) partition[assign(rng)].push_back(v);

    std::vector<double> exact_stage, minsum_stage;
    for (const auto& part : partition) {
      if (part.empty()) continue;
      exact_stage.push_back(combine_exact(part, kClamp));
      minsum_stage.push_back(combine_minsum(part));
    }

    const double exact_direct = combine_exact(x, kClamp);
    const double exact_nested = combine_exact(exact_stage, kClamp);
    const double minsum_direct = combine_minsum(x);
    const double minsum_nested = combine_minsum(minsum_stage);

    const double tol =
        1e-9 * std::max({1.0, std::abs(exact_direct), std::abs(exact_nested)});
    const bool exact_ok = std::abs(exact_direct - exact_nested) <= tol;
    const bool minsum_ok = minsum_direct == minsum_nested;
    ok += exact_ok && minsum_ok;
  }
  out << "partition identity (tanh + min-sum): " << ok << "/" << trials
      << (ok == trials ? " ok" : " FAILED") << "\n";
  return ok == trials;
}

bool has_unique_peak(const LlrVec& llr) {
  std::vector<double> w(llr.begin(), llr.end());
  fht(w);
  double best = 0.0;
  int best_count = 0;
  for (double v : w) {
    const double mag = std::abs(v);
    if (mag > best) {
      best = mag;
      best_count = 1;
    } else if (mag == best) {
      ++best_count;
    }
  }
  return best > 0.0 && best_count == 1;
}

bool fht_vs_ml_suite(std::ostream& out, int trials) {
  std::mt19937_64 rng(0xfadedfadULL);
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  bool all_ok = true;
  for (int m = 2; m <= 4; ++m) {
    const RmCode code = build_code(m, 1);
    int ok = 0;
    for (int t = 0; t < trials; ++t) {
      LlrVec llr(std::size_t{1} << m);
      do {
        for (double& v : llr) v = value(rng);
      } while (!has_unique_peak(llr));
      ok += fht_decode_first_order(llr) == brute_force_ml(llr, code);
    }
    out << "transform decoder vs brute-force ML, m=" << m << ": " << ok << "/"
        << trials << (ok == trials ? " ok" : " FAILED") << "\n";
    all_ok = all_ok && ok == trials;
  }
  return all_ok;
}

bool schedule_suite(std::ostream& out) {
  bool all_ok = true;
  for (int m = 2; m <= 6; ++m) {
    for (int r = 2; r <= m; ++r) {
      const ScheduleReport report = verify_unique_schedule(m, r);
      if (!report.complete) {
        out << "unique schedule RM(" << m << "," << r << "): " << "FAILED ("
            << report.distinct_count << "/" << report.leaf_count << ")\n";
        all_ok = false;
      }
    }
  }
  if (all_ok) out << "unique schedule complete for all 2 <= r <= m <= 6 ok\n";
  return all_ok;
}

}  // namespace

bool run_selftest(std::ostream& out) {
  bool ok = true;
  ok &= partition_identity_suite(out, 1000);
  ok &= fht_vs_ml_suite(out, 300);
  ok &= schedule_suite(out);
  out << (ok ? "selftest passed" : "selftest FAILED") << "\n";
  return ok;
}

}  // namespace rmpa
