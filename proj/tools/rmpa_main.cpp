// Command-line front end: Monte-Carlo FER sweeps, single-shot decoding,
// unique-projection schedule verification, and projection-count reports.
//
// Exit codes: 0 success, 1 runtime failure, 2 bad flags or bad input files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rmpa/decoders.hpp"
#include "rmpa/f2m.hpp"
#include "rmpa/selftest.hpp"
#include "rmpa/simulate.hpp"

namespace {

// Bad user input (flags or input files); maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_code(const std::string& text) {
  int m = 0, r = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> m >> comma >> r) || comma != ',' || !(in >> std::ws).eof()) {
    throw UsageError("--code expects 'm,r', got '" + text + "'");
  }
  if (m < 1 || m > rmpa::kMaxAmbientDim || r < 0 || r > m) {
    throw UsageError("invalid code RM(" + std::to_string(m) + "," +
                     std::to_string(r) + "): need 1 <= m <= " +
                     std::to_string(rmpa::kMaxAmbientDim) + " and 0 <= r <= m");
  }
  return {m, r};
}

std::vector<double> parse_snr_grid(const std::string& text) {
  double lo = 0, hi = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof()) {
    throw UsageError("--snr expects 'lo:hi:step', got '" + text + "'");
  }
  if (hi < lo) throw UsageError("--snr range is empty (hi < lo)");
  if (step <= 0 && hi != lo) throw UsageError("--snr step must be positive");
  std::vector<double> grid;
  if (hi == lo) {
    grid.push_back(lo);
    return grid;
  }
  for (double v = lo; v <= hi + 1e-9; v += step) grid.push_back(v);
  return grid;
}

// N_max defaults follow the simulation setup: 4 for RM(8,3), otherwise 3.
int default_nmax(int m, int r) { return (m == 8 && r == 3) ? 4 : 3; }

std::uint64_t seed_with_env_override(std::uint64_t flag_seed) {
  const char* env = std::getenv("RM_PAAL_SEED");
  if (env == nullptr || *env == '\0') return flag_seed;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw UsageError("RM_PAAL_SEED must be an unsigned integer, got '" +
                     std::string(env) + "'");
  }
  return parsed;
}

// Grid points already present in an existing CSV with the same identity
// columns (code, decoder, rule, nmax, theta, seed); used to resume sweeps.
std::set<std::string> completed_points(const std::string& path,
                                       const rmpa::SimConfig& sim) {
  std::set<std::string> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  const std::string code = rmpa::code_label(sim.m, sim.r);
  while (std::getline(in, line)) {
    // quoted code field, then plain comma-separated columns
    if (line.empty() || line[0] != '"') continue;
    const std::size_t close = line.find('"', 1);
    if (close == std::string::npos || line.substr(1, close - 1) != code) continue;
    std::istringstream rest(line.substr(close + 2));
    std::string decoder, rule, nmax, theta, ebno;
    std::getline(rest, decoder, ',');
    std::getline(rest, rule, ',');
    std::getline(rest, nmax, ',');
    std::getline(rest, theta, ',');
    std::getline(rest, ebno, ',');
    std::string seed = line.substr(line.rfind(',') + 1);
    if (decoder == rmpa::algorithm_name(sim.decoder.algorithm) &&
        rule == rmpa::rule_name(sim.decoder.rule) &&
        nmax == std::to_string(sim.decoder.max_iters) &&
        theta == rmpa::format_double(sim.decoder.theta) &&
        seed == std::to_string(sim.seed)) {
      done.insert(ebno);
    }
  }
  return done;
}

int cmd_simulate(const std::string& code_text, const std::string& decoder_name,
                 const std::string& rule_name_text, const std::string& snr_text,
                 std::optional<int> nmax, double theta,
                 std::uint64_t min_errors, std::uint64_t max_frames,
                 std::uint64_t seed, int workers, const std::string& out_path) {
  rmpa::SimConfig sim;
  std::tie(sim.m, sim.r) = parse_code(code_text);
  try {
    sim.decoder.algorithm = rmpa::parse_algorithm(decoder_name);
    sim.decoder.rule = rmpa::parse_rule(rule_name_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (sim.r < 1 || (sim.decoder.algorithm == rmpa::Algorithm::kCpa && sim.r < 2)) {
    throw UsageError("decoder requires r >= 1 (cpa requires r >= 2)");
  }
  sim.decoder.max_iters = nmax.value_or(default_nmax(sim.m, sim.r));
  if (sim.decoder.max_iters < 1) throw UsageError("--nmax must be >= 1");
  if (!(theta >= 0.0 && theta < 1.0)) throw UsageError("--theta must be in [0, 1)");
  sim.decoder.theta = theta;
  if (min_errors < 1) throw UsageError("--min-errors must be >= 1");
  if (max_frames < 1) throw UsageError("--max-frames must be >= 1");
  if (workers < 1) throw UsageError("--workers must be >= 1");
  sim.min_frame_errors = min_errors;
  sim.max_frames = max_frames;
  sim.seed = seed_with_env_override(seed);
  sim.workers = workers;
  sim.ebno_grid_db = parse_snr_grid(snr_text);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    const std::set<std::string> done = completed_points(out_path, sim);
    if (!done.empty()) {
      std::vector<double> remaining;
      for (double v : sim.ebno_grid_db) {
        if (!done.count(rmpa::format_double(v))) remaining.push_back(v);
      }
      std::cerr << "resuming: " << sim.ebno_grid_db.size() - remaining.size()
                << " of " << sim.ebno_grid_db.size()
                << " grid points already in " << out_path << "\n";
      sim.ebno_grid_db = std::move(remaining);
    }
    const bool fresh = !std::filesystem::exists(out_path) ||
                       std::filesystem::file_size(out_path) == 0;
    file.open(out_path, std::ios::app);
    if (!file) throw std::runtime_error("cannot open " + out_path);
    if (fresh) file << rmpa::fer_csv_header() << "\n" << std::flush;
    out = &file;
  } else {
    *out << rmpa::fer_csv_header() << "\n" << std::flush;
  }

  rmpa::run_sweep(sim, [&](const rmpa::FerPoint& point) {
    *out << rmpa::fer_csv_row(sim, point) << "\n" << std::flush;
  });
  return 0;
}

int cmd_decode(const std::string& code_text, const std::string& decoder_name,
               const std::string& rule_name_text, std::optional<int> nmax,
               double theta, const std::string& in_path) {
  const auto [m, r] = parse_code(code_text);
  rmpa::DecoderConfig cfg;
  try {
    cfg.algorithm = rmpa::parse_algorithm(decoder_name);
    cfg.rule = rmpa::parse_rule(rule_name_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.max_iters = nmax.value_or(default_nmax(m, r));
  cfg.theta = theta;

  std::ifstream in(in_path);
  if (!in) throw UsageError("cannot open LLR file " + in_path);
  rmpa::LlrVec llr;
  double v = 0;
  while (in >> v) llr.push_back(v);
  if (!in.eof()) throw UsageError("LLR file has non-numeric content");
  if (llr.size() != (std::size_t{1} << m)) {
    throw UsageError("LLR file has " + std::to_string(llr.size()) +
                     " values, expected " + std::to_string(1 << m));
  }

  const rmpa::Decoder decoder(m, r, cfg);
  const rmpa::DecodeOutcome outcome = decoder.decode(llr);

  std::string bits(outcome.codeword.size(), '0');
  for (std::size_t z = 0; z < outcome.codeword.size(); ++z) {
    bits[z] = outcome.codeword[z] ? '1' : '0';
  }
  std::cout << bits << "\n";
  std::cout << "iterations: " << outcome.iterations_used
            << (outcome.converged ? " (converged)" : " (max iterations)") << "\n";
  std::cout << "first_order_decodes: " << outcome.first_order_decodes << "\n";
  std::cout << "projection_ops: " << outcome.projection_ops << "\n";
  return 0;
}

int cmd_verify_schedule(const std::string& code_text) {
  const auto [m, r] = parse_code(code_text);
  if (r < 2) throw UsageError("verify-schedule requires r >= 2");
  const rmpa::ScheduleReport report = rmpa::verify_unique_schedule(m, r);
  std::cout << rmpa::code_label(m, r) << " unique-projection schedule: "
            << report.distinct_count << "/" << report.leaf_count << " unique, "
            << (report.complete ? "complete" : "INCOMPLETE")
            << " (target " << rmpa::q_binomial(m, r - 1) << ")\n";
  return report.complete ? 0 : 1;
}

int cmd_count(const std::string& code_text) {
  const auto [m, r] = parse_code(code_text);
  if (r < 2) throw UsageError("count requires r >= 2");
  const rmpa::ProjectionCounts counts = rmpa::duplicate_count(m, r);
  const std::uint64_t g = std::gcd(counts.unique, counts.total);
  const double reduction =
      100.0 * static_cast<double>(counts.duplicates) / counts.total;
  char pct[32];
  std::snprintf(pct, sizeof(pct), "%.2f%%", reduction);
  std::cout << rmpa::code_label(m, r)
            << " first-order projections per outer iteration\n"
            << "  total (rpa):    " << counts.total << "\n"
            << "  unique (rupa):  " << counts.unique << "\n"
            << "  duplicates:     " << counts.duplicates << "\n"
            << "  kept fraction:  " << counts.unique / g << "/" << counts.total / g
            << "\n"
            << "  reduction:      " << pct << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reed-Muller projection-aggregation decoding toolkit"};
  app.require_subcommand(1);

  std::string code_text, decoder_name, rule_text = "minsum";
  std::string snr_text = "1.0:4.0:0.5";
  std::string out_path, in_path;
  std::optional<int> nmax;
  double theta = 0.05;
  std::uint64_t min_errors = 100, max_frames = 1'000'000, seed = 1;
  int workers = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));

  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo FER sweep (CSV)");
  simulate->add_option("--code", code_text, "code as m,r")->required();
  simulate->add_option("--decoder", decoder_name, "rpa|cpa|rupa|iupa")->required();
  simulate->add_option("--rule", rule_text, "tanh|minsum (default minsum)");
  simulate->add_option("--snr", snr_text, "Eb/N0 grid as lo:hi:step, in dB");
  simulate->add_option("--nmax", nmax, "outer iteration cap (default 3; 4 for RM(8,3))");
  simulate->add_option("--theta", theta, "early-stop threshold (default 0.05)");
  simulate->add_option("--min-errors", min_errors, "frame errors per point (default 100)");
  simulate->add_option("--max-frames", max_frames, "frame cap per point (default 1e6)");
  simulate->add_option("--seed", seed, "RNG seed (default 1; RM_PAAL_SEED overrides)");
  simulate->add_option("--workers", workers, "worker threads (default: hardware)");
  simulate->add_option("--out", out_path, "append CSV to file (resumes by grid point)");

  CLI::App* decode = app.add_subcommand("decode", "decode one LLR vector from a file");
  decode->add_option("--code", code_text, "code as m,r")->required();
  decode->add_option("--decoder", decoder_name, "rpa|cpa|rupa|iupa")->required();
  decode->add_option("--rule", rule_text, "tanh|minsum (default minsum)");
  decode->add_option("--nmax", nmax, "outer iteration cap");
  decode->add_option("--theta", theta, "early-stop threshold");
  decode->add_option("--in", in_path, "whitespace-separated LLRs, length 2^m")->required();

  CLI::App* verify = app.add_subcommand("verify-schedule",
                                        "certify the unique-projection schedule");
  verify->add_option("--code", code_text, "code as m,r")->required();

  CLI::App* count = app.add_subcommand("count", "projection-count report");
  count->add_option("--code", code_text, "code as m,r")->required();

  CLI::App* selftest = app.add_subcommand("selftest", "built-in sanity suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) {
      return cmd_simulate(code_text, decoder_name, rule_text, snr_text, nmax,
                          theta, min_errors, max_frames, seed, workers, out_path);
    }
    if (decode->parsed()) {
      return cmd_decode(code_text, decoder_name, rule_text, nmax, theta, in_path);
    }
    if (verify->parsed()) return cmd_verify_schedule(code_text);
    if (count->parsed()) return cmd_count(code_text);
    if (selftest->parsed()) return rmpa::run_selftest(std::cout) ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
