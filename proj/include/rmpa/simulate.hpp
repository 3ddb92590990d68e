#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rmpa/channel.hpp"
#include "rmpa/decoders.hpp"

// Monte-Carlo frame-error-rate harness: random messages through BPSK/AWGN,
// decoded frames accumulated in frame-index order until min_frame_errors
// frame errors or max_frames, whichever first. Results are bit-identical
// for a given (seed, config) regardless of worker count.

namespace rmpa {

struct SimConfig {
  int m = 7;
  int r = 3;
  DecoderConfig decoder;
  std::vector<double> ebno_grid_db;
  std::uint64_t max_frames = 1'000'000;
  std::uint64_t min_frame_errors = 100;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct FerPoint {
  double ebno_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t bit_errors = 0;
  double fer = 0.0;
  double ber = 0.0;  // codeword-bit error rate, bit_errors / (frames * n)
  double avg_iterations = 0.0;
  double avg_first_order_decodes = 0.0;
  double ci95_low = 0.0;  // Clopper-Pearson on FER
  double ci95_high = 1.0;
};

/// Runs one Eb/N0 operating point to the configured stopping rule.
FerPoint run_fer_point(const SimConfig& sim, double ebno_db);

/// Maps run_fer_point over the grid, invoking on_point as each point
/// completes so output can be flushed incrementally.
std::vector<FerPoint> run_sweep(
    const SimConfig& sim,
    const std::function<void(const FerPoint&)>& on_point = nullptr);

// CSV interface. One row per FerPoint; the header is mandatory and floats
// use the shortest round-trip decimal form. The code field is quoted since
// "RM(m,r)" contains a comma.
std::string fer_csv_header();
std::string fer_csv_row(const SimConfig& sim, const FerPoint& point);

/// "RM(m,r)"
std::string code_label(int m, int r);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace rmpa
