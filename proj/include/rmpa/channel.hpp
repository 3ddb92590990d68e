#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rmpa/rm_code.hpp"

namespace rmpa {

// BPSK over AWGN at a given Eb/N0 for a rate-R code. The noise variance is
// sigma^2 = 1 / (2 R 10^{ebno_db/10}).
struct ChannelConfig {
  double ebno_db = 0.0;
  double rate = 0.5;  // k/n, in (0, 1]

  double sigma() const;
};

/// BPSK mapping x(z) = 1 - 2 c(z).
std::vector<double> modulate(const Codeword& c);

// Per-frame random stream keyed by (seed, frame index). Frames can be
// decoded by any worker in any order and still see identical noise.
std::mt19937_64 make_frame_rng(std::uint64_t seed, std::uint64_t frame);

/// Adds N(0, sigma^2) noise and returns the channel LLRs L = 2y / sigma^2.
LlrVec transmit_and_llr(const std::vector<double>& x, const ChannelConfig& ch,
                        std::mt19937_64& rng);

}  // namespace rmpa
