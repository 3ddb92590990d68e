#include "rmpa/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace rmpa {

double ChannelConfig::sigma() const {
  if (!std::isfinite(ebno_db)) throw std::invalid_argument("ebno_db must be finite");
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("rate must be in (0, 1]");
  }
  return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0)));
}

std::vector<double> modulate(const Codeword& c) {
  std::vector<double> x(c.size());
  for (std::size_t z = 0; z < c.size(); ++z) x[z] = 1.0 - 2.0 * c[z];
  return x;
}

std::mt19937_64 make_frame_rng(std::uint64_t seed, std::uint64_t frame) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(frame),
                    static_cast<std::uint32_t>(frame >> 32)};
  return std::mt19937_64(seq);
}

LlrVec transmit_and_llr(const std::vector<double>& x, const ChannelConfig& ch,
                        std::mt19937_64& rng) {
  const double sigma = ch.sigma();
  const double scale = 2.0 / (sigma * sigma);
  std::normal_distribution<double> noise(0.0, sigma);
  LlrVec llr(x.size());
  for (std::size_t z = 0; z < x.size(); ++z) {
    llr[z] = scale * (x[z] + noise(rng));
  }
  return llr;
}

}  // namespace rmpa
