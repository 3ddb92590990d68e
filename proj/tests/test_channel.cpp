#include "rmpa/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "rmpa/stats.hpp"

using namespace rmpa;

TEST_CASE("modulate: bit mapping and round trip") {
  CHECK(modulate({0}) == std::vector<double>{1.0});
  CHECK(modulate({1}) == std::vector<double>{-1.0});
  CHECK(modulate(Codeword(8, 0)) == std::vector<double>(8, 1.0));

  const Codeword c{0, 1, 1, 0, 1, 0, 0, 1};
  const std::vector<double> x = modulate(c);
  for (std::size_t z = 0; z < c.size(); ++z) {
    CHECK(static_cast<std::uint8_t>(x[z] < 0.0) == c[z]);
  }
}

TEST_CASE("sigma: doubling linear Eb/N0 halves the variance") {
  const double three_db = 10.0 * std::log10(2.0);
  for (double rate : {0.25, 0.5, 0.726}) {
    for (double ebno : {-1.0, 0.0, 2.0, 4.0}) {
      const ChannelConfig a{ebno, rate};
      const ChannelConfig b{ebno + three_db, rate};
      const double va = a.sigma() * a.sigma();
      const double vb = b.sigma() * b.sigma();
      CHECK(va == doctest::Approx(2.0 * vb).epsilon(1e-12));
    }
  }
  // spot value: R = 1/2 at 2 dB
  const ChannelConfig ch{2.0, 0.5};
  CHECK(ch.sigma() * ch.sigma() ==
        doctest::Approx(1.0 / std::pow(10.0, 0.2)).epsilon(1e-12));
  CHECK_THROWS_AS((ChannelConfig{0.0, 0.0}.sigma()), std::invalid_argument);
}

TEST_CASE("transmit_and_llr: determinism and statistics") {
  const ChannelConfig ch{2.0, 0.5};

  SUBCASE("fixed (seed, frame) replays bit-identical LLRs") {
    const std::vector<double> x(64, 1.0);
    std::mt19937_64 a = make_frame_rng(42, 7);
    std::mt19937_64 b = make_frame_rng(42, 7);
    CHECK(transmit_and_llr(x, ch, a) == transmit_and_llr(x, ch, b));

    std::mt19937_64 other_frame = make_frame_rng(42, 8);
    std::mt19937_64 c = make_frame_rng(42, 7);
    CHECK(transmit_and_llr(x, ch, other_frame) != transmit_and_llr(x, ch, c));
  }

  SUBCASE("empirical mean of L approaches 2/sigma^2 for x = +1") {
    const double sigma = ch.sigma();
    const double expected = 2.0 / (sigma * sigma);
    constexpr std::size_t kSamples = 100'000;
    std::mt19937_64 rng = make_frame_rng(1, 0);
    const std::vector<double> x(kSamples, 1.0);
    const LlrVec llr = transmit_and_llr(x, ch, rng);
    double mean = 0.0;
    for (double v : llr) mean += v;
    mean /= kSamples;
    // L ~ N(2/s^2, 4/s^2): allow three standard errors
    const double tol = 3.0 * (2.0 / sigma) / std::sqrt(kSamples);
    CHECK(std::abs(mean - expected) <= tol);
  }

  SUBCASE("noiseless limit: signs survive at 20 dB") {
    const ChannelConfig quiet{20.0, 0.5};
    std::mt19937_64 rng = make_frame_rng(3, 0);
    std::vector<double> x(1000);
    for (std::size_t z = 0; z < x.size(); ++z) x[z] = (z % 2) ? -1.0 : 1.0;
    const LlrVec llr = transmit_and_llr(x, quiet, rng);
    for (std::size_t z = 0; z < x.size(); ++z) {
      CHECK(std::signbit(llr[z]) == std::signbit(x[z]));
    }
  }
}

TEST_CASE("regularized incomplete beta: reference values") {
  // references computed with scipy.special.betainc
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.5) ==
        doctest::Approx(0.6875).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(0.5, 4.0, 0.25) ==
        doctest::Approx(0.858886718750).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(300.0, 5801.0, 0.0489) ==
        doctest::Approx(0.467833885985335).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(5.0, 2.0, 0.9) ==
        doctest::Approx(0.885735).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5),
                  std::invalid_argument);
}

TEST_CASE("clopper_pearson: reference intervals and edges") {
  // references computed with scipy.stats.beta.ppf
  const auto [lo1, hi1] = clopper_pearson(13, 1000);
  CHECK(lo1 == doctest::Approx(0.006939617503).epsilon(1e-9));
  CHECK(hi1 == doctest::Approx(0.022127803637).epsilon(1e-9));

  const auto [lo2, hi2] = clopper_pearson(300, 6100);
  CHECK(lo2 == doctest::Approx(0.043888469170).epsilon(1e-9));
  CHECK(hi2 == doctest::Approx(0.054908391513).epsilon(1e-9));

  const auto [lo3, hi3] = clopper_pearson(1, 7);
  CHECK(lo3 == doctest::Approx(0.003610296862).epsilon(1e-9));
  CHECK(hi3 == doctest::Approx(0.578723197043).epsilon(1e-9));

  const auto [lo4, hi4] = clopper_pearson(0, 50);
  CHECK(lo4 == 0.0);
  CHECK(hi4 == doctest::Approx(0.071121736464).epsilon(1e-9));

  const auto [lo5, hi5] = clopper_pearson(50, 50);
  CHECK(lo5 == doctest::Approx(0.928878263536).epsilon(1e-9));
  CHECK(hi5 == 1.0);

  // interval always brackets the point estimate
  for (std::uint64_t x : {0ull, 1ull, 5ull, 20ull, 40ull}) {
    const auto [lo, hi] = clopper_pearson(x, 40 + x);
    const double fer = static_cast<double>(x) / (40.0 + x);
    CHECK(lo <= fer);
    CHECK(fer <= hi);
  }
  CHECK_THROWS_AS(clopper_pearson(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(clopper_pearson(5, 4), std::invalid_argument);
}
