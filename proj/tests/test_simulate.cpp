#include "rmpa/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace rmpa;

namespace {

SimConfig quick_sim(int m, int r, Algorithm algorithm) {
  SimConfig sim;
  sim.m = m;
  sim.r = r;
  sim.decoder.algorithm = algorithm;
  sim.decoder.rule = ProjectionRule::kMinSum;
  sim.decoder.max_iters = 3;
  sim.seed = 1;
  sim.workers = 1;
  return sim;
}

bool same_point(const FerPoint& a, const FerPoint& b) {
  return a.ebno_db == b.ebno_db && a.frames == b.frames &&
         a.frame_errors == b.frame_errors && a.bit_errors == b.bit_errors &&
         a.fer == b.fer && a.ber == b.ber &&
         a.avg_iterations == b.avg_iterations &&
         a.avg_first_order_decodes == b.avg_first_order_decodes &&
         a.ci95_low == b.ci95_low && a.ci95_high == b.ci95_high;
}

}  // namespace

TEST_CASE("run_fer_point: noiseless operating point has no errors") {
  SimConfig sim = quick_sim(3, 2, Algorithm::kRupa);
  sim.max_frames = 1000;
  sim.min_frame_errors = 1;
  const FerPoint point = run_fer_point(sim, 20.0);
  CHECK(point.frames == 1000);
  CHECK(point.frame_errors == 0);
  CHECK(point.fer == 0.0);
  CHECK(point.ber == 0.0);
  CHECK(point.ci95_low == 0.0);
  CHECK(point.avg_iterations == 1.0);  // fixed point converges immediately
}

TEST_CASE("run_fer_point: worker count cannot change the result") {
  SimConfig sim = quick_sim(4, 2, Algorithm::kRpa);
  sim.max_frames = 5000;
  sim.min_frame_errors = 25;  // stops mid-stream at 0 dB
  const FerPoint base = run_fer_point(sim, 0.0);
  CHECK(base.frame_errors == 25);  // stopping rule hit exactly

  for (int workers : {2, 3, 7}) {
    sim.workers = workers;
    const FerPoint other = run_fer_point(sim, 0.0);
    CAPTURE(workers);
    CHECK(same_point(base, other));
  }
}

TEST_CASE("run_fer_point: different seeds give different noise") {
  SimConfig sim = quick_sim(4, 2, Algorithm::kRupa);
  sim.max_frames = 400;
  sim.min_frame_errors = 400;
  const FerPoint a = run_fer_point(sim, 1.0);
  sim.seed = 2;
  const FerPoint b = run_fer_point(sim, 1.0);
  CHECK(a.frames == b.frames);
  CHECK(a.frame_errors != b.frame_errors);  // 400 noisy frames at 1 dB
}

TEST_CASE("run_sweep: grid mapping and incremental callback") {
  SimConfig sim = quick_sim(3, 2, Algorithm::kIupa);
  sim.max_frames = 50;
  sim.min_frame_errors = 50;

  SUBCASE("empty grid") {
    CHECK(run_sweep(sim).empty());
  }

  SUBCASE("singleton grid equals run_fer_point") {
    sim.ebno_grid_db = {2.0};
    int calls = 0;
    const std::vector<FerPoint> points =
        run_sweep(sim, [&](const FerPoint&) { ++calls; });
    REQUIRE(points.size() == 1);
    CHECK(calls == 1);
    CHECK(same_point(points[0], run_fer_point(sim, 2.0)));
  }

  SUBCASE("smoke sweep is monotone within confidence intervals") {
    sim.m = 4;
    sim.r = 2;
    sim.max_frames = 3000;
    sim.min_frame_errors = 100;
    sim.ebno_grid_db = {0.0, 2.0, 4.0};
    const std::vector<FerPoint> points = run_sweep(sim);
    REQUIRE(points.size() == 3);
    for (std::size_t j = 1; j < points.size(); ++j) {
      // lower SNR's interval must not sit strictly below the next one's
      CHECK(points[j - 1].ci95_high >= points[j].ci95_low);
      CHECK(points[j - 1].fer >= points[j].fer);
    }
  }
}

TEST_CASE("csv: header, row shape, float round trip") {
  CHECK(fer_csv_header() ==
        "code,decoder,rule,nmax,theta,ebno_db,frames,frame_errors,fer,"
        "ci95_low,ci95_high,bit_errors,ber,avg_iters,avg_fo_decodes,seed");

  SimConfig sim = quick_sim(7, 3, Algorithm::kRupa);
  sim.decoder.max_iters = 3;
  sim.decoder.theta = 0.05;
  sim.seed = 17;
  FerPoint point;
  point.ebno_db = 2.0;
  point.frames = 6100;
  point.frame_errors = 300;
  point.bit_errors = 4521;
  point.fer = 300.0 / 6100.0;
  point.ber = 4521.0 / (6100.0 * 128.0);
  point.avg_iterations = 1.25;
  point.avg_first_order_decodes = 3333.75;
  point.ci95_low = 0.0438;
  point.ci95_high = 0.0549;

  const std::string row = fer_csv_row(sim, point);
  CHECK(row ==
        "\"RM(7,3)\",rupa,minsum,3,0.05,2,6100,300," +
            format_double(300.0 / 6100.0) +
            ",0.0438,0.0549,4521," + format_double(4521.0 / (6100.0 * 128.0)) +
            ",1.25,3333.75,17");

  SUBCASE("format_double is shortest round-trip") {
    CHECK(format_double(0.05) == "0.05");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
    for (double v : {1.0 / 3.0, 0.0489, 1e-12, 123456.789}) {
      CHECK(std::stod(format_double(v)) == v);
    }
  }
}

TEST_CASE("sim config validation") {
  SimConfig sim = quick_sim(3, 2, Algorithm::kRpa);
  sim.max_frames = 0;
  CHECK_THROWS_AS(run_fer_point(sim, 1.0), std::invalid_argument);
  sim = quick_sim(3, 2, Algorithm::kRpa);
  sim.min_frame_errors = 0;
  CHECK_THROWS_AS(run_fer_point(sim, 1.0), std::invalid_argument);
  sim = quick_sim(3, 2, Algorithm::kRpa);
  sim.workers = 0;
  CHECK_THROWS_AS(run_fer_point(sim, 1.0), std::invalid_argument);
}
