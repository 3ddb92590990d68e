#include "rmpa/simulate.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <stdexcept>
#include <thread>

#include "rmpa/stats.hpp"

namespace rmpa {

namespace {

struct FrameResult {
  bool error = false;
  std::uint32_t bit_errors = 0;
  std::int32_t iterations = 0;
  std::int64_t first_order_decodes = 0;
};

FrameResult simulate_frame(const RmCode& code, const Decoder& decoder,
                           const ChannelConfig& ch, std::uint64_t seed,
                           std::uint64_t frame) {
  std::mt19937_64 rng = make_frame_rng(seed, frame);
  std::uniform_int_distribution<int> bit(0, 1);

  BitVec message(code.k);
  for (int j = 0; j < code.k; ++j) message[j] = static_cast<std::uint8_t>(bit(rng));
  const Codeword sent = encode(code, message);
  const LlrVec llr = transmit_and_llr(modulate(sent), ch, rng);

  const DecodeOutcome outcome = decoder.decode(llr);

  FrameResult res;
  for (int z = 0; z < code.n; ++z) {
    res.bit_errors += outcome.codeword[z] != sent[z];
  }
  res.error = res.bit_errors > 0;
  res.iterations = outcome.iterations_used;
  res.first_order_decodes = outcome.first_order_decodes;
  return res;
}

void check_sim(const SimConfig& sim) {
  if (sim.max_frames < 1) throw std::invalid_argument("max_frames must be >= 1");
  if (sim.min_frame_errors < 1) {
    throw std::invalid_argument("min_frame_errors must be >= 1");
  }
  if (sim.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

}  // namespace

FerPoint run_fer_point(const SimConfig& sim, double ebno_db) {
  check_sim(sim);
  const RmCode code = build_code(sim.m, sim.r);
  const Decoder decoder(sim.m, sim.r, sim.decoder);
  const ChannelConfig ch{ebno_db, static_cast<double>(code.k) / code.n};
  ch.sigma();  // validate up front

  FerPoint point;
  point.ebno_db = ebno_db;
  std::uint64_t sum_iterations = 0;
  std::uint64_t sum_first_order = 0;

  // Frames are decoded in parallel batches but accumulated strictly in
  // frame-index order; the run stops at the exact frame where the
  // min_frame_errors-th error lands, so worker count cannot change results.
  const std::uint64_t batch_size =
      std::max<std::uint64_t>(static_cast<std::uint64_t>(sim.workers) * 16, 64);
  std::vector<FrameResult> batch;

  bool done = false;
  for (std::uint64_t start = 0; start < sim.max_frames && !done;) {
    const std::uint64_t end = std::min(start + batch_size, sim.max_frames);
    batch.assign(end - start, FrameResult{});

    const int workers =
        static_cast<int>(std::min<std::uint64_t>(sim.workers, end - start));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t]() {
        try {
          for (std::uint64_t f = start + t; f < end; f += workers) {
            batch[f - start] = simulate_frame(code, decoder, ch, sim.seed, f);
          }
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : failures) {
      if (e) std::rethrow_exception(e);
    }

    for (std::uint64_t f = start; f < end; ++f) {
      const FrameResult& res = batch[f - start];
      ++point.frames;
      point.frame_errors += res.error;
      point.bit_errors += res.bit_errors;
      sum_iterations += static_cast<std::uint64_t>(res.iterations);
      sum_first_order += static_cast<std::uint64_t>(res.first_order_decodes);
      if (point.frame_errors >= sim.min_frame_errors) {
        done = true;
        break;
      }
    }
    start = end;
  }

  point.fer = static_cast<double>(point.frame_errors) / point.frames;
  point.ber = static_cast<double>(point.bit_errors) /
              (static_cast<double>(point.frames) * code.n);
  point.avg_iterations = static_cast<double>(sum_iterations) / point.frames;
  point.avg_first_order_decodes =
      static_cast<double>(sum_first_order) / point.frames;
  const auto [low, high] = clopper_pearson(point.frame_errors, point.frames);
  point.ci95_low = low;
  point.ci95_high = high;
  return point;
}

std::vector<FerPoint> run_sweep(
    const SimConfig& sim, const std::function<void(const FerPoint&)>& on_point) {
  std::vector<FerPoint> points;
  points.reserve(sim.ebno_grid_db.size());
  for (double ebno : sim.ebno_grid_db) {
    points.push_back(run_fer_point(sim, ebno));
    if (on_point) on_point(points.back());
  }
  return points;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string code_label(int m, int r) {
  return "RM(" + std::to_string(m) + "," + std::to_string(r) + ")";
}

std::string fer_csv_header() {
  return "code,decoder,rule,nmax,theta,ebno_db,frames,frame_errors,fer,"
         "ci95_low,ci95_high,bit_errors,ber,avg_iters,avg_fo_decodes,seed";
}

std::string fer_csv_row(const SimConfig& sim, const FerPoint& point) {
  std::string row;
  row.reserve(200);
  row += '"';
  row += code_label(sim.m, sim.r);
  row += "\",";
  row += algorithm_name(sim.decoder.algorithm);
  row += ',';
  row += rule_name(sim.decoder.rule);
  row += ',';
  row += std::to_string(sim.decoder.max_iters);
  row += ',';
  row += format_double(sim.decoder.theta);
  row += ',';
  row += format_double(point.ebno_db);
  row += ',';
  row += std::to_string(point.frames);
  row += ',';
  row += std::to_string(point.frame_errors);
  row += ',';
  row += format_double(point.fer);
  row += ',';
  row += format_double(point.ci95_low);
  row += ',';
  row += format_double(point.ci95_high);
  row += ',';
  row += std::to_string(point.bit_errors);
  row += ',';
  row += format_double(point.ber);
  row += ',';
  row += format_double(point.avg_iterations);
  row += ',';
  row += format_double(point.avg_first_order_decodes);
  row += ',';
  row += std::to_string(sim.seed);
  return row;
}

}  // namespace rmpa
