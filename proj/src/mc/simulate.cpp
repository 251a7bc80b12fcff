#include "prpsim/mc/simulate.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace prpsim::mc {

namespace {

using kernels::McParams;
using kernels::ScalarLane;

constexpr uint64_t kChunkTrials = uint64_t{1} << 22;

McEstimate bernoulli_estimate(uint64_t hits, uint64_t n, uint64_t seed) {
  const double mean = static_cast<double>(hits) / static_cast<double>(n);
  return {mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(n)), n,
          seed};
}

}  // namespace

TrialRecord simulate_trial(uint64_t seed, uint64_t trial_index,
                           const SourceModel& source, const HomodyneModel& det,
                           const ThresholdPolicy& policy) {
  const McParams params = McParams::from(source, det, policy);
  const auto out = kernels::trial_step<ScalarLane>(
      kernels::scalar_trial_words(seed, trial_index), params);

  TrialRecord rec;
  rec.alice_phase = static_cast<double>(out.phase_idx) * (model::kPi / 2.0);
  rec.eve_basis = static_cast<double>(out.basis_idx) * (model::kPi / 2.0);
  rec.theta = source.delta * out.theta_unit;
  rec.x = out.x;
  rec.outcome = out.plus    ? Outcome::PlusValid
                : out.minus ? Outcome::MinusValid
                            : Outcome::Inconclusive;
  rec.is_error = out.error;
  return rec;
}

AttackEstimate estimate_attack(uint64_t n, uint64_t seed,
                               const SourceModel& source,
                               const HomodyneModel& det,
                               const ThresholdPolicy& policy,
                               const McOptions& options) {
  if (n < 1) raise(ErrorCode::Validation, "estimate_attack needs n >= 1");

  const McParams params = McParams::from(source, det, policy);
  const kernels::McTallyFn kernel = kernels::select_mc_kernel(options.kernel);

  unsigned workers = options.threads;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const uint64_t n_chunks = (n + kChunkTrials - 1) / kChunkTrials;
  workers = static_cast<unsigned>(
      std::min<uint64_t>(workers, std::max<uint64_t>(n_chunks, 1)));

  Tally total;
  if (workers <= 1) {
    total = kernel(params, seed, 0, n);
  } else {
    // Chunks are claimed from a shared counter; tallies are integers, so the
    // merged result is the same no matter which worker ran which chunk.
    std::atomic<uint64_t> next_chunk{0};
    std::vector<Tally> partial(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        Tally local;
        for (;;) {
          const uint64_t chunk = next_chunk.fetch_add(1);
          if (chunk >= n_chunks) break;
          const uint64_t begin = chunk * kChunkTrials;
          const uint64_t end = std::min(n, begin + kChunkTrials);
          local += kernel(params, seed, begin, end);
        }
        partial[w] = local;
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& t : partial) total += t;
  }

  if (total.n_valid == 0) {
    raise(ErrorCode::NoValidOutcomes,
          "no trial cleared the threshold; increase n or lower x_th");
  }

  AttackEstimate est;
  est.tally = total;
  est.error_rate = bernoulli_estimate(total.n_error, total.n_valid, seed);
  est.p_post = bernoulli_estimate(total.n_valid, total.n_trials, seed);
  return est;
}

}  // namespace prpsim::mc
