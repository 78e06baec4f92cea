#ifndef AOIHARQ_SIM_HPP
#define AOIHARQ_SIM_HPP

#include <cstdint>

#include "aoiharq/analysis.hpp"
#include "aoiharq/channel.hpp"

namespace aoiharq {

// Splittable 64-bit generator (splitmix64). One instance per replica; split()
// derives an independent stream deterministically.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    SplitMix64 split() { return SplitMix64(next() ^ 0x5851f42d4c957f2dULL); }

private:
    std::uint64_t state_;
};

enum class PolicyMode { ExplicitWaits, Threshold };

struct SimConfig {
    std::uint64_t num_epochs = 100000;
    std::uint64_t warmup_epochs = 1000;  // must stay below num_epochs
    std::uint64_t seed = 0;
    PolicyMode policy_mode = PolicyMode::Threshold;
    double w1 = 0.0;      // ExplicitWaits mode
    double w2 = 0.0;
    double lambda = 0.0;  // Threshold mode: wait = [lambda - E[X] - start_age]^+
    int num_batches = 100;

    void validate() const;
};

struct SimStats {
    double avg_aoi = 0.0;  // sum of epoch areas / sum of epoch lengths
    double mean_x_hat = 0.0;
    double mean_x2_hat = 0.0;
    double mean_y_hat = 0.0;
    double prob_y_n_hat = 0.0;
    double mean_q_hat = 0.0;
    double mean_l_hat = 0.0;
    double mean_wait_hat = 0.0;
    std::uint64_t epochs_measured = 0;
    double stderr_avg_aoi = 0.0;  // batch-means standard error of avg_aoi
};

struct EpochDraw {
    double busy = 0.0;    // channel busy period of this epoch
    double q_area = 0.0;  // area under the age curve over the epoch
    double end_age = 0.0; // n or n+m, the next epoch's starting age
};

// One epoch: packets are retried until one decodes (attempt 1 with
// probability q1, else attempt 2 with probability q2, else discard and
// resend). The age rises linearly from start_age over wait + busy, so the
// epoch's area is the trapezoid start_age*(wait+busy) + (wait+busy)^2/2.
EpochDraw simulate_epoch(const AttemptProbs& probs, const HarqScheme& scheme,
                         double start_age, double wait, SplitMix64& rng);

// Chains epochs, drops the warmup, and accumulates batch-means statistics.
// Identical (scheme, probs, config) gives bit-identical results.
SimStats run(const HarqScheme& scheme, const AttemptProbs& probs, const SimConfig& config);

}  // namespace aoiharq

#endif
