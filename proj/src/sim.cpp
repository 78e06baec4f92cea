#include "aoiharq/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace aoiharq {

void SimConfig::validate() const {
    if (num_epochs < 1) throw std::invalid_argument("num_epochs must be >= 1");
    if (warmup_epochs >= num_epochs)
        throw std::invalid_argument("warmup_epochs must be < num_epochs");
    if (num_batches < 1) throw std::invalid_argument("num_batches must be >= 1");
    if (policy_mode == PolicyMode::ExplicitWaits && (w1 < 0.0 || w2 < 0.0))
        throw std::invalid_argument("waits must be non-negative");
    if (policy_mode == PolicyMode::Threshold && lambda < 0.0)
        throw std::invalid_argument("lambda must be non-negative");
}

EpochDraw simulate_epoch(const AttemptProbs& probs, const HarqScheme& scheme,
                         double start_age, double wait, SplitMix64& rng) {
    const double n = scheme.codeword_len;
    const double m = scheme.ir_len;
    EpochDraw draw;
    for (;;) {
        if (rng.uniform() < probs.q1) {
            draw.busy += n;
            draw.end_age = n;
            break;
        }
        draw.busy += n + m;
        if (rng.uniform() < probs.q2) {
            draw.end_age = n + m;
            break;
        }
        // both attempts failed: packet discarded, fresh packet next loop
    }
    const double span = wait + draw.busy;
    draw.q_area = start_age * span + 0.5 * span * span;
    return draw;
}

SimStats run(const HarqScheme& scheme, const AttemptProbs& probs, const SimConfig& config) {
    scheme.validate();
    config.validate();
    SplitMix64 rng(config.seed);

    const EpochMoments mo = epoch_moments(scheme, probs);
    const auto wait_for = [&](double start_age) {
        if (config.policy_mode == PolicyMode::ExplicitWaits)
            return start_age == scheme.codeword_len ? config.w1 : config.w2;
        return std::max(config.lambda - mo.mean_x - start_age, 0.0);
    };

    const std::uint64_t measured = config.num_epochs - config.warmup_epochs;
    const std::uint64_t batches =
        std::min<std::uint64_t>(config.num_batches, measured);
    const std::uint64_t batch_len = measured / batches;

    double start_age = scheme.codeword_len;  // as if a prior first-attempt success
    for (std::uint64_t k = 0; k < config.warmup_epochs; ++k)
        start_age = simulate_epoch(probs, scheme, start_age, wait_for(start_age), rng).end_age;

    double tot_q = 0.0, tot_l = 0.0, tot_x = 0.0, tot_x2 = 0.0, tot_y = 0.0, tot_w = 0.0;
    std::uint64_t count_y_n = 0;
    std::vector<double> batch_q(batches, 0.0), batch_l(batches, 0.0);

    for (std::uint64_t k = 0; k < measured; ++k) {
        const double wait = wait_for(start_age);
        const EpochDraw draw = simulate_epoch(probs, scheme, start_age, wait, rng);
        tot_q += draw.q_area;
        tot_l += wait + draw.busy;
        tot_x += draw.busy;
        tot_x2 += draw.busy * draw.busy;
        tot_y += draw.end_age;
        tot_w += wait;
        if (draw.end_age == scheme.codeword_len) ++count_y_n;
        const std::uint64_t b = std::min(k / batch_len, batches - 1);
        batch_q[b] += draw.q_area;
        batch_l[b] += wait + draw.busy;
        start_age = draw.end_age;
    }

    SimStats stats;
    stats.epochs_measured = measured;
    stats.avg_aoi = tot_q / tot_l;
    stats.mean_x_hat = tot_x / measured;
    stats.mean_x2_hat = tot_x2 / measured;
    stats.mean_y_hat = tot_y / measured;
    stats.prob_y_n_hat = double(count_y_n) / measured;
    stats.mean_q_hat = tot_q / measured;
    stats.mean_l_hat = tot_l / measured;
    stats.mean_wait_hat = tot_w / measured;

    if (batches > 1) {
        double sum = 0.0, sum2 = 0.0;
        for (std::uint64_t b = 0; b < batches; ++b) {
            const double r = batch_q[b] / batch_l[b];
            sum += r;
            sum2 += r * r;
        }
        const double mean = sum / batches;
        const double var = std::max(sum2 / batches - mean * mean, 0.0) *
                           (double(batches) / double(batches - 1));
        stats.stderr_avg_aoi = std::sqrt(var / batches);
    }
    return stats;
}

}  // namespace aoiharq
