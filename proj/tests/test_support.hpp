#ifndef AOIHARQ_TEST_SUPPORT_HPP
#define AOIHARQ_TEST_SUPPORT_HPP

// Test-only helpers: randomized instance generation and the busy-period
// PMF-summation oracle for the closed-form moments.

#include <cmath>
#include <random>
#include <vector>

#include "aoiharq/analysis.hpp"
#include "aoiharq/channel.hpp"

namespace aoiharq::testing {

struct Instance {
    HarqScheme scheme;
    AttemptProbs probs;
};

// Moments computed by summing the busy-period PMF directly until the residual
// tail mass drops below tail_tol. Independent of the closed-form expressions.
struct PmfMoments {
    double mean_x = 0.0;
    double mean_x2 = 0.0;
    double mean_y = 0.0;
    double prob_y_n = 0.0;
    double total_mass = 0.0;
};

inline PmfMoments pmf_moments(const HarqScheme& scheme, const AttemptProbs& probs,
                              double tail_tol = 1e-14) {
    PmfMoments mo;
    const double n = scheme.codeword_len;
    const double m = scheme.ir_len;
    for (int j = 1; j < 4000000; ++j) {
        const auto [p_first, p_second] = busy_pmf(scheme, probs, j);
        const double x1 = j * n + (j - 1) * m;
        const double x2 = j * (n + m);
        mo.mean_x += p_first * x1 + p_second * x2;
        mo.mean_x2 += p_first * x1 * x1 + p_second * x2 * x2;
        mo.mean_y += p_first * n + p_second * (n + m);
        mo.prob_y_n += p_first;
        mo.total_mass += p_first + p_second;
        if (1.0 - mo.total_mass < tail_tol) break;
    }
    return mo;
}

inline Instance random_instance(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> n_dist(1, 100);
    std::uniform_int_distribution<int> m_dist(0, 100);
    std::uniform_real_distribution<double> q_dist(0.01, 1.0);
    Instance inst;
    inst.scheme.codeword_len = n_dist(gen);
    inst.scheme.data_len = 1;
    inst.scheme.ir_len = m_dist(gen);
    inst.probs.q1 = q_dist(gen);
    inst.probs.q2 = q_dist(gen);
    if (gen() % 20 == 0) inst.probs.q1 = 1.0;  // exercise the degenerate corner
    if (gen() % 20 == 0) inst.probs.q2 = 1.0;
    return inst;
}

// Instances straddling the R1/R2 boundary n = m*sqrt(1-q1).
inline std::vector<Instance> boundary_instances(std::mt19937_64& gen, int count) {
    std::uniform_int_distribution<int> m_dist(1, 100);
    std::uniform_real_distribution<double> q_dist(0.01, 0.99);
    std::vector<Instance> out;
    while (int(out.size()) < count) {
        Instance inst;
        inst.scheme.data_len = 1;
        inst.scheme.ir_len = m_dist(gen);
        inst.probs.q1 = q_dist(gen);
        inst.probs.q2 = q_dist(gen);
        const int n0 =
            int(std::ceil(inst.scheme.ir_len * std::sqrt(1.0 - inst.probs.q1)));
        for (int n : {n0 - 1, n0 + 1}) {
            if (n < 1) continue;
            inst.scheme.codeword_len = n;
            out.push_back(inst);
        }
    }
    return out;
}

}  // namespace aoiharq::testing

#endif
