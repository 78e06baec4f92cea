#include "aoiharq/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aoiharq {

void HarqScheme::validate() const {
    if (data_len < 1)
        throw std::invalid_argument("data_len must be >= 1, got " + std::to_string(data_len));
    if (codeword_len < data_len)
        throw std::invalid_argument("codeword_len must be >= data_len (" +
                                    std::to_string(codeword_len) + " < " +
                                    std::to_string(data_len) + ")");
    if (ir_len < 0)
        throw std::invalid_argument("ir_len must be >= 0, got " + std::to_string(ir_len));
}

void BscParams::validate() const {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("epsilon must lie in (0, 0.5), got " +
                                    std::to_string(epsilon));
}

namespace {

// Sum of binomial pmf terms for flip counts l in [lo, hi]. Terms are walked
// with the ratio term_{l+1}/term_l = (n-l)/(l+1) * p/(1-p) in log space and
// accumulated with a streaming log-sum-exp, so neither C(n,l) nor p^l is ever
// formed directly.
double binomial_range_sum(int lo, int hi, int n, double p) {
    if (hi < lo) return 0.0;
    if (p == 0.0) return lo == 0 ? 1.0 : 0.0;
    if (p == 1.0) return hi == n ? 1.0 : 0.0;

    const double log_ratio_base = std::log(p) - std::log1p(-p);
    double log_term = n * std::log1p(-p);  // l = 0 term
    double log_max = -HUGE_VAL;
    double scaled_sum = 0.0;
    for (int l = 0; l <= hi; ++l) {
        if (l >= lo) {
            if (log_term > log_max) {
                scaled_sum = scaled_sum * std::exp(log_max - log_term) + 1.0;
                log_max = log_term;
            } else {
                scaled_sum += std::exp(log_term - log_max);
            }
        }
        log_term += std::log(double(n - l)) - std::log(double(l + 1)) + log_ratio_base;
    }
    double result = std::exp(log_max) * scaled_sum;
    return std::clamp(result, 0.0, 1.0);
}

}  // namespace

double binomial_cdf(int k, int n_trials, double p) {
    if (n_trials < 0) throw std::invalid_argument("n_trials must be >= 0");
    if (k < 0 || k > n_trials)
        throw std::invalid_argument("k must lie in [0, n_trials]");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0, 1], got " + std::to_string(p));
    return binomial_range_sum(0, k, n_trials, p);
}

AttemptProbs bsc_mds_probs(const HarqScheme& scheme, const BscParams& bsc,
                           bool include_zero_errors) {
    scheme.validate();
    bsc.validate();
    const int n = scheme.codeword_len;
    const int nm = scheme.codeword_len + scheme.ir_len;
    const int t1 = (n - scheme.data_len) / 2;
    const int t2 = (nm - scheme.data_len) / 2;
    const int lo = include_zero_errors ? 0 : 1;

    AttemptProbs probs;
    probs.q1 = binomial_range_sum(lo, t1, n, bsc.epsilon);
    probs.q2 = binomial_range_sum(lo, t2, nm, bsc.epsilon);
    if (probs.q1 <= 0.0)
        throw std::domain_error("infeasible scheme: first-attempt success probability is zero");
    return probs;
}

AttemptProbs explicit_probs(double q1, double q2) {
    if (!(q1 > 0.0 && q1 <= 1.0))
        throw std::invalid_argument("q1 must lie in (0, 1], got " + std::to_string(q1));
    if (!(q2 > 0.0 && q2 <= 1.0))
        throw std::invalid_argument("q2 must lie in (0, 1], got " + std::to_string(q2));
    return AttemptProbs{q1, q2};
}

}  // namespace aoiharq
