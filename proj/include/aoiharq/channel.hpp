#ifndef AOIHARQ_CHANNEL_HPP
#define AOIHARQ_CHANNEL_HPP

namespace aoiharq {

// Fixed code design for one HARQ scheme: an l-bit data packet encoded into an
// n-bit codeword, with m incremental-redundancy bits appended for the second
// decoding attempt.
struct HarqScheme {
    int data_len = 1;      // l, bits
    int codeword_len = 1;  // n, bits
    int ir_len = 0;        // m, bits

    // Throws std::invalid_argument unless n >= l >= 1 and m >= 0.
    void validate() const;
};

struct BscParams {
    double epsilon = 0.0;  // crossover probability, must lie in (0, 1/2)

    void validate() const;
};

// Marginal decoding success probabilities of the first and second attempts.
struct AttemptProbs {
    double q1 = 1.0;
    double q2 = 1.0;

    // q1 + q2 - q1*q2, the per-packet overall success probability. Strictly
    // positive for valid AttemptProbs; every epoch-moment denominator uses it.
    double denom() const { return q1 + q2 - q1 * q2; }
};

// P(Bin(n_trials, p) <= k), summed in log space so it stays finite for
// n_trials up to 1e4. Result clamped to [0, 1].
double binomial_cdf(int k, int n_trials, double p);

// Success probabilities of an (n+m, l) MDS code punctured to (n, l) for the
// first attempt, under bounded-distance decoding on a BSC: attempt i succeeds
// iff the number of bit flips is within the correctable radius
// t_i = floor((bits_i - l) / 2). When include_zero_errors is false the
// zero-flip term is excluded from both sums (the literal printed formula some
// treatments use); the default includes it.
//
// Throws std::domain_error if the resulting q1 is zero (infeasible scheme).
AttemptProbs bsc_mds_probs(const HarqScheme& scheme, const BscParams& bsc,
                           bool include_zero_errors = true);

// Validating passthrough for externally supplied probabilities.
// Requires 0 < q1 <= 1 and 0 < q2 <= 1.
AttemptProbs explicit_probs(double q1, double q2);

}  // namespace aoiharq

#endif
