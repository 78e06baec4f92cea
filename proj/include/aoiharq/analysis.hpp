#ifndef AOIHARQ_ANALYSIS_HPP
#define AOIHARQ_ANALYSIS_HPP

#include <string_view>
#include <utility>

#include "aoiharq/channel.hpp"

namespace aoiharq {

// First and second moments of the channel busy period X, the epoch starting
// age Y, and P(Y = n), for one (scheme, probs) pair.
struct EpochMoments {
    double mean_x = 0.0;    // E[X]
    double mean_x2 = 0.0;   // E[X^2]
    double mean_y = 0.0;    // E[Y]
    double prob_y_n = 0.0;  // P(Y = n)
    double denom = 0.0;     // q1 + q2 - q1*q2, cached
};

// Deterministic waits keyed on the epoch's starting age: w1 after a
// first-attempt success (age n), w2 after a second-attempt success (age n+m).
struct WaitingPolicy {
    double w1 = 0.0;
    double w2 = 0.0;
};

// Which waits are active at the optimum: R1 none, R2 only w1, R3 both.
enum class Region { R1, R2, R3 };

std::string_view to_string(Region region);

struct AgeSolution {
    double lambda_star = 0.0;  // optimal long-term average age
    Region region = Region::R1;
    WaitingPolicy policy;
    double c_xy = 0.0;  // diagnostic; quadratic constant of the R2 branch
};

// Mean epoch area, mean epoch length and their ratio (the average-age
// objective) under a given waiting policy.
struct EpochObjective {
    double mean_q = 0.0;
    double mean_l = 0.0;
    double ratio = 0.0;
};

// Point masses of the busy-period distribution for a given packet index j>=1:
// first  = P(X = j*n + (j-1)*m)   (j-th packet decoded on the first attempt)
// second = P(X = j*(n+m))         (j-th packet decoded on the second attempt)
std::pair<double, double> busy_pmf(const HarqScheme& scheme, const AttemptProbs& probs,
                                   int j);

EpochMoments epoch_moments(const HarqScheme& scheme, const AttemptProbs& probs);

EpochObjective epoch_objective(const HarqScheme& scheme, const AttemptProbs& probs,
                               const WaitingPolicy& policy);

// Threshold-form waits for a candidate average age lambda:
// w1 = [lambda - E[X] - n]^+, w2 = [lambda - E[X] - n - m]^+.
WaitingPolicy optimal_waits(double lambda, const HarqScheme& scheme,
                            const AttemptProbs& probs);

// Fractional-programming auxiliary value E[Q] - lambda*E[L], evaluated at the
// optimal waits for this lambda. Strictly decreasing in lambda; its unique
// root is the optimal average age.
double p_of_lambda(double lambda, const HarqScheme& scheme, const AttemptProbs& probs);

// Bisection root of p_of_lambda. Bracket [E[X], zero-wait ratio + 1] is valid
// analytically; throws std::logic_error if the endpoints fail to straddle the
// root (a formula regression, not an input condition).
double solve_lambda_bisection(const HarqScheme& scheme, const AttemptProbs& probs,
                              double tol = 1e-10);

// Closed-form optimum. Zero waiting is optimal iff n >= m*sqrt(1-q1), in
// which case lambda* = E[Y] + E[X^2]/(2 E[X]); otherwise lambda* solves a
// quadratic in w1 and only w1 is positive. The optimum never lands in R3.
AgeSolution closed_form(const HarqScheme& scheme, const AttemptProbs& probs);

}  // namespace aoiharq

#endif
