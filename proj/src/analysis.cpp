#include "aoiharq/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace aoiharq {

std::string_view to_string(Region region) {
    switch (region) {
        case Region::R1: return "R1";
        case Region::R2: return "R2";
        case Region::R3: return "R3";
    }
    return "?";
}

std::pair<double, double> busy_pmf(const HarqScheme& scheme, const AttemptProbs& probs,
                                   int j) {
    if (j < 1) throw std::invalid_argument("busy_pmf: j must be >= 1");
    (void)scheme;  // the support points jn+(j-1)m, j(n+m) are the caller's business
    const double f1 = 1.0 - probs.q1;
    const double f2 = 1.0 - probs.q2;
    const double both_fail = std::pow(f1 * f2, j - 1);
    return {both_fail * probs.q1, both_fail * f1 * probs.q2};
}

EpochMoments epoch_moments(const HarqScheme& scheme, const AttemptProbs& probs) {
    const double n = scheme.codeword_len;
    const double m = scheme.ir_len;
    const double q1 = probs.q1;
    const double q2 = probs.q2;
    const double d = probs.denom();

    EpochMoments mo;
    mo.denom = d;
    mo.mean_x = (n + m * (1.0 - q1)) / d;
    mo.mean_x2 = ((n + m) * (n + m) * (2.0 - q1 - q2 + q1 * q2) - 2.0 * m * (n + m) * q1) /
                     (d * d) +
                 m * m * q1 / d;
    mo.mean_y = n + m * (1.0 - q1) * q2 / d;
    mo.prob_y_n = q1 / d;
    return mo;
}

EpochObjective epoch_objective(const HarqScheme& scheme, const AttemptProbs& probs,
                               const WaitingPolicy& policy) {
    if (policy.w1 < 0.0 || policy.w2 < 0.0)
        throw std::invalid_argument("waiting times must be non-negative");
    const EpochMoments mo = epoch_moments(scheme, probs);
    const double n = scheme.codeword_len;
    const double m = scheme.ir_len;
    const double q1 = probs.q1;
    const double p2 = (1.0 - probs.q1) * probs.q2;  // joint weight of a Y=n+m epoch start
    const double w1 = policy.w1;
    const double w2 = policy.w2;

    const double mean_w = (q1 * w1 + p2 * w2) / mo.denom;
    const double mean_w2 = (q1 * w1 * w1 + p2 * w2 * w2) / mo.denom;
    const double mean_yw = (q1 * w1 * n + p2 * w2 * (n + m)) / mo.denom;

    EpochObjective obj;
    obj.mean_l = mo.mean_x + mean_w;
    obj.mean_q = mean_yw + mo.mean_y * mo.mean_x + 0.5 * mo.mean_x2 +
                 mo.mean_x * mean_w + 0.5 * mean_w2;
    obj.ratio = obj.mean_q / obj.mean_l;
    return obj;
}

WaitingPolicy optimal_waits(double lambda, const HarqScheme& scheme,
                            const AttemptProbs& probs) {
    const double mean_x = epoch_moments(scheme, probs).mean_x;
    const double n = scheme.codeword_len;
    const double m = scheme.ir_len;
    WaitingPolicy policy;
    policy.w1 = std::max(lambda - mean_x - n, 0.0);
    policy.w2 = std::max(lambda - mean_x - n - m, 0.0);
    return policy;
}

double p_of_lambda(double lambda, const HarqScheme& scheme, const AttemptProbs& probs) {
    const EpochObjective obj =
        epoch_objective(scheme, probs, optimal_waits(lambda, scheme, probs));
    return obj.mean_q - lambda * obj.mean_l;
}

double solve_lambda_bisection(const HarqScheme& scheme, const AttemptProbs& probs,
                              double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const EpochMoments mo = epoch_moments(scheme, probs);
    double lo = mo.mean_x;
    double hi = mo.mean_y + 0.5 * mo.mean_x2 / mo.mean_x + 1.0;
    const double p_lo = p_of_lambda(lo, scheme, probs);
    const double p_hi = p_of_lambda(hi, scheme, probs);
    if (!(p_lo > 0.0) || !(p_hi < 0.0))
        throw std::logic_error("bisection bracket does not straddle the root");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (p_of_lambda(mid, scheme, probs) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

AgeSolution closed_form(const HarqScheme& scheme, const AttemptProbs& probs) {
    const EpochMoments mo = epoch_moments(scheme, probs);
    const double n = scheme.codeword_len;
    const double m = scheme.ir_len;

    AgeSolution sol;
    sol.c_xy = mo.mean_x * mo.mean_x + n * mo.mean_x - 0.5 * mo.mean_x2 -
               mo.mean_y * mo.mean_x;

    if (n >= m * std::sqrt(1.0 - probs.q1)) {
        sol.lambda_star = mo.mean_y + 0.5 * mo.mean_x2 / mo.mean_x;
        sol.region = Region::R1;
        sol.policy = WaitingPolicy{0.0, 0.0};
        return sol;
    }

    const double alpha = probs.q1 / mo.denom;
    const double disc = mo.mean_x * mo.mean_x - 2.0 * alpha * sol.c_xy;
    if (disc < 0.0)
        throw std::logic_error("negative discriminant in closed-form optimum");
    sol.lambda_star = mo.mean_x + n + (std::sqrt(disc) - mo.mean_x) / alpha;
    sol.region = Region::R2;
    sol.policy = optimal_waits(sol.lambda_star, scheme, probs);
    return sol;
}

}  // namespace aoiharq
