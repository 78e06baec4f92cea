#ifndef AOIHARQ_OPTIMIZER_HPP
#define AOIHARQ_OPTIMIZER_HPP

#include <string>
#include <vector>

#include "aoiharq/analysis.hpp"
#include "aoiharq/channel.hpp"

namespace aoiharq {

// Search box for the (n, m) code-design grid under a BSC channel.
struct GridSpec {
    int data_len = 1;
    int n_lo = 1, n_hi = 1;  // inclusive, n_lo >= data_len
    int m_lo = 0, m_hi = 0;  // inclusive
    BscParams bsc;
    bool include_zero_errors = true;

    void validate() const;
};

struct GridRow {
    int n = 0, m = 0;
    double q1 = 0.0, q2 = 0.0;
    double lambda_star = 0.0;
    Region region = Region::R1;
    double w1 = 0.0, w2 = 0.0;
    bool feasible = false;  // infeasible cells (q1 = 0) keep their slot as a sentinel
};

struct GridResult {
    GridRow best;
    std::vector<GridRow> rows;  // (n, m) lexicographic, one per cell
    double lambda_bar_star = 0.0;       // min over feasible R1 cells (inf if none)
    double lambda_underbar_star = 0.0;  // min over feasible R2 cells (inf if none)
};

// Evaluates the closed-form optimum on every grid cell. Ties within 1e-12
// break toward smaller n, then smaller m. Output order and content are
// deterministic for a given spec regardless of num_threads.
// Throws std::domain_error if every cell is infeasible.
GridResult grid_search(const GridSpec& spec, int num_threads = 1);

struct SweepRow {
    int data_len = 0;
    double epsilon = 0.0;
    GridRow best;
    bool ok = false;
    std::string error;  // set when the grid failed for this (l, eps) pair
};

// Runs grid_search for each (data_len, epsilon) pair with n in
// [data_len, data_len + n_span] and m in [m_lo, m_hi]. Per-pair failures are
// recorded in the row rather than aborting the sweep.
std::vector<SweepRow> sweep_epsilon(const std::vector<int>& data_lens,
                                    const std::vector<double>& eps_grid,
                                    int n_span = 60, int m_lo = 0, int m_hi = 200,
                                    bool include_zero_errors = true,
                                    int num_threads = 1);

}  // namespace aoiharq

#endif
