#include "aoiharq/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace aoiharq {

void GridSpec::validate() const {
    if (data_len < 1) throw std::invalid_argument("data_len must be >= 1");
    if (n_lo < data_len) throw std::invalid_argument("n_lo must be >= data_len");
    if (n_hi < n_lo) throw std::invalid_argument("empty n range");
    if (m_lo < 0) throw std::invalid_argument("m_lo must be >= 0");
    if (m_hi < m_lo) throw std::invalid_argument("empty m range");
    bsc.validate();
}

namespace {

void eval_n_slice(const GridSpec& spec, int n, GridRow* out) {
    const int m_count = spec.m_hi - spec.m_lo + 1;
    for (int i = 0; i < m_count; ++i) {
        const int m = spec.m_lo + i;
        GridRow& row = out[i];
        row.n = n;
        row.m = m;
        const HarqScheme scheme{spec.data_len, n, m};
        try {
            const AttemptProbs probs =
                bsc_mds_probs(scheme, spec.bsc, spec.include_zero_errors);
            const AgeSolution sol = closed_form(scheme, probs);
            row.q1 = probs.q1;
            row.q2 = probs.q2;
            row.lambda_star = sol.lambda_star;
            row.region = sol.region;
            row.w1 = sol.policy.w1;
            row.w2 = sol.policy.w2;
            row.feasible = true;
        } catch (const std::domain_error&) {
            row.lambda_star = std::numeric_limits<double>::infinity();
            row.feasible = false;
        }
    }
}

}  // namespace

GridResult grid_search(const GridSpec& spec, int num_threads) {
    spec.validate();
    const int n_count = spec.n_hi - spec.n_lo + 1;
    const int m_count = spec.m_hi - spec.m_lo + 1;

    GridResult result;
    result.rows.resize(std::size_t(n_count) * m_count);

    // Cells are independent; slices by n keep the output layout fixed so the
    // merge is deterministic no matter how many workers ran.
    const int workers = std::max(1, std::min(num_threads, n_count));
    if (workers == 1) {
        for (int i = 0; i < n_count; ++i)
            eval_n_slice(spec, spec.n_lo + i, result.rows.data() + std::size_t(i) * m_count);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int i = w; i < n_count; i += workers)
                    eval_n_slice(spec, spec.n_lo + i,
                                 result.rows.data() + std::size_t(i) * m_count);
            });
        }
        for (auto& t : pool) t.join();
    }

    constexpr double kTieTol = 1e-12;
    const GridRow* best = nullptr;
    double bar = std::numeric_limits<double>::infinity();
    double underbar = std::numeric_limits<double>::infinity();
    for (const GridRow& row : result.rows) {
        if (!row.feasible) continue;
        if (row.region == Region::R1)
            bar = std::min(bar, row.lambda_star);
        else
            underbar = std::min(underbar, row.lambda_star);
        // rows are in (n, m) lexicographic order, so strict improvement
        // beyond the tie tolerance is exactly the smaller-n-then-m rule
        if (best == nullptr || row.lambda_star < best->lambda_star - kTieTol)
            best = &row;
    }
    if (best == nullptr)
        throw std::domain_error("every grid cell is infeasible");
    result.best = *best;
    result.lambda_bar_star = bar;
    result.lambda_underbar_star = underbar;
    return result;
}

std::vector<SweepRow> sweep_epsilon(const std::vector<int>& data_lens,
                                    const std::vector<double>& eps_grid,
                                    int n_span, int m_lo, int m_hi,
                                    bool include_zero_errors, int num_threads) {
    std::vector<SweepRow> table;
    table.reserve(data_lens.size() * eps_grid.size());
    for (int l : data_lens) {
        for (double eps : eps_grid) {
            SweepRow row;
            row.data_len = l;
            row.epsilon = eps;
            try {
                GridSpec spec;
                spec.data_len = l;
                spec.n_lo = l;
                spec.n_hi = l + n_span;
                spec.m_lo = m_lo;
                spec.m_hi = m_hi;
                spec.bsc = BscParams{eps};
                spec.include_zero_errors = include_zero_errors;
                row.best = grid_search(spec, num_threads).best;
                row.ok = true;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            table.push_back(row);
        }
    }
    return table;
}

}  // namespace aoiharq
