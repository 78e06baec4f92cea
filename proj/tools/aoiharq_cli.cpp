// Command-line front end: analyze one code design, validate the analysis
// against simulation, optimize (n, m) over a grid, or sweep the BSC crossover
// probability. Single results are JSON, tables are CSV. Primary outputs are
// byte-identical across runs with the same flags and seed; the timestamped
// manifest goes to a sibling <out>.manifest.json.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aoiharq/analysis.hpp"
#include "aoiharq/channel.hpp"
#include "aoiharq/optimizer.hpp"
#include "aoiharq/sim.hpp"
#include "aoiharq/version.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadParams = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInconsistent = 4;

constexpr double kSelfCheckTol = 1e-8;

struct ChannelOpts {
    int l = 15;
    int n = 20;
    int m = 0;
    std::optional<double> eps;
    std::optional<double> q1;
    std::optional<double> q2;
    std::string convention = "zero-inclusive";

    bool include_zero_errors() const { return convention == "zero-inclusive"; }

    aoiharq::AttemptProbs resolve_probs() const {
        const aoiharq::HarqScheme scheme{l, n, m};
        if (q1 && q2) {
            if (eps) throw CLI::ValidationError("give either --eps or --q1/--q2, not both");
            scheme.validate();
            return aoiharq::explicit_probs(*q1, *q2);
        }
        if (!eps) throw CLI::ValidationError("either --eps or both --q1 and --q2 required");
        return aoiharq::bsc_mds_probs(scheme, aoiharq::BscParams{*eps},
                                      include_zero_errors());
    }
};

void add_channel_opts(CLI::App* cmd, ChannelOpts& ch) {
    cmd->add_option("--l", ch.l, "data packet length in bits")->capture_default_str();
    cmd->add_option("--n", ch.n, "codeword length in bits")->capture_default_str();
    cmd->add_option("--m", ch.m, "incremental-redundancy length in bits")
        ->capture_default_str();
    cmd->add_option("--eps", ch.eps, "BSC crossover probability in (0, 0.5)");
    cmd->add_option("--q1", ch.q1, "explicit first-attempt success probability");
    cmd->add_option("--q2", ch.q2, "explicit second-attempt success probability");
    cmd->add_option("--convention", ch.convention,
                    "summation convention for the BSC/MDS success probabilities")
        ->check(CLI::IsMember({"zero-inclusive", "paper-literal"}))
        ->capture_default_str();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

void write_output(const std::string& out_path, const std::string& content,
                  const ordered_json& manifest) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << content;
    std::ofstream mf(out_path + ".manifest.json", std::ios::binary);
    mf << manifest.dump(2) << '\n';
}

ordered_json make_manifest(const std::string& command, const ordered_json& params) {
    return ordered_json{{"command", command},
                        {"params", params},
                        {"artifact_version", AOIHARQ_VERSION},
                        {"timestamp", iso_now()}};
}

ordered_json channel_params(const ChannelOpts& ch) {
    ordered_json p{{"l", ch.l}, {"n", ch.n}, {"m", ch.m}, {"convention", ch.convention}};
    if (ch.eps) p["eps"] = *ch.eps;
    if (ch.q1) p["q1"] = *ch.q1;
    if (ch.q2) p["q2"] = *ch.q2;
    return p;
}

ordered_json analyze_json(const ChannelOpts& ch) {
    const aoiharq::HarqScheme scheme{ch.l, ch.n, ch.m};
    scheme.validate();
    const aoiharq::AttemptProbs probs = ch.resolve_probs();
    const aoiharq::EpochMoments mo = aoiharq::epoch_moments(scheme, probs);
    const aoiharq::AgeSolution sol = aoiharq::closed_form(scheme, probs);
    const double lambda_bisect = aoiharq::solve_lambda_bisection(scheme, probs);
    if (std::abs(lambda_bisect - sol.lambda_star) > kSelfCheckTol)
        throw std::logic_error("bisection/closed-form disagreement: " +
                               fmt(lambda_bisect) + " vs " + fmt(sol.lambda_star));
    return ordered_json{{"q1", probs.q1},
                        {"q2", probs.q2},
                        {"mean_x", mo.mean_x},
                        {"mean_x2", mo.mean_x2},
                        {"mean_y", mo.mean_y},
                        {"prob_y_n", mo.prob_y_n},
                        {"c_xy", sol.c_xy},
                        {"region", std::string(aoiharq::to_string(sol.region))},
                        {"lambda_star", sol.lambda_star},
                        {"w1", sol.policy.w1},
                        {"w2", sol.policy.w2},
                        {"lambda_bisection", lambda_bisect}};
}

std::string grid_csv(const std::vector<aoiharq::GridRow>& rows, int l, double eps) {
    std::ostringstream os;
    os << "l,eps,n,m,q1,q2,lambda_star,region,w1,w2\n";
    for (const auto& r : rows) {
        os << l << ',' << fmt(eps) << ',' << r.n << ',' << r.m << ',' << fmt(r.q1) << ','
           << fmt(r.q2) << ',' << fmt(r.lambda_star) << ','
           << (r.feasible ? aoiharq::to_string(r.region) : "infeasible") << ','
           << fmt(r.w1) << ',' << fmt(r.w2) << '\n';
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Average age-of-information analysis and code design for "
                 "two-attempt HARQ with incremental redundancy"};
    app.require_subcommand(1);

    ChannelOpts ch;
    std::string out_path;
    int threads = 1;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "closed-form optimum for one design");
    add_channel_opts(analyze, ch);
    analyze->add_option("--out", out_path, "output file (default stdout)");

    // simulate
    auto* simulate =
        app.add_subcommand("simulate", "Monte Carlo validation of the analysis");
    add_channel_opts(simulate, ch);
    aoiharq::SimConfig sim_cfg;
    std::optional<double> ov_w1, ov_w2, ov_lambda;
    simulate->add_option("--epochs", sim_cfg.num_epochs, "epochs to simulate")
        ->capture_default_str();
    simulate->add_option("--warmup", sim_cfg.warmup_epochs, "warmup epochs to discard")
        ->capture_default_str();
    simulate->add_option("--seed", sim_cfg.seed, "RNG seed")->capture_default_str();
    simulate->add_option("--w1", ov_w1, "explicit wait after a first-attempt success");
    simulate->add_option("--w2", ov_w2, "explicit wait after a second-attempt success");
    simulate->add_option("--lambda", ov_lambda,
                         "threshold-policy lambda (default: closed-form optimum)");
    simulate->add_option("--out", out_path, "output file (default stdout)");

    // optimize
    auto* optimize = app.add_subcommand("optimize", "grid search over (n, m)");
    aoiharq::GridSpec gspec;
    double opt_eps = 0.1;
    std::optional<int> opt_n_lo, opt_n_hi;
    std::string csv_path;
    std::string opt_convention = "zero-inclusive";
    optimize->add_option("--l", gspec.data_len, "data packet length in bits")
        ->capture_default_str();
    optimize->add_option("--eps", opt_eps, "BSC crossover probability")
        ->capture_default_str();
    optimize->add_option("--n-lo", opt_n_lo, "smallest codeword length (default l)");
    optimize->add_option("--n-hi", opt_n_hi, "largest codeword length (default l+60)");
    optimize->add_option("--m-lo", gspec.m_lo, "smallest IR length")->capture_default_str();
    gspec.m_hi = 200;
    optimize->add_option("--m-hi", gspec.m_hi, "largest IR length")->capture_default_str();
    optimize->add_option("--convention", opt_convention, "summation convention")
        ->check(CLI::IsMember({"zero-inclusive", "paper-literal"}))
        ->capture_default_str();
    optimize->add_option("--csv", csv_path, "write all grid rows as CSV here");
    optimize->add_option("--out", out_path, "best-design JSON (default stdout)");
    optimize->add_option("--threads", threads, "worker threads for the grid")
        ->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "optimal age vs crossover probability");
    std::vector<int> sweep_ls{15};
    std::vector<double> sweep_eps{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45};
    int sweep_n_span = 60, sweep_m_lo = 0, sweep_m_hi = 200;
    std::string sweep_convention = "zero-inclusive";
    sweep->add_option("--l", sweep_ls, "data packet lengths")->capture_default_str();
    sweep->add_option("--eps", sweep_eps, "crossover probabilities")->capture_default_str();
    sweep->add_option("--n-span", sweep_n_span, "search n in [l, l + n-span]")
        ->capture_default_str();
    sweep->add_option("--m-lo", sweep_m_lo, "smallest IR length")->capture_default_str();
    sweep->add_option("--m-hi", sweep_m_hi, "largest IR length")->capture_default_str();
    sweep->add_option("--convention", sweep_convention, "summation convention")
        ->check(CLI::IsMember({"zero-inclusive", "paper-literal"}))
        ->capture_default_str();
    sweep->add_option("--out", out_path, "output CSV file (default stdout)");
    sweep->add_option("--threads", threads, "worker threads for each grid")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitBadParams;
    }

    try {
        if (*analyze) {
            const ordered_json doc = analyze_json(ch);
            write_output(out_path, doc.dump(2) + "\n",
                         make_manifest("analyze", channel_params(ch)));
        } else if (*simulate) {
            const aoiharq::HarqScheme scheme{ch.l, ch.n, ch.m};
            scheme.validate();
            const aoiharq::AttemptProbs probs = ch.resolve_probs();
            const aoiharq::AgeSolution sol = aoiharq::closed_form(scheme, probs);
            if (ov_w1 || ov_w2) {
                sim_cfg.policy_mode = aoiharq::PolicyMode::ExplicitWaits;
                sim_cfg.w1 = ov_w1.value_or(0.0);
                sim_cfg.w2 = ov_w2.value_or(0.0);
            } else {
                sim_cfg.policy_mode = aoiharq::PolicyMode::Threshold;
                sim_cfg.lambda = ov_lambda.value_or(sol.lambda_star);
            }
            const aoiharq::SimStats stats = aoiharq::run(scheme, probs, sim_cfg);
            const aoiharq::WaitingPolicy policy =
                sim_cfg.policy_mode == aoiharq::PolicyMode::ExplicitWaits
                    ? aoiharq::WaitingPolicy{sim_cfg.w1, sim_cfg.w2}
                    : aoiharq::optimal_waits(sim_cfg.lambda, scheme, probs);
            const double predicted =
                aoiharq::epoch_objective(scheme, probs, policy).ratio;
            const double z = stats.stderr_avg_aoi > 0.0
                                 ? (stats.avg_aoi - predicted) / stats.stderr_avg_aoi
                                 : 0.0;
            ordered_json params = channel_params(ch);
            params["epochs"] = sim_cfg.num_epochs;
            params["warmup"] = sim_cfg.warmup_epochs;
            params["seed"] = sim_cfg.seed;
            if (ov_w1) params["w1"] = *ov_w1;
            if (ov_w2) params["w2"] = *ov_w2;
            if (ov_lambda) params["lambda"] = *ov_lambda;
            const ordered_json doc{
                {"avg_aoi", stats.avg_aoi},
                {"stderr_avg_aoi", stats.stderr_avg_aoi},
                {"mean_x_hat", stats.mean_x_hat},
                {"mean_x2_hat", stats.mean_x2_hat},
                {"mean_y_hat", stats.mean_y_hat},
                {"prob_y_n_hat", stats.prob_y_n_hat},
                {"mean_q_hat", stats.mean_q_hat},
                {"mean_l_hat", stats.mean_l_hat},
                {"epochs_measured", stats.epochs_measured},
                {"predicted_avg_aoi", predicted},
                {"lambda_star", sol.lambda_star},
                {"z_score", z}};
            write_output(out_path, doc.dump(2) + "\n", make_manifest("simulate", params));
        } else if (*optimize) {
            gspec.bsc = aoiharq::BscParams{opt_eps};
            gspec.include_zero_errors = opt_convention == "zero-inclusive";
            gspec.n_lo = opt_n_lo.value_or(gspec.data_len);
            gspec.n_hi = opt_n_hi.value_or(gspec.data_len + 60);
            const aoiharq::GridResult result = aoiharq::grid_search(gspec, threads);
            const ordered_json params{{"l", gspec.data_len},
                                      {"eps", opt_eps},
                                      {"n_lo", gspec.n_lo},
                                      {"n_hi", gspec.n_hi},
                                      {"m_lo", gspec.m_lo},
                                      {"m_hi", gspec.m_hi},
                                      {"convention", opt_convention}};
            if (!csv_path.empty())
                write_output(csv_path, grid_csv(result.rows, gspec.data_len, opt_eps),
                             make_manifest("optimize", params));
            const ordered_json doc{
                {"n", result.best.n},
                {"m", result.best.m},
                {"q1", result.best.q1},
                {"q2", result.best.q2},
                {"lambda_star", result.best.lambda_star},
                {"region", std::string(aoiharq::to_string(result.best.region))},
                {"w1", result.best.w1},
                {"w2", result.best.w2},
                {"lambda_bar_star", result.lambda_bar_star},
                {"lambda_underbar_star", result.lambda_underbar_star}};
            write_output(out_path, doc.dump(2) + "\n", make_manifest("optimize", params));
        } else if (*sweep) {
            const auto table = aoiharq::sweep_epsilon(
                sweep_ls, sweep_eps, sweep_n_span, sweep_m_lo, sweep_m_hi,
                sweep_convention == "zero-inclusive", threads);
            std::ostringstream os;
            os << "l,eps,n,m,q1,q2,lambda_star,region,w1,w2\n";
            for (const auto& row : table) {
                if (row.ok) {
                    const auto& b = row.best;
                    os << row.data_len << ',' << fmt(row.epsilon) << ',' << b.n << ','
                       << b.m << ',' << fmt(b.q1) << ',' << fmt(b.q2) << ','
                       << fmt(b.lambda_star) << ',' << aoiharq::to_string(b.region) << ','
                       << fmt(b.w1) << ',' << fmt(b.w2) << '\n';
                } else {
                    os << row.data_len << ',' << fmt(row.epsilon)
                       << ",0,0,0,0,inf,infeasible,0,0\n";
                }
            }
            const ordered_json params{{"l", sweep_ls},
                                      {"eps", sweep_eps},
                                      {"n_span", sweep_n_span},
                                      {"m_lo", sweep_m_lo},
                                      {"m_hi", sweep_m_hi},
                                      {"convention", sweep_convention}};
            write_output(out_path, os.str(), make_manifest("sweep", params));
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadParams;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInconsistent;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadParams;
    }
    return kExitOk;
}
