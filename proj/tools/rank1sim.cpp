// Command-line simulator: seeded experiments, preset sweeps, policy
// comparisons, and the closed-form regret lower bound. Errors leave a
// machine-readable JSON object on stderr and a nonzero exit code.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rank1/emit.hpp"
#include "rank1/harness.hpp"
#include "rank1/lowerbound.hpp"
#include "rank1/policy_factory.hpp"

namespace {

using namespace rank1;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void ensure_dir(const std::string& dir) {
    if (dir.empty()) throw std::invalid_argument("output directory is required");
    std::filesystem::create_directories(dir);
}

void print_summary_table(const std::vector<SummaryRow>& rows) {
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            std::cout << r.env.label() << "  " << r.policy << "  ERROR: " << r.error << "\n";
            continue;
        }
        std::cout << r.env.label() << "  " << r.policy << "  n=" << r.horizon
                  << "  reps=" << r.replications << "  regret=" << r.regret_mean << " +- "
                  << r.regret_std << "\n";
    }
}

int cmd_simulate(const std::string& config_path, std::string env_spec, std::string policy,
                 std::int64_t horizon, int reps, std::uint64_t seed, int checkpoints,
                 const std::string& out_dir, const std::string& debug_log,
                 const std::string& dump_means, bool serial) {
    ExperimentConfig config;
    if (!config_path.empty()) {
        config = ExperimentConfig::from_json(read_file(config_path));
        if (!env_spec.empty()) config.env = EnvSpec::parse(env_spec);
        if (!policy.empty()) config.policy_spec = policy;
        if (horizon > 0) config.horizon = horizon;
        if (reps > 0) config.replications = reps;
    } else {
        if (env_spec.empty() || policy.empty() || horizon <= 0)
            throw std::invalid_argument("simulate needs --env, --policy and --n (or --config)");
        config.env = EnvSpec::parse(env_spec);
        config.policy_spec = policy;
        config.horizon = horizon;
        config.replications = reps > 0 ? reps : 1;
    }
    config.base_seed = seed;
    config.checkpoints = std::min<std::int64_t>(checkpoints, config.horizon);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!debug_log.empty()) config.debug_log = debug_log;
    config.validate();

    if (!config.out_dir.empty()) ensure_dir(config.out_dir);
    if (!config.debug_log.empty()) {
        const auto parent = std::filesystem::path(config.debug_log).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
    }
    if (!dump_means.empty())
        make_environment(config.env, 0).write_means_csv(dump_means);

    const auto traces = run_replications(config, !serial);
    const auto summary = summarize(config, traces);

    if (!config.out_dir.empty()) {
        const std::string base = config.out_dir + "/";
        write_summary_csv({summary}, base + "summary.csv");
        write_trace_csv(traces, base + "trace.csv");
        write_traces_json(config, traces, base + "traces.json");
    }
    print_summary_table({summary});
    return 0;
}

int cmd_sweep(const std::string& preset, std::int64_t horizon, int reps, std::uint64_t seed,
              const std::string& out_dir, bool serial) {
    const auto grid = preset_sweep(preset, horizon, reps, seed);
    const auto rows = run_sweep(grid, !serial);
    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        write_summary_csv(rows, out_dir + "/summary.csv");
    }
    print_summary_table(rows);
    for (const auto& r : rows)
        if (!r.error.empty()) return 1;
    return 0;
}

// Splits "rank1elim,ucb1,linucb:lambda=1,eps=0.01" into whole policy specs:
// a comma starts a new spec only when the next token begins a known policy
// name, so option lists keep their commas. Semicolons always split.
std::vector<std::string> split_policies(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream semis(text);
    std::string chunk;
    while (std::getline(semis, chunk, ';')) {
        std::istringstream in(chunk);
        std::string item;
        while (std::getline(in, item, ',')) {
            const bool starts_policy = item.rfind("rank1elim", 0) == 0 ||
                                       item.rfind("ucb1", 0) == 0 ||
                                       item.rfind("linucb", 0) == 0 ||
                                       item.rfind("glmucb", 0) == 0;
            if (starts_policy || out.empty())
                out.push_back(item);
            else
                out.back() += "," + item;
        }
    }
    return out;
}

int cmd_compare(int K, int L, double p_u, double p_v, double delta_u, double delta_v,
                const std::string& policies_csv, std::int64_t horizon, int reps,
                std::uint64_t seed, int checkpoints, const std::string& out_dir, bool serial) {
    const std::vector<std::string> policies = split_policies(policies_csv);
    if (policies.empty()) throw std::invalid_argument("compare needs --policies");

    ensure_dir(out_dir);
    std::vector<SummaryRow> rows;
    std::vector<SvgSeries> series;
    for (const auto& policy : policies) {
        ExperimentConfig config;
        config.env = EnvSpec::of_spike({K, L <= 0 ? K : L, p_u, p_v, delta_u, delta_v});
        config.policy_spec = policy;
        config.horizon = horizon;
        config.replications = reps;
        config.base_seed = seed;
        config.checkpoints = std::min<std::int64_t>(checkpoints, horizon);
        const auto traces = run_replications(config, !serial);
        rows.push_back(summarize(config, traces));
        const auto stats = aggregate_traces(traces);
        write_trace_csv(traces, out_dir + "/trace_" + policy_name(policy) + ".csv");
        series.push_back({policy_name(policy), stats.steps, stats.mean_regret});
    }
    write_summary_csv(rows, out_dir + "/summary.csv");
    write_regret_svg(series, out_dir + "/regret.svg");
    print_summary_table(rows);
    return 0;
}

int cmd_lowerbound(const std::string& instance_path, double gaussian_sigma) {
    const auto inst = load_instance(instance_path);
    const LowerBoundReport report = gaussian_sigma > 0.0
                                        ? gaussian_lower_bound(inst, gaussian_sigma)
                                        : regret_lower_bound(inst);
    std::cout << report.to_json(inst.num_rows, inst.num_cols) << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic rank-1 bandit simulator"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run one environment/policy cell");
    std::string sim_config, sim_env, sim_policy, sim_out, sim_debug, sim_dump;
    std::int64_t sim_n = 0;
    int sim_reps = 0, sim_checkpoints = 200;
    std::uint64_t sim_seed = 1;
    bool sim_serial = false;
    sim->add_option("--config", sim_config, "JSON config file mirroring the flags");
    sim->add_option("--env", sim_env, "spike:... | file:path.json | lowrank:...");
    sim->add_option("--policy", sim_policy,
                    "rank1elim | ucb1 | linucb:lambda=..,eps=..,scale=.. | glmucb:...");
    sim->add_option("--n", sim_n, "horizon");
    sim->add_option("--reps", sim_reps, "replications");
    sim->add_option("--seed", sim_seed, "base seed");
    sim->add_option("--checkpoints", sim_checkpoints, "trace resolution");
    sim->add_option("--out", sim_out, "output directory");
    sim->add_option("--debug-log", sim_debug, "rank1elim per-stage JSON lines");
    sim->add_option("--dump-means", sim_dump, "write the mean matrix as CSV");
    sim->add_flag("--serial", sim_serial, "disable replication parallelism");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a preset experiment grid");
    std::string sweep_preset, sweep_out;
    std::int64_t sweep_n = 2000000;
    int sweep_reps = 20;
    std::uint64_t sweep_seed = 1;
    bool sweep_serial = false;
    sweep->add_option("--preset", sweep_preset,
                      "table1-left | table1-mid | table1-right | fig2")
        ->required();
    sweep->add_option("--n", sweep_n, "horizon");
    sweep->add_option("--reps", sweep_reps, "replications per cell");
    sweep->add_option("--seed", sweep_seed, "base seed");
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_flag("--serial", sweep_serial, "disable replication parallelism");

    // compare
    auto* cmp = app.add_subcommand("compare", "run several policies on one spike instance");
    int cmp_K = 16, cmp_L = 0, cmp_reps = 5, cmp_checkpoints = 200;
    double cmp_pu = 0.7, cmp_pv = 0.7, cmp_du = 0.2, cmp_dv = 0.2;
    std::string cmp_policies = "rank1elim;ucb1", cmp_out;
    std::int64_t cmp_n = 2000000;
    std::uint64_t cmp_seed = 1;
    bool cmp_serial = false;
    cmp->add_option("--K", cmp_K, "rows");
    cmp->add_option("--L", cmp_L, "columns (defaults to K)");
    cmp->add_option("--pu", cmp_pu, "row base mean");
    cmp->add_option("--pv", cmp_pv, "column base mean");
    cmp->add_option("--du", cmp_du, "row gap");
    cmp->add_option("--dv", cmp_dv, "column gap");
    cmp->add_option("--policies", cmp_policies, "semicolon-separated policy specs");
    cmp->add_option("--n", cmp_n, "horizon");
    cmp->add_option("--reps", cmp_reps, "replications");
    cmp->add_option("--seed", cmp_seed, "base seed");
    cmp->add_option("--checkpoints", cmp_checkpoints, "trace resolution");
    cmp->add_option("--out", cmp_out, "output directory")->required();
    cmp->add_flag("--serial", cmp_serial, "disable replication parallelism");

    // lowerbound
    auto* lb = app.add_subcommand("lowerbound", "print the asymptotic lower bound as JSON");
    std::string lb_instance;
    double lb_sigma = 0.0;
    lb->add_option("--instance", lb_instance, "instance JSON file")->required();
    lb->add_option("--gaussian", lb_sigma, "use the Gaussian bound with this sigma");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return cmd_simulate(sim_config, sim_env, sim_policy, sim_n, sim_reps, sim_seed,
                                sim_checkpoints, sim_out, sim_debug, sim_dump, sim_serial);
        if (sweep->parsed())
            return cmd_sweep(sweep_preset, sweep_n, sweep_reps, sweep_seed, sweep_out,
                             sweep_serial);
        if (cmp->parsed())
            return cmd_compare(cmp_K, cmp_L, cmp_pu, cmp_pv, cmp_du, cmp_dv, cmp_policies, cmp_n,
                               cmp_reps, cmp_seed, cmp_checkpoints, cmp_out, cmp_serial);
        if (lb->parsed()) return cmd_lowerbound(lb_instance, lb_sigma);
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = e.what();
        std::cerr << err.dump() << std::endl;
        return 1;
    }
    return 0;
}
