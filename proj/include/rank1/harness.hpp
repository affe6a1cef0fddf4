#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rank1/environment.hpp"
#include "rank1/instance.hpp"

namespace rank1 {

// Environment selector: a spike family, an explicit instance (inline or from
// a JSON file), or a synthetic low-rank matrix.
struct EnvSpec {
    enum class Kind { Spike, Instance, LowRank };
    Kind kind = Kind::Spike;
    SpikeSpec spike;
    Rank1Instance instance;
    LowRankSpec lowrank;

    // "spike:K=8,L=8,pu=0.7,pv=0.7,du=0.2,dv=0.2"
    // "file:instance.json"
    // "lowrank:K=16,L=16,rank=5,weight=10,seed=7"
    static EnvSpec parse(const std::string& text);
    static EnvSpec of_spike(const SpikeSpec& s);
    static EnvSpec of_instance(Rank1Instance inst);
    static EnvSpec of_lowrank(const LowRankSpec& s);

    int rows() const;
    int cols() const;
    std::string label() const;
};

Environment make_environment(const EnvSpec& spec, std::uint64_t stream_seed);

struct ExperimentConfig {
    EnvSpec env;
    std::string policy_spec = "rank1elim";
    std::int64_t horizon = 0;
    int replications = 1;
    std::uint64_t base_seed = 0;
    int checkpoints = 200;
    std::string out_dir;
    std::string debug_log;  // Rank1Elim per-stage JSON lines (replication 0), empty = off

    void validate() const;
    static ExperimentConfig from_json(const std::string& text);
    std::string to_json() const;
};

// Per-replication record: cumulative pseudo-regret at checkpoint steps plus
// the final pull-count matrix.
struct RegretTrace {
    std::uint64_t seed = 0;  // replication stream seed
    int rows = 0, cols = 0;
    std::vector<std::int64_t> steps;
    std::vector<double> cum_regret;
    std::vector<std::int64_t> pull_counts;  // rows*cols, row-major

    double final_regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }
};

struct SummaryRow {
    EnvSpec env;
    std::string policy;
    std::int64_t horizon = 0;
    int replications = 0;
    double regret_mean = 0.0;
    double regret_std = 0.0;  // sample std; NaN with a single replication
    std::string error;        // non-empty when the cell failed
};

// One replication: environment and policy seeded from
// stream_seed(base_seed, replication); exactly `horizon` choose/observe
// steps; per-step pseudo-regret accumulated against the environment's
// best mean.
RegretTrace run_single(const ExperimentConfig& config, int replication);

// All replications of one config. `parallel` uses OpenMP when available;
// results are identical to the serial path regardless of thread count.
std::vector<RegretTrace> run_replications(const ExperimentConfig& config, bool parallel = true);

SummaryRow summarize(const ExperimentConfig& config, const std::vector<RegretTrace>& traces);

// Runs each cell in order; per-cell failures land in SummaryRow::error and
// the sweep continues.
std::vector<SummaryRow> run_sweep(const std::vector<ExperimentConfig>& grid,
                                  bool parallel = true);

// Experiment grids from the scaling and comparison studies.
std::vector<ExperimentConfig> preset_sweep(const std::string& name, std::int64_t horizon,
                                           int replications, std::uint64_t base_seed);

}  // namespace rank1
