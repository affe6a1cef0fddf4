#include "rank1/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "rank1/policy_factory.hpp"
#include "rank1/rng.hpp"

namespace rank1 {

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("environment option without '=': " + item);
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

double want_num(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("missing environment option: " + key);
    return std::stod(it->second);
}

}  // namespace

EnvSpec EnvSpec::of_spike(const SpikeSpec& s) {
    EnvSpec e;
    e.kind = Kind::Spike;
    e.spike = s;
    return e;
}

EnvSpec EnvSpec::of_instance(Rank1Instance inst) {
    EnvSpec e;
    e.kind = Kind::Instance;
    e.instance = std::move(inst);
    return e;
}

EnvSpec EnvSpec::of_lowrank(const LowRankSpec& s) {
    EnvSpec e;
    e.kind = Kind::LowRank;
    e.lowrank = s;
    return e;
}

EnvSpec EnvSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = colon == std::string::npos ? text : text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "spike") {
        const auto kv = parse_kv(rest);
        SpikeSpec s;
        s.num_rows = static_cast<int>(want_num(kv, "K"));
        s.num_cols = static_cast<int>(want_num(kv, "L"));
        s.p_u = want_num(kv, "pu");
        s.p_v = want_num(kv, "pv");
        s.delta_u = want_num(kv, "du");
        s.delta_v = want_num(kv, "dv");
        return of_spike(s);
    }
    if (head == "file") {
        if (rest.empty()) throw std::invalid_argument("file: environment needs a path");
        return of_instance(load_instance(rest));
    }
    if (head == "lowrank") {
        const auto kv = parse_kv(rest);
        LowRankSpec s;
        s.num_rows = static_cast<int>(want_num(kv, "K"));
        s.num_cols = static_cast<int>(want_num(kv, "L"));
        s.rank = static_cast<int>(want_num(kv, "rank"));
        s.leading_weight = want_num(kv, "weight");
        s.seed = static_cast<std::uint64_t>(want_num(kv, "seed"));
        return of_lowrank(s);
    }
    throw std::invalid_argument("unknown environment spec: " + text);
}

int EnvSpec::rows() const {
    switch (kind) {
        case Kind::Spike: return spike.num_rows;
        case Kind::Instance: return instance.num_rows;
        case Kind::LowRank: return lowrank.num_rows;
    }
    return 0;
}

int EnvSpec::cols() const {
    switch (kind) {
        case Kind::Spike: return spike.num_cols;
        case Kind::Instance: return instance.num_cols;
        case Kind::LowRank: return lowrank.num_cols;
    }
    return 0;
}

std::string EnvSpec::label() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Spike:
            out << "spike:K=" << spike.num_rows << ",L=" << spike.num_cols << ",pu=" << spike.p_u
                << ",pv=" << spike.p_v << ",du=" << spike.delta_u << ",dv=" << spike.delta_v;
            break;
        case Kind::Instance:
            out << "instance:K=" << instance.num_rows << ",L=" << instance.num_cols;
            break;
        case Kind::LowRank:
            out << "lowrank:K=" << lowrank.num_rows << ",L=" << lowrank.num_cols
                << ",rank=" << lowrank.rank << ",weight=" << lowrank.leading_weight
                << ",seed=" << lowrank.seed;
            break;
    }
    return out.str();
}

Environment make_environment(const EnvSpec& spec, std::uint64_t stream_seed) {
    switch (spec.kind) {
        case EnvSpec::Kind::Spike:
            return Environment::from_instance(make_spike(spec.spike), stream_seed);
        case EnvSpec::Kind::Instance:
            return Environment::from_instance(spec.instance, stream_seed);
        case EnvSpec::Kind::LowRank:
            return Environment::low_rank(spec.lowrank, stream_seed);
    }
    throw std::logic_error("make_environment: unknown kind");
}

void ExperimentConfig::validate() const {
    if (horizon < 3) throw std::invalid_argument("config: horizon must be at least 3");
    if (replications < 1) throw std::invalid_argument("config: replications must be positive");
    if (checkpoints < 1 || static_cast<std::int64_t>(checkpoints) > horizon)
        throw std::invalid_argument("config: checkpoints must lie in [1, horizon]");
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig c;
    c.env = EnvSpec::parse(j.at("env").get<std::string>());
    c.policy_spec = j.at("policy").get<std::string>();
    c.horizon = j.at("horizon").get<std::int64_t>();
    c.replications = j.at("replications").get<int>();
    c.base_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("checkpoints")) c.checkpoints = j.at("checkpoints").get<int>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("debug_log")) c.debug_log = j.at("debug_log").get<std::string>();
    c.validate();
    return c;
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["env"] = env.label();
    j["policy"] = policy_spec;
    j["horizon"] = horizon;
    j["replications"] = replications;
    j["seed"] = base_seed;
    j["checkpoints"] = checkpoints;
    if (!out_dir.empty()) j["out"] = out_dir;
    if (!debug_log.empty()) j["debug_log"] = debug_log;
    return j.dump(2);
}

namespace {

std::vector<std::int64_t> checkpoint_steps(std::int64_t horizon, int checkpoints) {
    std::vector<std::int64_t> steps;
    steps.reserve(checkpoints);
    for (int k = 1; k <= checkpoints; ++k) {
        const std::int64_t s = horizon * k / checkpoints;
        if (steps.empty() || s > steps.back()) steps.push_back(s);
    }
    if (steps.empty() || steps.back() != horizon) steps.push_back(horizon);
    return steps;
}

}  // namespace

RegretTrace run_single(const ExperimentConfig& config, int replication) {
    config.validate();
    const std::uint64_t rep_seed =
        stream_seed(config.base_seed, static_cast<std::uint64_t>(replication));
    Environment env = make_environment(config.env, stream_seed(rep_seed, 0));

    std::ofstream debug_out;
    std::function<void(const StageSnapshot&)> on_stage;
    if (!config.debug_log.empty() && replication == 0) {
        debug_out.open(config.debug_log);
        if (!debug_out) throw std::runtime_error("cannot open debug log: " + config.debug_log);
        on_stage = [&debug_out](const StageSnapshot& s) {
            nlohmann::json j;
            j["stage"] = s.stage;
            j["n_l"] = s.stage_budget;
            j["active_rows"] = s.active_rows;
            j["active_cols"] = s.active_cols;
            j["row_leader"] = s.row_leader;
            j["col_leader"] = s.col_leader;
            j["rows_eliminated"] = s.rows_eliminated;
            j["cols_eliminated"] = s.cols_eliminated;
            debug_out << j.dump() << "\n";
        };
    }

    auto policy = make_policy(config.policy_spec, env.rows(), env.cols(), config.horizon,
                              stream_seed(rep_seed, 1), std::move(on_stage));

    // Per-arm pseudo-regret, precomputed once.
    const int cols = env.cols();
    std::vector<double> gap(env.means().size());
    for (std::size_t a = 0; a < gap.size(); ++a) gap[a] = env.max_mean() - env.means()[a];

    RegretTrace trace;
    trace.seed = rep_seed;
    trace.rows = env.rows();
    trace.cols = cols;
    trace.steps = checkpoint_steps(config.horizon, config.checkpoints);
    trace.cum_regret.reserve(trace.steps.size());
    trace.pull_counts.assign(gap.size(), 0);

    double cum = 0.0;
    std::size_t next_cp = 0;
    for (std::int64_t t = 1; t <= config.horizon; ++t) {
        const Arm arm = policy->choose(t);
        const double reward = env.sample(arm);
        policy->observe(arm, reward);
        const std::size_t cell = static_cast<std::size_t>(arm.row) * cols + arm.col;
        cum += gap[cell];
        trace.pull_counts[cell] += 1;
        if (t == trace.steps[next_cp]) {
            trace.cum_regret.push_back(cum);
            ++next_cp;
        }
    }
    return trace;
}

std::vector<RegretTrace> run_replications(const ExperimentConfig& config, bool parallel) {
    config.validate();
    const int reps = config.replications;
    std::vector<RegretTrace> traces(reps);
    std::vector<std::string> errors(reps);

#ifdef _OPENMP
    if (parallel && reps > 1) {
#pragma omp parallel for schedule(dynamic)
        for (int rep = 0; rep < reps; ++rep) {
            try {
                traces[rep] = run_single(config, rep);
            } catch (const std::exception& e) {
                errors[rep] = e.what();
            }
        }
        for (const auto& err : errors)
            if (!err.empty()) throw std::runtime_error(err);
        return traces;
    }
#else
    (void)parallel;
#endif
    for (int rep = 0; rep < reps; ++rep) traces[rep] = run_single(config, rep);
    return traces;
}

SummaryRow summarize(const ExperimentConfig& config, const std::vector<RegretTrace>& traces) {
    SummaryRow row;
    row.env = config.env;
    row.policy = config.policy_spec;
    row.horizon = config.horizon;
    row.replications = static_cast<int>(traces.size());
    if (traces.empty()) throw std::invalid_argument("summarize: no traces");
    double mean = 0.0;
    for (const auto& t : traces) mean += t.final_regret();
    mean /= static_cast<double>(traces.size());
    row.regret_mean = mean;
    if (traces.size() >= 2) {
        double ss = 0.0;
        for (const auto& t : traces) {
            const double d = t.final_regret() - mean;
            ss += d * d;
        }
        row.regret_std = std::sqrt(ss / static_cast<double>(traces.size() - 1));
    } else {
        row.regret_std = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

std::vector<SummaryRow> run_sweep(const std::vector<ExperimentConfig>& grid, bool parallel) {
    std::vector<SummaryRow> rows;
    rows.reserve(grid.size());
    for (const auto& config : grid) {
        try {
            rows.push_back(summarize(config, run_replications(config, parallel)));
        } catch (const std::exception& e) {
            SummaryRow row;
            row.env = config.env;
            row.policy = config.policy_spec;
            row.horizon = config.horizon;
            row.replications = 0;
            row.regret_mean = std::numeric_limits<double>::quiet_NaN();
            row.regret_std = std::numeric_limits<double>::quiet_NaN();
            row.error = e.what();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<ExperimentConfig> preset_sweep(const std::string& name, std::int64_t horizon,
                                           int replications, std::uint64_t base_seed) {
    std::vector<ExperimentConfig> grid;
    const auto push = [&](const SpikeSpec& s, const std::string& policy) {
        ExperimentConfig c;
        c.env = EnvSpec::of_spike(s);
        c.policy_spec = policy;
        c.horizon = horizon;
        c.replications = replications;
        c.base_seed = base_seed;
        grid.push_back(std::move(c));
    };

    if (name == "table1-left") {
        for (int K : {8, 16, 32})
            for (int L : {8, 16, 32}) push({K, L, 0.7, 0.7, 0.2, 0.2}, "rank1elim");
        return grid;
    }
    if (name == "table1-mid") {
        for (double pu : {0.7, 0.35, 0.175})
            for (double pv : {0.7, 0.35, 0.175}) push({8, 8, pu, pv, 0.2, 0.2}, "rank1elim");
        return grid;
    }
    if (name == "table1-right") {
        for (double du : {0.2, 0.1, 0.05})
            for (double dv : {0.2, 0.1, 0.05}) push({8, 8, 0.7, 0.7, du, dv}, "rank1elim");
        return grid;
    }
    if (name == "fig2") {
        for (int K : {16, 32, 64})
            for (const char* policy :
                 {"rank1elim", "ucb1", "linucb:lambda=1,eps=0.01,scale=1",
                  "glmucb:eps=0.01,scale=1"})
                push({K, K, 0.7, 0.7, 0.2, 0.2}, policy);
        return grid;
    }
    throw std::invalid_argument("unknown sweep preset: " + name);
}

}  // namespace rank1
