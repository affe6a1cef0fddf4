#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "rank1/emit.hpp"
#include "rank1/harness.hpp"
#include "rank1/policy_factory.hpp"
#include "rank1/rng.hpp"

using namespace rank1;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.env = EnvSpec::of_spike({2, 2, 0.5, 0.5, 0.25, 0.25});
    c.policy_spec = "ucb1";
    c.horizon = 3000;
    c.replications = 4;
    c.base_seed = 9;
    c.checkpoints = 50;
    return c;
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/rank1_test_") + name;
}

// Second UCB1 implementation, written independently of the library: flat
// recomputation of every index with std::log, plain std:: distributions.
double oracle_ucb1_mean_regret(const SpikeSpec& spec, int horizon, int reps,
                               unsigned long long seed0, double* std_out) {
    std::vector<double> finals;
    for (int rep = 0; rep < reps; ++rep) {
        std::mt19937_64 gen(seed0 + 1000003ull * rep);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const int K = spec.num_rows, L = spec.num_cols, A = K * L;
        std::vector<double> u(K, spec.p_u), v(L, spec.p_v);
        u[0] += spec.delta_u;
        v[0] += spec.delta_v;
        const double best = u[0] * v[0];
        std::vector<long long> count(A, 0);
        std::vector<double> sum(A, 0.0);
        double regret = 0.0;
        for (int t = 1; t <= horizon; ++t) {
            int pick = -1;
            double best_score = -1e300;
            for (int a = 0; a < A; ++a) {
                double score;
                if (count[a] == 0) {
                    pick = a;
                    break;
                }
                score = sum[a] / count[a] + std::sqrt(2.0 * std::log(double(t)) / count[a]);
                if (score > best_score) {
                    best_score = score;
                    pick = a;
                }
            }
            const int i = pick / L, j = pick % L;
            const double r =
                (unif(gen) < u[i] ? 1.0 : 0.0) * (unif(gen) < v[j] ? 1.0 : 0.0);
            count[pick] += 1;
            sum[pick] += r;
            regret += best - u[i] * v[j];
        }
        finals.push_back(regret);
    }
    double mean = 0.0;
    for (double f : finals) mean += f;
    mean /= finals.size();
    double ss = 0.0;
    for (double f : finals) ss += (f - mean) * (f - mean);
    *std_out = std::sqrt(ss / (finals.size() - 1));
    return mean;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("env spec strings parse and label back") {
    const auto spike = EnvSpec::parse("spike:K=8,L=8,pu=0.7,pv=0.7,du=0.2,dv=0.2");
    CHECK(spike.kind == EnvSpec::Kind::Spike);
    CHECK(spike.rows() == 8);
    CHECK(spike.spike.delta_v == doctest::Approx(0.2));
    CHECK(EnvSpec::parse(spike.label()).spike.p_u == doctest::Approx(0.7));

    const auto lr = EnvSpec::parse("lowrank:K=16,L=16,rank=5,weight=10,seed=7");
    CHECK(lr.kind == EnvSpec::Kind::LowRank);
    CHECK(lr.lowrank.rank == 5);

    CHECK_THROWS_AS(EnvSpec::parse("nope:K=1"), std::invalid_argument);
    CHECK_THROWS_AS(EnvSpec::parse("spike:K=8"), std::invalid_argument);
}

TEST_CASE("config JSON mirror") {
    auto c = small_config();
    c.out_dir = "/tmp/somewhere";
    const auto back = ExperimentConfig::from_json(c.to_json());
    CHECK(back.policy_spec == "ucb1");
    CHECK(back.horizon == 3000);
    CHECK(back.replications == 4);
    CHECK(back.base_seed == 9);
    CHECK(back.checkpoints == 50);
    CHECK(back.env.label() == c.env.label());

    auto bad = small_config();
    bad.checkpoints = 99999;  // exceeds horizon
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("single optimal arm accumulates zero regret") {
    ExperimentConfig c;
    c.env = EnvSpec::of_instance(make_instance({1.0}, {1.0}, NoiseModel::point_mass()));
    c.policy_spec = "ucb1";
    c.horizon = 100;
    c.replications = 1;
    c.base_seed = 4;
    c.checkpoints = 10;
    const auto trace = run_single(c, 0);
    CHECK(trace.final_regret() == 0.0);
    CHECK(trace.pull_counts[0] == 100);
}

TEST_CASE("traces replay byte-for-byte and conserve pulls") {
    const auto c = small_config();
    for (const char* policy : {"ucb1", "rank1elim", "linucb:lambda=1,eps=0.01,scale=1",
                               "glmucb:eps=0.01,scale=1"}) {
        auto cc = c;
        cc.policy_spec = policy;
        const auto a = run_single(cc, 2);
        const auto b = run_single(cc, 2);
        CHECK(a.cum_regret == b.cum_regret);
        CHECK(a.pull_counts == b.pull_counts);
        std::int64_t total = 0;
        for (auto n : a.pull_counts) total += n;
        CHECK(total == cc.horizon);
        // Monotone cumulative regret.
        for (std::size_t k = 1; k < a.cum_regret.size(); ++k)
            CHECK(a.cum_regret[k] >= a.cum_regret[k - 1]);
    }
}

TEST_CASE("parallel replications equal the serial reference exactly") {
    const auto c = small_config();
    const auto serial = run_replications(c, /*parallel=*/false);
    const auto parallel = run_replications(c, /*parallel=*/true);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t r = 0; r < serial.size(); ++r) {
        CHECK(serial[r].cum_regret == parallel[r].cum_regret);
        CHECK(serial[r].pull_counts == parallel[r].pull_counts);
        CHECK(serial[r].seed == parallel[r].seed);
    }
}

TEST_CASE("ucb1 agrees with an independent reimplementation") {
    SpikeSpec spec{2, 2, 0.5, 0.5, 0.25, 0.25};
    ExperimentConfig c;
    c.env = EnvSpec::of_spike(spec);
    c.policy_spec = "ucb1";
    c.horizon = 10000;
    c.replications = 50;
    c.base_seed = 77;
    c.checkpoints = 10;
    const auto row = summarize(c, run_replications(c));

    double oracle_std = 0.0;
    const double oracle_mean =
        oracle_ucb1_mean_regret(spec, 10000, 50, 123456789ull, &oracle_std);
    const double se = std::sqrt(row.regret_std * row.regret_std / 50.0 +
                                oracle_std * oracle_std / 50.0);
    CHECK(std::abs(row.regret_mean - oracle_mean) < 3.0 * se);
}

TEST_CASE("sweep emits rows in grid order and isolates failures") {
    std::vector<ExperimentConfig> grid;
    for (double du : {0.25, 0.5}) {
        auto c = small_config();
        c.env = EnvSpec::of_spike({2, 2, 0.4, 0.4, du, 0.25});
        c.horizon = 500;
        c.checkpoints = 10;
        grid.push_back(c);
    }
    // Poison the middle cell.
    auto bad = small_config();
    bad.policy_spec = "unknown-policy";
    bad.horizon = 500;
    bad.checkpoints = 10;
    grid.insert(grid.begin() + 1, bad);

    const auto rows = run_sweep(grid);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].error.empty());
    CHECK_FALSE(rows[1].error.empty());
    CHECK(rows[2].error.empty());
    CHECK(rows[0].env.spike.delta_u == doctest::Approx(0.25));
    CHECK(rows[2].env.spike.delta_u == doctest::Approx(0.5));
}

TEST_CASE("identical point-mass replications have zero std") {
    ExperimentConfig c;
    c.env = EnvSpec::of_instance(make_instance({0.9, 0.2}, {0.8}, NoiseModel::point_mass()));
    c.policy_spec = "ucb1";
    c.horizon = 200;
    c.replications = 5;
    c.base_seed = 5;
    c.checkpoints = 4;
    const auto row = summarize(c, run_replications(c));
    CHECK(row.regret_std == 0.0);
}

TEST_CASE("preset grids have the documented shapes") {
    CHECK(preset_sweep("table1-left", 100, 2, 1).size() == 9);
    CHECK(preset_sweep("table1-mid", 100, 2, 1).size() == 9);
    CHECK(preset_sweep("table1-right", 100, 2, 1).size() == 9);
    CHECK(preset_sweep("fig2", 100, 2, 1).size() == 12);
    CHECK_THROWS_AS(preset_sweep("table9", 100, 2, 1), std::invalid_argument);
    const auto left = preset_sweep("table1-left", 100, 2, 1);
    CHECK(left[0].env.spike.num_rows == 8);
    CHECK(left[8].env.spike.num_rows == 32);
}

TEST_CASE("summary CSV round-trips to full precision") {
    std::vector<ExperimentConfig> grid;
    for (int k = 0; k < 9; ++k) {
        auto c = small_config();
        c.env = EnvSpec::of_spike({2, 2, 0.5, 0.5, 0.021 + 0.05 * k, 0.25});
        c.horizon = 400;
        c.checkpoints = 8;
        c.replications = 2;
        grid.push_back(c);
    }
    const auto rows = run_sweep(grid);
    std::ostringstream out;
    write_summary_csv(rows, out);

    std::istringstream text(out.str());
    std::string line;
    int lines = 0;
    while (std::getline(text, line)) ++lines;
    CHECK(lines == 10);  // header + 9

    std::istringstream again(out.str());
    const auto parsed = parse_summary_csv(again);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(parsed[k].regret_mean ==
              doctest::Approx(rows[k].regret_mean).epsilon(1e-12));
        CHECK(parsed[k].regret_std == doctest::Approx(rows[k].regret_std).epsilon(1e-12));
        CHECK(parsed[k].delta_u == doctest::Approx(rows[k].env.spike.delta_u).epsilon(1e-12));
        CHECK(parsed[k].policy == "ucb1");
    }

    CHECK_THROWS_AS(write_summary_csv({}, out), std::invalid_argument);
    const std::vector<RegretTrace> none;
    CHECK_THROWS_AS(write_trace_csv(none, out), std::invalid_argument);
}

TEST_CASE("trace CSV and SVG emit well-formed output") {
    auto c = small_config();
    c.replications = 3;
    const auto traces = run_replications(c);
    std::ostringstream out;
    write_trace_csv(traces, out);
    CHECK(out.str().rfind("step,mean_regret,std_regret\n", 0) == 0);

    const auto stats = aggregate_traces(traces);
    SvgSeries series{"ucb1", stats.steps, stats.mean_regret};
    std::ostringstream svg;
    write_regret_svg({series}, svg);
    CHECK(svg.str().find("<svg") != std::string::npos);
    CHECK(svg.str().find("<polyline") != std::string::npos);
    CHECK(svg.str().find("ucb1") != std::string::npos);
}

TEST_CASE("rank1elim debug log emits one JSON line per stage") {
    auto c = small_config();
    c.policy_spec = "rank1elim";
    c.horizon = 2000;
    c.replications = 1;
    c.debug_log = temp_path("debug.jsonl");
    run_replications(c, false);

    std::ifstream in(c.debug_log);
    REQUIRE(in.good());
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.contains("stage"));
        CHECK(j.contains("n_l"));
        CHECK(j.contains("active_rows"));
        CHECK(j.contains("row_leader"));
        CHECK(j.contains("rows_eliminated"));
        ++lines;
    }
    CHECK(lines >= 1);
    std::remove(c.debug_log.c_str());
}

TEST_CASE("traces JSON dump carries config and replication payloads") {
    auto c = small_config();
    c.replications = 2;
    const auto traces = run_replications(c);
    const std::string path = temp_path("traces.json");
    write_traces_json(c, traces, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    CHECK(j["replications"].size() == 2);
    CHECK(j["config"]["policy"] == "ucb1");
    std::remove(path.c_str());
}

}  // TEST_SUITE
