// Benchmark of the replication runner: serial reference versus the OpenMP
// path, on identical workloads, with a bitwise equality check of the traces.
// `--quick` shrinks the workload for CI.

#include <chrono>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rank1/harness.hpp"

using namespace rank1;

namespace {

double timed_run(const ExperimentConfig& config, bool parallel,
                 std::vector<RegretTrace>* out) {
    const auto start = std::chrono::steady_clock::now();
    *out = run_replications(config, parallel);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool traces_equal(const std::vector<RegretTrace>& a, const std::vector<RegretTrace>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].cum_regret != b[k].cum_regret || a[k].pull_counts != b[k].pull_counts)
            return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;

    struct Case {
        const char* label;
        const char* policy;
        int dim;
        std::int64_t horizon;
        int reps;
    };
    const std::vector<Case> cases = quick
        ? std::vector<Case>{{"rank1elim 8x8", "rank1elim", 8, 20000, 8},
                            {"ucb1 8x8", "ucb1", 8, 20000, 8}}
        : std::vector<Case>{{"rank1elim 16x16", "rank1elim", 16, 500000, 16},
                            {"ucb1 16x16", "ucb1", 16, 200000, 16},
                            {"glmucb 8x8", "glmucb:eps=0.01,scale=1", 8, 50000, 16}};

#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (OpenMP disabled; parallel path falls back to serial)\n";
#endif
    std::cout << "case                   serial[s]   parallel[s]   speedup   identical\n";

    int failures = 0;
    for (const auto& c : cases) {
        ExperimentConfig config;
        config.env = EnvSpec::of_spike({c.dim, c.dim, 0.7, 0.7, 0.2, 0.2});
        config.policy_spec = c.policy;
        config.horizon = c.horizon;
        config.replications = c.reps;
        config.base_seed = 99;
        config.checkpoints = 100;

        std::vector<RegretTrace> serial_traces, parallel_traces;
        const double t_serial = timed_run(config, false, &serial_traces);
        const double t_parallel = timed_run(config, true, &parallel_traces);
        const bool same = traces_equal(serial_traces, parallel_traces);
        if (!same) ++failures;

        std::printf("%-22s %9.3f   %11.3f   %7.2fx   %s\n", c.label, t_serial, t_parallel,
                    t_serial / t_parallel, same ? "yes" : "NO");
    }
    return failures;
}
