#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rank1/arm.hpp"
#include "rank1/instance.hpp"
#include "rank1/rng.hpp"

namespace rank1 {

// One elevated row and one elevated column over a flat Bernoulli base:
// row_means = [p_u + delta_u, p_u, ...], col_means analogous.
struct SpikeSpec {
    int num_rows = 0;
    int num_cols = 0;
    double p_u = 0.0;
    double p_v = 0.0;
    double delta_u = 0.0;
    double delta_v = 0.0;
};

Rank1Instance make_spike(const SpikeSpec& spec);

// Synthetic rank-r mean matrix with a dominant leading direction:
// sigma_1 / sigma_2 == leading_weight after one SVD rescaling pass.
struct LowRankSpec {
    int num_rows = 0;
    int num_cols = 0;
    int rank = 1;
    double leading_weight = 10.0;  // > 1
    std::uint64_t seed = 0;        // matrix construction seed, not the reward stream
};

// Samplable reward process. Either a Rank1Instance with its noise model, or an
// explicit (generally not rank-1) Bernoulli mean matrix. Owns its reward RNG
// stream; one Environment per simulation run, nothing shared across threads.
class Environment {
public:
    static Environment from_instance(Rank1Instance inst, std::uint64_t stream_seed);
    static Environment low_rank(const LowRankSpec& spec, std::uint64_t stream_seed);

    int rows() const { return num_rows_; }
    int cols() const { return num_cols_; }

    // One reward draw at `arm` from the owned stream.
    double sample(const Arm& arm);

    double mean(const Arm& arm) const { return means_[arm.row * num_cols_ + arm.col]; }
    const std::vector<double>& means() const { return means_; }
    double max_mean() const { return max_mean_; }
    Arm best_arm() const { return best_arm_; }

    // Null for low-rank environments.
    const Rank1Instance* instance() const { return has_instance_ ? &instance_ : nullptr; }

    // K rows x L columns of expected rewards, plain CSV.
    void write_means_csv(std::ostream& out) const;
    void write_means_csv(const std::string& path) const;

private:
    Environment() : rng_(0) {}

    bool has_instance_ = false;
    Rank1Instance instance_;
    int num_rows_ = 0;
    int num_cols_ = 0;
    std::vector<double> means_;  // row-major K*L
    double max_mean_ = 0.0;
    Arm best_arm_;
    Rng rng_;
};

// Convenience wrapper matching the sample/mean contract with an external stream.
double sample_reward(const Rank1Instance& inst, const Arm& arm, Rng& rng);

}  // namespace rank1
