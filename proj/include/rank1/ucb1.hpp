#pragma once

#include <cstdint>
#include <vector>

#include "rank1/policy.hpp"

namespace rank1 {

// UCB1 over the flat K*L arm set. Pulls every arm once in ascending row-major
// order, then maximizes mean + sqrt(2 ln t / T(a)) with lowest-index ties.
class Ucb1 final : public Policy {
public:
    Ucb1(int num_rows, int num_cols);

    Arm choose(std::int64_t t) override;
    void observe(const Arm& arm, double reward) override;
    std::string name() const override { return "ucb1"; }

    std::int64_t pull_count(const Arm& a) const { return counts_[index(a)]; }
    const std::vector<std::int64_t>& pull_counts() const { return counts_; }

private:
    std::size_t index(const Arm& a) const {
        return static_cast<std::size_t>(a.row) * num_cols_ + a.col;
    }
    Arm arm_at(std::size_t idx) const {
        return {static_cast<int>(idx / num_cols_), static_cast<int>(idx % num_cols_)};
    }

    int num_rows_, num_cols_;
    std::size_t num_arms_;
    std::size_t first_unpulled_ = 0;
    std::vector<std::int64_t> counts_;
    std::vector<double> means_;
    std::vector<double> sums_;
    std::vector<double> inv_sqrt_counts_;
};

}  // namespace rank1
