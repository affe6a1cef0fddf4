#pragma once

#include <cstdint>
#include <vector>

#include "rank1/detail/design_matrix.hpp"
#include "rank1/policy.hpp"

namespace rank1 {

// Two-hot feature of arm (i, j): ones at positions i and K + j of a
// (K + L)-vector.
std::vector<double> feature_vector(int row, int col, int num_rows, int num_cols);

struct LinUcbConfig {
    double lambda = 1.0;        // ridge regularizer
    double delta = 1e-3;        // confidence failure rate; the factory sets 1/n
    double log_floor = 1e-2;    // epsilon under the log transform
    double radius_scale = 1.0;  // diagnostic multiplier on the radius
};

// Linear UCB on log-transformed rewards: an observed product w becomes
// log(max(w, epsilon)), regressed on the two-hot features with a ridge
// design matrix and a self-normalized confidence radius.
class LinUcb final : public Policy {
public:
    LinUcb(int num_rows, int num_cols, LinUcbConfig config);

    Arm choose(std::int64_t t) override;
    void observe(const Arm& arm, double reward) override;
    std::string name() const override { return "linucb"; }

    double radius(std::int64_t observations) const;
    double transform(double reward) const;

    const detail::DesignMatrix& design() const { return design_; }
    const std::vector<double>& theta() const { return theta_; }

private:
    int num_rows_, num_cols_, dim_;
    LinUcbConfig config_;
    detail::DesignMatrix design_;
    std::vector<double> response_;  // sum of y * x
    std::vector<double> theta_;
    std::int64_t observations_ = 0;
};

}  // namespace rank1
