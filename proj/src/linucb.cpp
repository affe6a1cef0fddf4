#include "rank1/linucb.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rank1 {

std::vector<double> feature_vector(int row, int col, int num_rows, int num_cols) {
    if (row < 0 || row >= num_rows || col < 0 || col >= num_cols)
        throw std::out_of_range("feature_vector: indices out of range");
    std::vector<double> x(static_cast<std::size_t>(num_rows) + num_cols, 0.0);
    x[row] = 1.0;
    x[static_cast<std::size_t>(num_rows) + col] = 1.0;
    return x;
}

LinUcb::LinUcb(int num_rows, int num_cols, LinUcbConfig config)
    : num_rows_(num_rows),
      num_cols_(num_cols),
      dim_(num_rows + num_cols),
      config_(config),
      design_(num_rows + num_cols, config.lambda) {
    if (num_rows < 1 || num_cols < 1)
        throw std::invalid_argument("LinUcb: dimensions must be positive");
    if (!(config.lambda > 0.0)) throw std::invalid_argument("LinUcb: lambda must be positive");
    if (!(config.log_floor > 0.0 && config.log_floor < 1.0))
        throw std::invalid_argument("LinUcb: log floor must lie in (0,1)");
    response_.assign(dim_, 0.0);
    theta_.assign(dim_, 0.0);
}

double LinUcb::transform(double reward) const {
    return std::log(std::max(reward, config_.log_floor));
}

double LinUcb::radius(std::int64_t observations) const {
    // Self-normalized bound: R * sqrt(d * ln((1 + t ||x||^2 / lambda) / delta))
    // + sqrt(lambda) * S, with ||x||^2 = 2, R half the log-reward range and S
    // a norm bound on the log-space parameter.
    const double span = -std::log(config_.log_floor);
    const double r_sub_gaussian = 0.5 * span;
    const double s_norm = std::sqrt(2.0) * span;
    const double t = static_cast<double>(observations);
    const double value =
        r_sub_gaussian *
            std::sqrt(dim_ * std::log((1.0 + 2.0 * t / config_.lambda) / config_.delta)) +
        std::sqrt(config_.lambda) * s_norm;
    return config_.radius_scale * value;
}

Arm LinUcb::choose(std::int64_t) {
    const double beta = radius(observations_);
    Arm best{0, 0};
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < num_rows_; ++i) {
        for (int j = 0; j < num_cols_; ++j) {
            const int jj = num_rows_ + j;
            const double estimate = theta_[i] + theta_[jj];
            const double score = estimate + beta * std::sqrt(design_.quad_two_hot(i, jj));
            if (score > best_score) {
                best_score = score;
                best = {i, j};
            }
        }
    }
    return best;
}

void LinUcb::observe(const Arm& arm, double reward) {
    if (arm.row < 0 || arm.row >= num_rows_ || arm.col < 0 || arm.col >= num_cols_)
        throw std::out_of_range("LinUcb: arm out of range");
    const double y = transform(reward);
    const int p = arm.row, q = num_rows_ + arm.col;
    design_.add_two_hot(p, q);
    response_[p] += y;
    response_[q] += y;
    design_.solve(response_, theta_);
    ++observations_;
}

}  // namespace rank1
