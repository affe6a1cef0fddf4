#include "rank1/glmucb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rank1 {

EmPosterior em_posterior(int w, double p, double q) {
    if (!(p > 0.0 && p <= 1.0) || !(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("em_posterior: estimates must lie in (0,1]");
    if (w == 1) return {1.0, 1.0};
    if (w != 0) throw std::invalid_argument("em_posterior: observation must be 0 or 1");
    const double pq = p * q;
    if (pq >= 1.0)
        throw std::domain_error("em_posterior: w = 0 has zero likelihood when p*q = 1");
    const double denom = 1.0 - pq;
    return {p * (1.0 - q) / denom, q * (1.0 - p) / denom};
}

GlmUcb::GlmUcb(int num_rows, int num_cols, GlmUcbConfig config)
    : num_rows_(num_rows),
      num_cols_(num_cols),
      dim_(num_rows + num_cols),
      config_(config),
      design_(num_rows + num_cols, config.lambda) {
    if (num_rows < 1 || num_cols < 1)
        throw std::invalid_argument("GlmUcb: dimensions must be positive");
    if (!(config.log_floor > 0.0 && config.log_floor < 1.0))
        throw std::invalid_argument("GlmUcb: log floor must lie in (0,1)");
    u_hat_.assign(num_rows_, 0.5);
    v_hat_.assign(num_cols_, 0.5);
    row_success_.assign(num_rows_, 0.0);
    row_exposure_.assign(num_rows_, 0.0);
    col_success_.assign(num_cols_, 0.0);
    col_exposure_.assign(num_cols_, 0.0);
}

double GlmUcb::c_mu() const {
    const double min_u = *std::min_element(u_hat_.begin(), u_hat_.end());
    const double min_v = *std::min_element(v_hat_.begin(), v_hat_.end());
    return std::max(min_u * min_v, config_.log_floor * config_.log_floor);
}

double GlmUcb::radius(std::int64_t t) const {
    // Filippi-style rho(t) = k R sqrt(2 d ln t ln(2 d t / delta)) scaled by
    // 1/c_mu; k = 1 (max slope of exp on log-space <= 0), R = 1/2 for binary
    // rewards.
    const double tt = static_cast<double>(std::max<std::int64_t>(t, 2));
    const double base =
        0.5 * std::sqrt(2.0 * dim_ * std::log(tt) * std::log(2.0 * dim_ * tt / config_.delta));
    return config_.radius_scale * base / c_mu();
}

Arm GlmUcb::choose(std::int64_t t) {
    const double rho = radius(t);
    Arm best{0, 0};
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < num_rows_; ++i) {
        for (int j = 0; j < num_cols_; ++j) {
            const int jj = num_rows_ + j;
            const double score =
                u_hat_[i] * v_hat_[j] + rho * std::sqrt(design_.quad_two_hot(i, jj));
            if (score > best_score) {
                best_score = score;
                best = {i, j};
            }
        }
    }
    return best;
}

void GlmUcb::observe(const Arm& arm, double reward) {
    if (arm.row < 0 || arm.row >= num_rows_ || arm.col < 0 || arm.col >= num_cols_)
        throw std::out_of_range("GlmUcb: arm out of range");
    int w;
    if (reward == 0.0)
        w = 0;
    else if (reward == 1.0)
        w = 1;
    else
        throw std::invalid_argument("GlmUcb: requires binary rewards");

    // E-step with the current estimates; the clamp keeps a w = 0 observation
    // after an all-ones run updatable instead of hitting the zero-likelihood
    // pole.
    constexpr double kTop = 1.0 - 0x1.0p-40;
    const EmPosterior post =
        em_posterior(w, std::min(u_hat_[arm.row], kTop), std::min(v_hat_[arm.col], kTop));
    row_success_[arm.row] += post.row_mean;
    row_exposure_[arm.row] += 1.0;
    col_success_[arm.col] += post.col_mean;
    col_exposure_[arm.col] += 1.0;

    // M-step: closed-form mean refresh of the touched coordinates.
    u_hat_[arm.row] = std::clamp(row_success_[arm.row] / row_exposure_[arm.row],
                                 config_.log_floor, 1.0);
    v_hat_[arm.col] = std::clamp(col_success_[arm.col] / col_exposure_[arm.col],
                                 config_.log_floor, 1.0);

    design_.add_two_hot(arm.row, num_rows_ + arm.col);
}

}  // namespace rank1
