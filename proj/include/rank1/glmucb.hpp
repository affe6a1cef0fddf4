#pragma once

#include <cstdint>
#include <vector>

#include "rank1/detail/design_matrix.hpp"
#include "rank1/policy.hpp"

namespace rank1 {

// Posterior means of the latent Bernoulli factors given their observed
// product w and current success estimates (p, q). w = 1 forces both factors
// to 1; w = 0 reweights the three remaining joint outcomes.
// Throws std::domain_error when w = 0 and p*q = 1 (impossible observation).
struct EmPosterior {
    double row_mean = 0.0;
    double col_mean = 0.0;
};
EmPosterior em_posterior(int w, double p, double q);

struct GlmUcbConfig {
    double lambda = 1.0;
    double delta = 1e-3;        // the factory sets 1/n
    double log_floor = 1e-2;    // epsilon: estimate floor, c_mu floor epsilon^2
    double radius_scale = 1.0;
};

// Generalized linear UCB with exp mean function on log-space parameters
// theta = (log u_hat, log v_hat) clipped to [log eps, 0]. Factor estimates
// come from an online EM over the product-of-Bernoullis likelihood; the
// exploration radius carries the 1/c_mu scaling with c_mu the smallest
// estimated arm mean (floored at eps^2). Rewards must be binary.
class GlmUcb final : public Policy {
public:
    GlmUcb(int num_rows, int num_cols, GlmUcbConfig config);

    Arm choose(std::int64_t t) override;
    void observe(const Arm& arm, double reward) override;
    std::string name() const override { return "glmucb"; }

    double c_mu() const;
    double radius(std::int64_t t) const;  // includes the 1/c_mu scaling

    const std::vector<double>& row_estimates() const { return u_hat_; }
    const std::vector<double>& col_estimates() const { return v_hat_; }

private:
    int num_rows_, num_cols_, dim_;
    GlmUcbConfig config_;
    detail::DesignMatrix design_;
    std::vector<double> u_hat_, v_hat_;  // mean-space estimates in [eps, 1]
    std::vector<double> row_success_, row_exposure_;
    std::vector<double> col_success_, col_exposure_;
};

}  // namespace rank1
