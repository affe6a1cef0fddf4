#pragma once

#include <string>
#include <vector>

#include "rank1/arm.hpp"
#include "rank1/instance.hpp"

namespace rank1 {

// Bernoulli KL divergence d(p, q) with the 0*log(0) = 0 convention.
// q is restricted to (0,1) (identifiability); throws std::domain_error
// otherwise.
double kl_bernoulli(double p, double q);

// Asymptotic regret lower bound: total is the coefficient of log n. Terms are
// indexed by the suboptimal rows/columns they cover. The allocation has its
// K + L - 2 finite entries on the optimal row and column; everything else
// (including the optimal cell) is zero.
struct LowerBoundReport {
    Arm optimal;
    std::vector<int> row_index;     // suboptimal rows, ascending
    std::vector<double> row_terms;  // same length
    std::vector<int> col_index;
    std::vector<double> col_terms;
    double total = 0.0;
    std::vector<double> c_star;  // K*L row-major

    std::string to_json(int num_rows, int num_cols) const;
};

// Bernoulli bound. Requires Bernoulli noise, a unique optimal arm, and all
// cross products u(i)v(j*) and u(i*)v(j) inside (0,1) and distinct from the
// optimum; violations raise std::domain_error / std::invalid_argument.
LowerBoundReport regret_lower_bound(const Rank1Instance& inst);

// Gaussian corollary with common payoff variance sigma^2:
// (2 sigma^2 / v(j*)) sum 1/gap_u + (2 sigma^2 / u(i*)) sum 1/gap_v.
LowerBoundReport gaussian_lower_bound(const Rank1Instance& inst, double sigma);

// Checks the closed-form allocation against an exact vertex enumeration of
// the relaxed allocation LP, the redistribution inequality at every interior
// cell, and `feasible_samples` random feasible points. Intended for K, L <= 3.
bool verify_cstar_optimality(const Rank1Instance& inst, int feasible_samples);

}  // namespace rank1
