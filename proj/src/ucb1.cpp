#include "rank1/ucb1.hpp"

#include <cmath>
#include <stdexcept>

namespace rank1 {

Ucb1::Ucb1(int num_rows, int num_cols) : num_rows_(num_rows), num_cols_(num_cols) {
    if (num_rows < 1 || num_cols < 1)
        throw std::invalid_argument("Ucb1: dimensions must be positive");
    num_arms_ = static_cast<std::size_t>(num_rows) * num_cols;
    counts_.assign(num_arms_, 0);
    means_.assign(num_arms_, 0.0);
    sums_.assign(num_arms_, 0.0);
    inv_sqrt_counts_.assign(num_arms_, 0.0);
}

Arm Ucb1::choose(std::int64_t t) {
    while (first_unpulled_ < num_arms_ && counts_[first_unpulled_] > 0) ++first_unpulled_;
    if (first_unpulled_ < num_arms_) return arm_at(first_unpulled_);

    const double radius = std::sqrt(2.0 * std::log(static_cast<double>(t)));
    std::size_t best = 0;
    double best_score = means_[0] + radius * inv_sqrt_counts_[0];
    for (std::size_t a = 1; a < num_arms_; ++a) {
        const double score = means_[a] + radius * inv_sqrt_counts_[a];
        if (score > best_score) {
            best_score = score;
            best = a;
        }
    }
    return arm_at(best);
}

void Ucb1::observe(const Arm& arm, double reward) {
    const std::size_t a = index(arm);
    if (a >= num_arms_) throw std::out_of_range("Ucb1: arm out of range");
    counts_[a] += 1;
    sums_[a] += reward;
    means_[a] = sums_[a] / static_cast<double>(counts_[a]);
    inv_sqrt_counts_[a] = 1.0 / std::sqrt(static_cast<double>(counts_[a]));
}

}  // namespace rank1
