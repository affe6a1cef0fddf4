#include "rank1/gaps.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rank1 {

namespace {

std::vector<double> gaps_of(const std::vector<double>& means, int best) {
    std::vector<double> g(means.size());
    for (std::size_t i = 0; i < means.size(); ++i) g[i] = means[best] - means[i];
    return g;
}

std::optional<double> min_positive(const std::vector<double>& gaps) {
    std::optional<double> m;
    for (double g : gaps)
        if (g > 0.0 && (!m || g < *m)) m = g;
    return m;
}

std::vector<double> substitute_zeros(const std::vector<double>& gaps,
                                     const std::optional<double>& other_min) {
    std::vector<double> out(gaps.size());
    const double fill = other_min ? *other_min : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < gaps.size(); ++i) out[i] = gaps[i] > 0.0 ? gaps[i] : fill;
    return out;
}

double mean_of(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

GapSummary compute_gaps(const Rank1Instance& inst) {
    inst.validate();
    GapSummary s;
    s.optimal = optimal_arm(inst).arm;
    s.row_gaps = gaps_of(inst.row_means, s.optimal.row);
    s.col_gaps = gaps_of(inst.col_means, s.optimal.col);
    s.min_row_gap = min_positive(s.row_gaps);
    s.min_col_gap = min_positive(s.col_gaps);
    if (!s.min_row_gap && !s.min_col_gap)
        throw std::domain_error("degenerate instance: all row and column gaps are zero");
    s.mu = std::min(mean_of(inst.row_means), mean_of(inst.col_means));
    s.modified_row_gaps = substitute_zeros(s.row_gaps, s.min_col_gap);
    s.modified_col_gaps = substitute_zeros(s.col_gaps, s.min_row_gap);
    return s;
}

}  // namespace rank1
