#pragma once

#include <optional>
#include <vector>

#include "rank1/arm.hpp"
#include "rank1/instance.hpp"

namespace rank1 {

// Gap statistics of an instance. Row gap i is max(u) - u[i]; min gaps range
// over strictly positive gaps only and are absent when a side is flat.
// Modified gaps substitute each zero gap with the other side's minimum gap
// (+infinity when that minimum is absent).
struct GapSummary {
    std::vector<double> row_gaps;
    std::vector<double> col_gaps;
    std::optional<double> min_row_gap;
    std::optional<double> min_col_gap;
    double mu = 0.0;  // min of the two mean-vector averages
    std::vector<double> modified_row_gaps;
    std::vector<double> modified_col_gaps;
    Arm optimal;
};

// Throws std::domain_error("degenerate instance") when both mean vectors are
// constant (every gap zero on both sides).
GapSummary compute_gaps(const Rank1Instance& inst);

}  // namespace rank1
