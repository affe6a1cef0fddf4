#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rank1/policy.hpp"
#include "rank1/rng.hpp"

namespace rank1 {

// Interval endpoints for the rows/columns still active at a stage end.
// Width is 2*sqrt(log n / n_l) for every tracked index.
struct ConfidenceBounds {
    std::vector<int> rows;  // active row indices, ascending
    std::vector<double> row_lower, row_upper;
    std::vector<int> cols;
    std::vector<double> col_lower, col_upper;
};

// Emitted after each elimination pass, for debug logs and instrumented tests.
struct StageSnapshot {
    int stage = 0;
    std::int64_t stage_budget = 0;       // n_l
    std::int64_t prev_stage_budget = 0;  // n_{l-1}
    std::int64_t pulls_so_far = 0;
    int active_rows = 0, active_cols = 0;  // |I_l|, |J_l| during the stage
    int row_leader = 0, col_leader = 0;
    std::vector<int> rows_eliminated, cols_eliminated;
};

struct Rank1ElimOptions {
    // Pull the lone surviving arm directly once both sides are singletons.
    // The emitted arm sequence is unchanged; stage bookkeeping stops.
    bool singleton_shortcircuit = true;
    std::function<void(const StageSnapshot&)> on_stage_end;
};

// Staged elimination policy for rank-1 bandits. Each stage l targets gap
// 2^-l with round budget n_l = ceil(4 * 4^l * log n). A round draws one
// random column, substitutes its current representative, and pulls it against
// every active row (rewards go to the row accumulator); then symmetrically
// for one random row against every active column. At the stage end each
// side's mean +- sqrt(log n / n_l) interval is compared against the leader's
// lower bound, and dominated rows/columns are remapped onto the leader.
// Rows and columns are eliminated simultaneously and independently.
class Rank1Elim final : public Policy {
public:
    using Options = Rank1ElimOptions;

    Rank1Elim(int num_rows, int num_cols, std::int64_t horizon, std::uint64_t seed,
              Options options = {});

    Arm choose(std::int64_t t) override;
    void observe(const Arm& arm, double reward) override;
    std::string name() const override { return "rank1elim"; }

    // ceil(4 * 4^stage * log horizon); throws std::overflow_error when the
    // value exceeds the 64-bit range.
    static std::int64_t stage_length(int stage, std::int64_t horizon);

    // Introspection (read-only; used by tests and the debug log).
    int stage() const { return stage_; }
    std::int64_t stage_budget() const { return budget_; }
    std::int64_t pulls() const { return pulls_; }
    double bound_width() const { return width_; }
    bool converged() const { return converged_; }
    const std::vector<int>& row_map() const { return row_map_; }  // h^u
    const std::vector<int>& col_map() const { return col_map_; }  // h^v
    const std::vector<int>& active_rows() const { return active_rows_; }  // I_l
    const std::vector<int>& active_cols() const { return active_cols_; }  // J_l
    const std::vector<double>& row_rewards() const { return c_row_; }  // C^u, K*L row-major
    const std::vector<double>& col_rewards() const { return c_col_; }  // C^v
    const ConfidenceBounds& last_bounds() const { return last_bounds_; }

private:
    enum class Block { RowExploration, ColExploration };

    void begin_stage(int stage, std::int64_t prev_budget);
    void end_of_stage();

    int num_rows_, num_cols_;
    std::int64_t horizon_;
    double log_horizon_;
    Rng rng_;
    Options options_;

    int stage_ = 0;
    std::int64_t budget_ = 0;       // n_l
    std::int64_t prev_budget_ = 0;  // n_{l-1}
    double width_ = 0.0;            // sqrt(log n / n_l)

    std::vector<int> row_map_, col_map_;
    std::vector<int> active_rows_, active_cols_;
    std::vector<double> c_row_, c_col_;

    std::int64_t rounds_done_ = 0;
    Block block_ = Block::RowExploration;
    std::size_t block_pos_ = 0;
    bool draw_pending_ = true;
    int round_col_ = 0;  // mapped column shared by the current row block
    int round_row_ = 0;  // mapped row shared by the current column block

    bool converged_ = false;
    Arm converged_arm_;

    bool awaiting_observe_ = false;
    Arm pending_;
    std::int64_t pulls_ = 0;

    ConfidenceBounds last_bounds_;
};

}  // namespace rank1
