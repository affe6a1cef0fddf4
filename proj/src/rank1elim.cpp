#include "rank1/rank1elim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rank1 {

namespace {

std::vector<int> distinct_sorted(const std::vector<int>& xs) {
    std::vector<int> out(xs);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

Rank1Elim::Rank1Elim(int num_rows, int num_cols, std::int64_t horizon, std::uint64_t seed,
                     Options options)
    : num_rows_(num_rows),
      num_cols_(num_cols),
      horizon_(horizon),
      log_horizon_(std::log(static_cast<double>(horizon))),
      rng_(seed),
      options_(std::move(options)) {
    if (num_rows < 1 || num_cols < 1)
        throw std::invalid_argument("Rank1Elim: dimensions must be positive");
    if (horizon < 3)
        throw std::invalid_argument("Rank1Elim: horizon must be at least 3");
    row_map_.resize(num_rows_);
    col_map_.resize(num_cols_);
    std::iota(row_map_.begin(), row_map_.end(), 0);
    std::iota(col_map_.begin(), col_map_.end(), 0);
    c_row_.assign(static_cast<std::size_t>(num_rows_) * num_cols_, 0.0);
    c_col_.assign(static_cast<std::size_t>(num_rows_) * num_cols_, 0.0);
    begin_stage(0, 0);
}

std::int64_t Rank1Elim::stage_length(int stage, std::int64_t horizon) {
    if (stage < 0) throw std::invalid_argument("stage_length: stage must be non-negative");
    const double value =
        std::ceil(4.0 * std::exp2(2.0 * stage) * std::log(static_cast<double>(horizon)));
    if (!(value < 9.0e18)) throw std::overflow_error("stage_length: exceeds 64-bit range");
    return static_cast<std::int64_t>(value);
}

void Rank1Elim::begin_stage(int stage, std::int64_t prev_budget) {
    stage_ = stage;
    prev_budget_ = prev_budget;
    budget_ = stage_length(stage, horizon_);
    width_ = std::sqrt(log_horizon_ / static_cast<double>(budget_));
    active_rows_ = distinct_sorted(row_map_);
    active_cols_ = distinct_sorted(col_map_);
    rounds_done_ = 0;
    block_ = Block::RowExploration;
    block_pos_ = 0;
    draw_pending_ = true;
    if (options_.singleton_shortcircuit && active_rows_.size() == 1 && active_cols_.size() == 1) {
        converged_ = true;
        converged_arm_ = {active_rows_.front(), active_cols_.front()};
    }
}

Arm Rank1Elim::choose(std::int64_t) {
    if (awaiting_observe_)
        throw std::logic_error("Rank1Elim: choose called again before observe");
    Arm arm;
    if (converged_) {
        arm = converged_arm_;
    } else {
        if (draw_pending_) {
            // One fresh uniform draw per block, substituted through the h-map so
            // the partner index is at least as rewarding as the raw draw.
            if (block_ == Block::RowExploration)
                round_col_ = col_map_[rng_.uniform_index(num_cols_)];
            else
                round_row_ = row_map_[rng_.uniform_index(num_rows_)];
            draw_pending_ = false;
        }
        arm = block_ == Block::RowExploration
                  ? Arm{active_rows_[block_pos_], round_col_}
                  : Arm{round_row_, active_cols_[block_pos_]};
    }
    awaiting_observe_ = true;
    pending_ = arm;
    return arm;
}

void Rank1Elim::observe(const Arm& arm, double reward) {
    if (!awaiting_observe_ || !(arm == pending_))
        throw std::logic_error("Rank1Elim: observe does not match the issued arm");
    awaiting_observe_ = false;
    ++pulls_;
    if (converged_) return;

    const std::size_t cell = static_cast<std::size_t>(arm.row) * num_cols_ + arm.col;
    if (block_ == Block::RowExploration)
        c_row_[cell] += reward;
    else
        c_col_[cell] += reward;

    ++block_pos_;
    if (block_ == Block::RowExploration && block_pos_ == active_rows_.size()) {
        block_ = Block::ColExploration;
        block_pos_ = 0;
        draw_pending_ = true;
    } else if (block_ == Block::ColExploration && block_pos_ == active_cols_.size()) {
        block_ = Block::RowExploration;
        block_pos_ = 0;
        draw_pending_ = true;
        if (++rounds_done_ == budget_ - prev_budget_) end_of_stage();
    }
}

void Rank1Elim::end_of_stage() {
    // Means sum each accumulator over its full cross dimension: cells of
    // eliminated partners simply stopped growing.
    last_bounds_ = ConfidenceBounds{};
    last_bounds_.rows = active_rows_;
    last_bounds_.cols = active_cols_;
    const double scale = 1.0 / static_cast<double>(budget_);
    for (int i : active_rows_) {
        double sum = 0.0;
        for (int j = 0; j < num_cols_; ++j) sum += c_row_[static_cast<std::size_t>(i) * num_cols_ + j];
        last_bounds_.row_lower.push_back(sum * scale - width_);
        last_bounds_.row_upper.push_back(sum * scale + width_);
    }
    for (int j : active_cols_) {
        double sum = 0.0;
        for (int i = 0; i < num_rows_; ++i) sum += c_col_[static_cast<std::size_t>(i) * num_cols_ + j];
        last_bounds_.col_lower.push_back(sum * scale - width_);
        last_bounds_.col_upper.push_back(sum * scale + width_);
    }

    // Leaders maximize the lower bound; ascending scan keeps the lowest index
    // on ties.
    const auto leader_of = [](const std::vector<double>& lower) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < lower.size(); ++k)
            if (lower[k] > lower[best]) best = k;
        return best;
    };
    const std::size_t row_leader_pos = leader_of(last_bounds_.row_lower);
    const std::size_t col_leader_pos = leader_of(last_bounds_.col_lower);
    const int row_leader = active_rows_[row_leader_pos];
    const int col_leader = active_cols_[col_leader_pos];

    StageSnapshot snap;
    snap.stage = stage_;
    snap.stage_budget = budget_;
    snap.prev_stage_budget = prev_budget_;
    snap.pulls_so_far = pulls_;
    snap.active_rows = static_cast<int>(active_rows_.size());
    snap.active_cols = static_cast<int>(active_cols_.size());
    snap.row_leader = row_leader;
    snap.col_leader = col_leader;

    // Remap every entry whose representative is dominated (U <= leader's L).
    // The leader itself never qualifies: its own interval has positive width.
    std::vector<double> row_upper_of(num_rows_, 0.0), col_upper_of(num_cols_, 0.0);
    for (std::size_t k = 0; k < active_rows_.size(); ++k)
        row_upper_of[active_rows_[k]] = last_bounds_.row_upper[k];
    for (std::size_t k = 0; k < active_cols_.size(); ++k)
        col_upper_of[active_cols_[k]] = last_bounds_.col_upper[k];
    const double row_threshold = last_bounds_.row_lower[row_leader_pos];
    const double col_threshold = last_bounds_.col_lower[col_leader_pos];

    for (int i : active_rows_)
        if (i != row_leader && row_upper_of[i] <= row_threshold)
            snap.rows_eliminated.push_back(i);
    for (int j : active_cols_)
        if (j != col_leader && col_upper_of[j] <= col_threshold)
            snap.cols_eliminated.push_back(j);

    for (int i = 0; i < num_rows_; ++i)
        if (row_upper_of[row_map_[i]] <= row_threshold) row_map_[i] = row_leader;
    for (int j = 0; j < num_cols_; ++j)
        if (col_upper_of[col_map_[j]] <= col_threshold) col_map_[j] = col_leader;

    if (options_.on_stage_end) options_.on_stage_end(snap);

    begin_stage(stage_ + 1, budget_);
}

}  // namespace rank1
