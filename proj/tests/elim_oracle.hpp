#pragma once

// Test-side re-derivation of the staged elimination bookkeeping. It consumes
// only the observed (arm, reward) stream plus the public dimensions, keeps
// its own reward tallies, bounds and substitution maps, and exposes them for
// comparison against the policy under test. Any divergence in pull structure,
// stage accounting or elimination decisions fails the parse.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rank1/arm.hpp"

namespace testutil {

class ElimOracle {
public:
    ElimOracle(int num_rows, int num_cols, std::int64_t horizon)
        : num_rows_(num_rows),
          num_cols_(num_cols),
          horizon_(horizon),
          log_n_(std::log(static_cast<double>(horizon))) {
        h_u_.resize(num_rows);
        h_v_.resize(num_cols);
        std::iota(h_u_.begin(), h_u_.end(), 0);
        std::iota(h_v_.begin(), h_v_.end(), 0);
        c_u_.assign(static_cast<std::size_t>(num_rows) * num_cols, 0.0);
        c_v_.assign(static_cast<std::size_t>(num_rows) * num_cols, 0.0);
        begin_stage();
    }

    struct StageRecord {
        int stage = 0;
        std::int64_t budget = 0;       // n_l
        std::int64_t prev_budget = 0;  // n_{l-1}
        std::int64_t pulls_at_end = 0;
        int active_rows = 0, active_cols = 0;
        std::vector<int> h_u_after, h_v_after;
    };

    // Throws std::logic_error when the pull stream deviates from the expected
    // round structure.
    void feed(const rank1::Arm& arm, double reward) {
        const std::size_t row_block = active_rows_.size();
        if (pos_ < row_block) {
            expect(arm.row == active_rows_[pos_], "row-block row order");
            if (pos_ == 0) {
                expect(is_active_col(arm.col), "row-block column must be a representative");
                round_col_ = arm.col;
            } else {
                expect(arm.col == round_col_, "row-block column shared within a round");
            }
            c_u_[static_cast<std::size_t>(arm.row) * num_cols_ + arm.col] += reward;
        } else {
            const std::size_t p = pos_ - row_block;
            expect(arm.col == active_cols_[p], "col-block column order");
            if (p == 0) {
                expect(is_active_row(arm.row), "col-block row must be a representative");
                round_row_ = arm.row;
            } else {
                expect(arm.row == round_row_, "col-block row shared within a round");
            }
            c_v_[static_cast<std::size_t>(arm.row) * num_cols_ + arm.col] += reward;
        }
        ++pulls_;
        if (++pos_ == active_rows_.size() + active_cols_.size()) {
            pos_ = 0;
            if (++rounds_done_ == budget_ - prev_budget_) end_stage();
        }
    }

    static std::int64_t stage_budget(int stage, std::int64_t horizon) {
        return static_cast<std::int64_t>(
            std::ceil(4.0 * std::exp2(2.0 * stage) * std::log(static_cast<double>(horizon))));
    }

    const std::vector<StageRecord>& completed_stages() const { return completed_; }
    const std::vector<int>& row_map() const { return h_u_; }
    const std::vector<int>& col_map() const { return h_v_; }
    int stage() const { return stage_; }
    std::int64_t pulls() const { return pulls_; }

private:
    static void expect(bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("ElimOracle: unexpected pull stream: ") + what);
    }
    bool is_active_row(int i) const {
        return std::binary_search(active_rows_.begin(), active_rows_.end(), i);
    }
    bool is_active_col(int j) const {
        return std::binary_search(active_cols_.begin(), active_cols_.end(), j);
    }

    void begin_stage() {
        budget_ = stage_budget(stage_, horizon_);
        active_rows_ = distinct(h_u_);
        active_cols_ = distinct(h_v_);
        rounds_done_ = 0;
        pos_ = 0;
    }

    static std::vector<int> distinct(const std::vector<int>& xs) {
        std::vector<int> out(xs);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    void end_stage() {
        const double width = std::sqrt(log_n_ / static_cast<double>(budget_));
        std::vector<double> row_mean(active_rows_.size()), col_mean(active_cols_.size());
        for (std::size_t k = 0; k < active_rows_.size(); ++k) {
            double s = 0.0;
            for (int j = 0; j < num_cols_; ++j)
                s += c_u_[static_cast<std::size_t>(active_rows_[k]) * num_cols_ + j];
            row_mean[k] = s / static_cast<double>(budget_);
        }
        for (std::size_t k = 0; k < active_cols_.size(); ++k) {
            double s = 0.0;
            for (int i = 0; i < num_rows_; ++i)
                s += c_v_[static_cast<std::size_t>(i) * num_cols_ + active_cols_[k]];
            col_mean[k] = s / static_cast<double>(budget_);
        }
        const auto argmax = [](const std::vector<double>& xs) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < xs.size(); ++k)
                if (xs[k] > xs[best]) best = k;
            return best;
        };
        const std::size_t rl = argmax(row_mean), cl = argmax(col_mean);
        const int row_leader = active_rows_[rl], col_leader = active_cols_[cl];
        const double row_threshold = row_mean[rl] - width, col_threshold = col_mean[cl] - width;

        std::vector<double> row_upper(num_rows_, 0.0), col_upper(num_cols_, 0.0);
        for (std::size_t k = 0; k < active_rows_.size(); ++k)
            row_upper[active_rows_[k]] = row_mean[k] + width;
        for (std::size_t k = 0; k < active_cols_.size(); ++k)
            col_upper[active_cols_[k]] = col_mean[k] + width;
        for (int i = 0; i < num_rows_; ++i)
            if (row_upper[h_u_[i]] <= row_threshold) h_u_[i] = row_leader;
        for (int j = 0; j < num_cols_; ++j)
            if (col_upper[h_v_[j]] <= col_threshold) h_v_[j] = col_leader;

        StageRecord rec;
        rec.stage = stage_;
        rec.budget = budget_;
        rec.prev_budget = prev_budget_;
        rec.pulls_at_end = pulls_;
        rec.active_rows = static_cast<int>(active_rows_.size());
        rec.active_cols = static_cast<int>(active_cols_.size());
        rec.h_u_after = h_u_;
        rec.h_v_after = h_v_;
        completed_.push_back(std::move(rec));

        ++stage_;
        prev_budget_ = budget_;
        begin_stage();
    }

    int num_rows_, num_cols_;
    std::int64_t horizon_;
    double log_n_;
    std::vector<int> h_u_, h_v_;
    std::vector<double> c_u_, c_v_;
    std::vector<int> active_rows_, active_cols_;
    int stage_ = 0;
    std::int64_t budget_ = 0, prev_budget_ = 0, rounds_done_ = 0;
    std::size_t pos_ = 0;
    int round_col_ = -1, round_row_ = -1;
    std::int64_t pulls_ = 0;
    std::vector<StageRecord> completed_;
};

}  // namespace testutil
