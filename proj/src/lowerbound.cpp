#include "rank1/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "rank1/rng.hpp"

namespace rank1 {

double kl_bernoulli(double p, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("kl_bernoulli: non-identifiable (q must lie in (0,1))");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("kl_bernoulli: p must lie in [0,1]");
    const auto term = [](double a, double b) { return a == 0.0 ? 0.0 : a * std::log(a / b); };
    return term(p, q) + term(1.0 - p, 1.0 - q);
}

namespace {

Arm checked_unique_optimum(const Rank1Instance& inst) {
    const OptimalArm best = optimal_arm(inst);
    if (!best.unique)
        throw std::domain_error("lower bound requires a unique optimal arm");
    return best.arm;
}

LowerBoundReport build_report(const Rank1Instance& inst, const Arm& best,
                              const std::function<double(double, double)>& divergence) {
    const int K = inst.num_rows, L = inst.num_cols;
    const double w_star = inst.mean(best);
    LowerBoundReport report;
    report.optimal = best;
    report.c_star.assign(static_cast<std::size_t>(K) * L, 0.0);
    for (int i = 0; i < K; ++i) {
        if (i == best.row) continue;
        const double p = inst.row_means[i] * inst.col_means[best.col];
        const double d = divergence(p, w_star);
        report.row_index.push_back(i);
        report.row_terms.push_back((w_star - p) / d);
        report.c_star[static_cast<std::size_t>(i) * L + best.col] = 1.0 / d;
    }
    for (int j = 0; j < L; ++j) {
        if (j == best.col) continue;
        const double p = inst.row_means[best.row] * inst.col_means[j];
        const double d = divergence(p, w_star);
        report.col_index.push_back(j);
        report.col_terms.push_back((w_star - p) / d);
        report.c_star[static_cast<std::size_t>(best.row) * L + j] = 1.0 / d;
    }
    report.total = 0.0;
    for (double t : report.row_terms) report.total += t;
    for (double t : report.col_terms) report.total += t;
    return report;
}

}  // namespace

LowerBoundReport regret_lower_bound(const Rank1Instance& inst) {
    inst.validate();
    if (inst.noise.kind != NoiseKind::Bernoulli)
        throw std::invalid_argument("regret_lower_bound: requires Bernoulli noise");
    const Arm best = checked_unique_optimum(inst);
    const double w_star = inst.mean(best);
    if (!(w_star > 0.0 && w_star < 1.0))
        throw std::domain_error("regret_lower_bound: optimal mean must lie in (0,1)");
    const auto check_product = [&](double p) {
        if (!(p > 0.0 && p < 1.0) || p == w_star)
            throw std::domain_error(
                "regret_lower_bound: identifiability requires cross products in (0,1) "
                "distinct from the optimum");
    };
    for (int i = 0; i < inst.num_rows; ++i)
        if (i != best.row) check_product(inst.row_means[i] * inst.col_means[best.col]);
    for (int j = 0; j < inst.num_cols; ++j)
        if (j != best.col) check_product(inst.row_means[best.row] * inst.col_means[j]);
    return build_report(inst, best, [](double p, double q) { return kl_bernoulli(p, q); });
}

LowerBoundReport gaussian_lower_bound(const Rank1Instance& inst, double sigma) {
    inst.validate();
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_lower_bound: sigma must be positive");
    const Arm best = checked_unique_optimum(inst);
    for (int i = 0; i < inst.num_rows; ++i)
        if (i != best.row && !(inst.row_means[best.row] - inst.row_means[i] > 0.0))
            throw std::domain_error("gaussian_lower_bound: zero row gap off-optimum");
    for (int j = 0; j < inst.num_cols; ++j)
        if (j != best.col && !(inst.col_means[best.col] - inst.col_means[j] > 0.0))
            throw std::domain_error("gaussian_lower_bound: zero column gap off-optimum");
    if ((inst.num_rows > 1 && !(inst.col_means[best.col] > 0.0)) ||
        (inst.num_cols > 1 && !(inst.row_means[best.row] > 0.0)))
        throw std::domain_error("gaussian_lower_bound: optimal factor means must be positive");
    const double two_sigma_sq = 2.0 * sigma * sigma;
    return build_report(inst, best, [two_sigma_sq](double p, double q) {
        return (p - q) * (p - q) / two_sigma_sq;
    });
}

std::string LowerBoundReport::to_json(int num_rows, int num_cols) const {
    nlohmann::json j;
    j["optimal_arm"] = {{"row", optimal.row}, {"col", optimal.col}};
    j["total"] = total;
    for (std::size_t k = 0; k < row_index.size(); ++k)
        j["row_terms"][std::to_string(row_index[k])] = row_terms[k];
    for (std::size_t k = 0; k < col_index.size(); ++k)
        j["col_terms"][std::to_string(col_index[k])] = col_terms[k];
    for (int i = 0; i < num_rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int jcol = 0; jcol < num_cols; ++jcol)
            row.push_back(c_star[static_cast<std::size_t>(i) * num_cols + jcol]);
        j["c_star"].push_back(row);
    }
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Independent optimality oracle for the allocation LP:
//   min sum g_ij c_ij  s.t.  row i != i*: sum_j d(u_i v_j, u_i* v_j) c_ij >= 1
//                            col j != j*: sum_i d(u_i v_j, u_i v_j*) c_ij >= 1
//                            c >= 0.
// Every optimum of such an LP is attained at a basic feasible solution with
// at most (#constraints) nonzero variables, so enumerating square subsystems
// and taking the best feasible candidate is exact.
// ---------------------------------------------------------------------------

namespace {

struct AllocationLp {
    int num_vars = 0;
    int num_constraints = 0;
    std::vector<double> objective;                  // per variable
    std::vector<std::vector<double>> constraints;   // [constraint][variable]
    std::vector<std::size_t> cell_of_var;           // flat K*L index
};

AllocationLp build_lp(const Rank1Instance& inst, const Arm& best) {
    const int K = inst.num_rows, L = inst.num_cols;
    const double w_star = inst.mean(best);
    AllocationLp lp;
    std::vector<int> var_of_cell(static_cast<std::size_t>(K) * L, -1);
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < L; ++j) {
            if (i == best.row && j == best.col) continue;
            var_of_cell[static_cast<std::size_t>(i) * L + j] = lp.num_vars++;
            lp.cell_of_var.push_back(static_cast<std::size_t>(i) * L + j);
            lp.objective.push_back(w_star - inst.mean({i, j}));
        }
    }
    for (int i = 0; i < K; ++i) {
        if (i == best.row) continue;
        std::vector<double> row(lp.num_vars, 0.0);
        for (int j = 0; j < L; ++j) {
            const int v = var_of_cell[static_cast<std::size_t>(i) * L + j];
            if (v >= 0)
                row[v] = kl_bernoulli(inst.row_means[i] * inst.col_means[j],
                                      inst.row_means[best.row] * inst.col_means[j]);
        }
        lp.constraints.push_back(std::move(row));
    }
    for (int j = 0; j < L; ++j) {
        if (j == best.col) continue;
        std::vector<double> row(lp.num_vars, 0.0);
        for (int i = 0; i < K; ++i) {
            const int v = var_of_cell[static_cast<std::size_t>(i) * L + j];
            if (v >= 0)
                row[v] = kl_bernoulli(inst.row_means[i] * inst.col_means[j],
                                      inst.row_means[i] * inst.col_means[best.col]);
        }
        lp.constraints.push_back(std::move(row));
    }
    lp.num_constraints = static_cast<int>(lp.constraints.size());
    return lp;
}

// Solves the k x k system rows(T) x cols(S) = 1. Returns false when singular.
bool solve_square(const AllocationLp& lp, const std::vector<int>& T, const std::vector<int>& S,
                  std::vector<double>& x) {
    const int k = static_cast<int>(S.size());
    std::vector<std::vector<double>> m(k, std::vector<double>(k + 1, 0.0));
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) m[r][c] = lp.constraints[T[r]][S[c]];
        m[r][k] = 1.0;
    }
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) < 1e-12) return false;
        std::swap(m[col], m[pivot]);
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c <= k; ++c) m[r][c] -= f * m[col][c];
        }
    }
    x.assign(k, 0.0);
    for (int r = 0; r < k; ++r) x[r] = m[r][k] / m[r][r];
    return true;
}

bool feasible(const AllocationLp& lp, const std::vector<double>& c, double slack = 1e-9) {
    for (const auto& row : lp.constraints) {
        double lhs = 0.0;
        for (int v = 0; v < lp.num_vars; ++v) lhs += row[v] * c[v];
        if (lhs < 1.0 - slack) return false;
    }
    return true;
}

double objective_of(const AllocationLp& lp, const std::vector<double>& c) {
    double obj = 0.0;
    for (int v = 0; v < lp.num_vars; ++v) obj += lp.objective[v] * c[v];
    return obj;
}

void subsets_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> pick(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            fn(pick);
            return;
        }
        for (int i = start; i <= n - (k - depth); ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (k == 0)
        fn({});
    else
        rec(0, 0);
}

double lp_optimum_by_vertex_enumeration(const AllocationLp& lp) {
    if (lp.num_constraints == 0) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= lp.num_constraints; ++k) {
        subsets_of_size(lp.num_vars, k, [&](const std::vector<int>& S) {
            subsets_of_size(lp.num_constraints, k, [&](const std::vector<int>& T) {
                std::vector<double> x;
                if (!solve_square(lp, T, S, x)) return;
                std::vector<double> c(lp.num_vars, 0.0);
                for (int idx = 0; idx < k; ++idx) {
                    if (x[idx] < -1e-12) return;
                    c[S[idx]] = std::max(x[idx], 0.0);
                }
                if (!feasible(lp, c)) return;
                best = std::min(best, objective_of(lp, c));
            });
        });
    }
    return best;
}

}  // namespace

bool verify_cstar_optimality(const Rank1Instance& inst, int feasible_samples) {
    const LowerBoundReport closed = regret_lower_bound(inst);
    if (inst.num_rows > 3 || inst.num_cols > 3)
        throw std::invalid_argument("verify_cstar_optimality: intended for K, L <= 3");
    const Arm best = closed.optimal;
    const AllocationLp lp = build_lp(inst, best);

    // Closed form must itself be feasible for the full LP.
    std::vector<double> c_closed(lp.num_vars, 0.0);
    for (int v = 0; v < lp.num_vars; ++v) c_closed[v] = closed.c_star[lp.cell_of_var[v]];
    if (!feasible(lp, c_closed)) return false;

    const double oracle = lp_optimum_by_vertex_enumeration(lp);
    const double scale = std::max(1.0, std::abs(closed.total));
    if (std::abs(oracle - closed.total) > 1e-6 * scale) return false;

    // Redistribution inequality: pushing mass from the optimal cross into any
    // interior cell strictly raises the objective.
    const double w_star = inst.mean(best);
    for (int i = 0; i < inst.num_rows; ++i) {
        if (i == best.row) continue;
        for (int j = 0; j < inst.num_cols; ++j) {
            if (j == best.col) continue;
            const double d_row_ij = kl_bernoulli(inst.mean({i, j}),
                                                 inst.row_means[best.row] * inst.col_means[j]);
            const double d_row_cross = kl_bernoulli(inst.row_means[i] * inst.col_means[best.col],
                                                    w_star);
            const double d_col_ij = kl_bernoulli(inst.mean({i, j}),
                                                 inst.row_means[i] * inst.col_means[best.col]);
            const double d_col_cross = kl_bernoulli(inst.row_means[best.row] * inst.col_means[j],
                                                    w_star);
            const double gap_row = w_star - inst.row_means[i] * inst.col_means[best.col];
            const double gap_col = w_star - inst.row_means[best.row] * inst.col_means[j];
            const double gap_ij = w_star - inst.mean({i, j});
            const double moved = gap_row * (d_row_ij / d_row_cross) +
                                 gap_col * (d_col_ij / d_col_cross);
            if (!(moved < gap_ij)) return false;
        }
    }

    // Random feasible points can only do worse than the closed form.
    Rng rng(20170301);
    for (int s = 0; s < feasible_samples; ++s) {
        std::vector<double> c(lp.num_vars);
        for (int v = 0; v < lp.num_vars; ++v) c[v] = rng.uniform();
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& row : lp.constraints) {
            double lhs = 0.0;
            for (int v = 0; v < lp.num_vars; ++v) lhs += row[v] * c[v];
            worst = std::min(worst, lhs);
        }
        if (!(worst > 0.0)) continue;
        for (double& cv : c) cv /= worst;  // min constraint now exactly 1
        if (objective_of(lp, c) < closed.total - 1e-9) return false;
    }
    return true;
}

}  // namespace rank1
